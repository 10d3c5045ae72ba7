#include "bioperf/perf_estimators.hpp"

#include <cmath>

#include "bioperf/error.hpp"

namespace bioperf {

BioEstimate bio_utilization(std::span<const DerivedRates> runs) {
  if (runs.empty()) throw DomainError("bio_utilization: no runs");
  double sum_bs = 0.0;
  double sum_c = 0.0;
  for (const auto& r : runs) {
    sum_bs += r.byte_rate_bs;
    sum_c += r.capacity_c;
  }
  const auto n = static_cast<double>(runs.size());
  BioEstimate e;
  e.avg_bs = sum_bs / n;
  e.avg_c = sum_c / n;
  if (e.avg_bs == 0.0 && e.avg_c == 0.0) {
    // No traffic at all: the link is idle rather than undefined.
    return e;
  }
  if (!(e.avg_c > 0.0)) throw DomainError("bio_utilization: mean capacity must be positive");
  e.utilization_q = e.avg_bs / e.avg_c;
  e.idle = 1.0 - e.utilization_q;
  e.constraint_ok = e.avg_bs <= e.avg_c;
  return e;
}

LittlesModel littles_law(double lambda, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("littles_law: mu must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("littles_law: lambda must be non-negative");
  }
  LittlesModel m;
  m.lambda = lambda;
  m.mu = mu;
  m.rho = lambda / mu;
  if (m.stable()) {
    // W = 1 / (mu - lambda); L follows from L = lambda * W, equal to rho / (1 - rho).
    m.w_system = 1.0 / (mu - lambda);
    m.l_system = lambda * *m.w_system;
  }
  return m;
}

LittlesModel littles_from_runs(std::span<const DerivedRates> runs) {
  if (runs.empty()) throw DomainError("littles_from_runs: no runs");
  double sum_lambda = 0.0;
  double sum_mu = 0.0;
  for (const auto& r : runs) {
    sum_lambda += r.arrival_rate;
    sum_mu += r.service_rate;
  }
  const auto n = static_cast<double>(runs.size());
  if (sum_lambda == 0.0 && sum_mu == 0.0) {
    LittlesModel idle;
    idle.l_system = 0.0;
    return idle;
  }
  return littles_law(sum_lambda / n, sum_mu / n);
}

ComparisonReport compare(const BioEstimate& bio, const LittlesModel& littles) {
  ComparisonReport r{bio, littles, 0.0, 0.0};
  r.diff_utilization = std::abs(bio.utilization_q - littles.rho);
  r.diff_percent = 100.0 * r.diff_utilization;
  return r;
}

}  // namespace bioperf
