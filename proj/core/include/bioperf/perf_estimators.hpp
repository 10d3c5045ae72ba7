#pragma once

#include <optional>
#include <span>

#include "bioperf/flow_metrics.hpp"

namespace bioperf {

/// Utilization from averaged byte rate over averaged capacity.
struct BioEstimate {
  double avg_bs = 0.0;
  double avg_c = 0.0;
  double utilization_q = 0.0;
  double idle = 1.0;
  bool constraint_ok = true;  // avg_bs <= avg_c
};

/// Single-server M/M/1 summary. `l_system` and `w_system` are only defined
/// for a stable queue (rho < 1).
struct LittlesModel {
  double lambda = 0.0;
  double mu = 0.0;
  double rho = 0.0;
  std::optional<double> l_system;
  std::optional<double> w_system;  // seconds
  int servers = 1;

  bool stable() const { return rho < 1.0; }
};

struct ComparisonReport {
  BioEstimate bio;
  LittlesModel littles;
  double diff_utilization = 0.0;
  double diff_percent = 0.0;
};

/// Mean byte rate over mean capacity across runs. Runs with no traffic at all
/// (both means zero) give utilization 0. Throws DomainError for an empty span
/// or a non-positive mean capacity under non-zero traffic.
BioEstimate bio_utilization(std::span<const DerivedRates> runs);

/// M/M/1 closed forms. Throws DomainError when mu <= 0 or lambda < 0.
LittlesModel littles_law(double lambda, double mu);

/// Aggregates runs as mean arrival rate over mean service rate and applies
/// littles_law(). All-zero rates give an empty system (rho 0, L 0, W
/// undefined). Throws DomainError for an empty span.
LittlesModel littles_from_runs(std::span<const DerivedRates> runs);

ComparisonReport compare(const BioEstimate& bio, const LittlesModel& littles);

}  // namespace bioperf
