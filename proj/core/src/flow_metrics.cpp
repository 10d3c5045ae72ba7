#include "bioperf/flow_metrics.hpp"

#include <cmath>
#include <string>

#include "bioperf/error.hpp"

namespace bioperf {
namespace {

constexpr double kBitsPerByte = 8.0;
constexpr double kMsPerSecond = 1000.0;

double seconds(double ms, const char* what) {
  if (!(ms > 0.0) || !std::isfinite(ms)) {
    throw DomainError(std::string(what) + " must be positive, got " + std::to_string(ms) + " ms");
  }
  return ms / kMsPerSecond;
}

}  // namespace

double compute_byte_rate(double opl_bytes, double total_time_ms) {
  return kBitsPerByte * opl_bytes / seconds(total_time_ms, "total time");
}

double compute_capacity(double opl_bytes, double total_service_time_ms) {
  return kBitsPerByte * opl_bytes / seconds(total_service_time_ms, "total service time");
}

double compute_arrival_rate(double packets_received, double total_time_ms) {
  return packets_received / seconds(total_time_ms, "total time");
}

double compute_service_rate(double packets_received, double total_service_time_ms) {
  return packets_received / seconds(total_service_time_ms, "total service time");
}

void validate(const FlowFactors& f) {
  auto fail = [&](const std::string& msg) {
    throw ValidationError("run '" + f.run_label + "': " + msg);
  };
  if (f.packets_received > f.packets_sent) fail("packets received exceeds packets sent");
  if (f.packets_received_length > f.packets_sent_length) {
    fail("received length exceeds sent length");
  }
  if (f.total_arrival_time < 0.0 || f.total_departure_time < 0.0) fail("negative time");
  if (!(f.total_service_time > 0.0)) fail("total service time must be positive");
  if (!(f.total_time > 0.0)) fail("total time must be positive");
}

DerivedRates derive(const FlowFactors& f) {
  const auto opl = static_cast<double>(f.packets_received_length);
  const auto received = static_cast<double>(f.packets_received);
  // Rates first so that a bad denominator surfaces as a DomainError.
  DerivedRates rates{
      .byte_rate_bs = compute_byte_rate(opl, f.total_time),
      .capacity_c = compute_capacity(opl, f.total_service_time),
      .arrival_rate = compute_arrival_rate(received, f.total_time),
      .service_rate = compute_service_rate(received, f.total_service_time),
  };
  validate(f);
  return rates;
}

}  // namespace bioperf
