#pragma once

#include <cstdint>
#include <string>

namespace bioperf {

/// Raw counters and times of one measured run. Durations are milliseconds.
struct FlowFactors {
  std::string run_label;
  std::uint64_t clients_online = 0;
  std::uint64_t servers = 1;
  std::uint64_t packets_sent = 0;
  std::uint64_t packets_sent_length = 0;  // bytes
  std::uint64_t packets_received = 0;
  std::uint64_t packets_received_length = 0;  // bytes; the OPL of a run
  double total_arrival_time = 0.0;
  double total_departure_time = 0.0;  // informational epoch-ms sum
  double total_service_time = 0.0;
  double total_time = 0.0;

  bool operator==(const FlowFactors&) const = default;
};

/// Per-run rates. Byte rate and capacity are bits/second, the others packets/second.
struct DerivedRates {
  double byte_rate_bs = 0.0;
  double capacity_c = 0.0;
  double arrival_rate = 0.0;
  double service_rate = 0.0;

  bool operator==(const DerivedRates&) const = default;
};

// Each of these throws DomainError when the time denominator is not positive.
double compute_byte_rate(double opl_bytes, double total_time_ms);
double compute_capacity(double opl_bytes, double total_service_time_ms);
double compute_arrival_rate(double packets_received, double total_time_ms);
double compute_service_rate(double packets_received, double total_service_time_ms);

/// Throws ValidationError describing the first violated FlowFactors invariant.
void validate(const FlowFactors& f);

/// Validates `f` and computes all four rates.
DerivedRates derive(const FlowFactors& f);

}  // namespace bioperf
