#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bioperf/flow_metrics.hpp"

namespace bioperf {

/// Column names of the factors CSV, spelled as the measurement table rows.
namespace factor_columns {
inline constexpr std::string_view kRun = "Run";
inline constexpr std::string_view kClients = "No. of Online Clients";
inline constexpr std::string_view kServers = "No. of Servers";
inline constexpr std::string_view kPacketsSent = "Packet Sent (Packet)";
inline constexpr std::string_view kPacketsSentLength = "Packet Sent Length (Byte)";
inline constexpr std::string_view kPacketsReceived = "Packet Received (Packet)";
inline constexpr std::string_view kPacketsReceivedLength = "Packet Receive Length (Byte)";
inline constexpr std::string_view kArrivalTime = "Total Arrival Time (Mili Second)";
inline constexpr std::string_view kDepartureTime = "Total Departure Time (Mili Second)";
inline constexpr std::string_view kServiceTime = "Total Service Time (Mili Second)";
inline constexpr std::string_view kTotalTime = "Total Time (Mili Second)";
inline constexpr std::string_view kArrivalRate = "Arrival Rate (Packet/Second)";
inline constexpr std::string_view kServiceRate = "Service Rate (Packet/Second)";
inline constexpr std::string_view kByteSize = "Byte Size (Bit/Second)";
inline constexpr std::string_view kCapacity = "Capacity (Bit/Second)";
}  // namespace factor_columns

/// One data row: the raw factors plus, when the file carries them, the rate
/// columns exactly as recorded.
struct FactorsRow {
  FlowFactors factors;
  std::optional<DerivedRates> recorded;
};

/// Header used by write_factors_header().
std::vector<std::string> factors_header();

/// Parses factors CSV text. Columns are matched by name, in any order.
/// Throws ValidationError naming the row and column on any defect.
std::vector<FactorsRow> parse_factors_csv(std::string_view text);
std::vector<FactorsRow> read_factors_csv(const std::string& path);

void write_factors_header(std::ostream& out);
/// Writes the factors followed by `derive(f)`'s four rates.
void write_factors_row(std::ostream& out, const FlowFactors& f);

}  // namespace bioperf
