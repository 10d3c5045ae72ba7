#include "bioperf/factors_csv.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "bioperf/csv.hpp"
#include "bioperf/error.hpp"

namespace bioperf {
namespace col = factor_columns;

namespace {

// Accepted spellings besides the canonical column names.
const std::map<std::string, std::string_view, std::less<>> kAliases = {
    {"Packet Received Length (Byte)", col::kPacketsReceivedLength},
};

std::uint64_t parse_count(std::string_view cell, std::size_t row, std::string_view column) {
  const double v = csv::parse_number(cell, row, column);
  if (v < 0.0 || std::floor(v) != v || v > 9.007199254740992e15) {
    throw ValidationError("row " + std::to_string(row) + ", column '" + std::string(column) +
                          "': expected a non-negative integer count, got '" + std::string(cell) +
                          "'");
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::vector<std::string> factors_header() {
  return {std::string(col::kRun),
          std::string(col::kClients),
          std::string(col::kServers),
          std::string(col::kPacketsSent),
          std::string(col::kPacketsSentLength),
          std::string(col::kPacketsReceived),
          std::string(col::kPacketsReceivedLength),
          std::string(col::kArrivalTime),
          std::string(col::kDepartureTime),
          std::string(col::kServiceTime),
          std::string(col::kTotalTime),
          std::string(col::kArrivalRate),
          std::string(col::kServiceRate),
          std::string(col::kByteSize),
          std::string(col::kCapacity)};
}

std::vector<FactorsRow> parse_factors_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ValidationError("factors csv: empty input");

  const auto& header = rows.front();
  std::map<std::string_view, std::size_t> by_name;
  for (std::size_t c = 0; c < header.size(); ++c) {
    std::string_view name = header[c];
    if (auto it = kAliases.find(name); it != kAliases.end()) name = it->second;
    for (std::string_view known :
         {col::kRun, col::kClients, col::kServers, col::kPacketsSent, col::kPacketsSentLength,
          col::kPacketsReceived, col::kPacketsReceivedLength, col::kArrivalTime,
          col::kDepartureTime, col::kServiceTime, col::kTotalTime, col::kArrivalRate,
          col::kServiceRate, col::kByteSize, col::kCapacity}) {
      if (known == name) {
        if (by_name.contains(known)) {
          throw ValidationError("factors csv: duplicate column '" + std::string(known) + "'");
        }
        by_name.emplace(known, c);
      }
    }
  }

  for (std::string_view required :
       {col::kClients, col::kServers, col::kPacketsSent, col::kPacketsSentLength,
        col::kPacketsReceived, col::kPacketsReceivedLength, col::kArrivalTime,
        col::kDepartureTime, col::kServiceTime, col::kTotalTime}) {
    if (!by_name.contains(required)) {
      throw ValidationError("factors csv: missing column '" + std::string(required) + "'");
    }
  }
  const std::array rate_columns{col::kArrivalRate, col::kServiceRate, col::kByteSize,
                                col::kCapacity};
  std::size_t rate_count = 0;
  for (auto c : rate_columns) rate_count += by_name.contains(c) ? 1 : 0;
  if (rate_count != 0 && rate_count != rate_columns.size()) {
    throw ValidationError("factors csv: rate columns must be all present or all absent");
  }

  std::vector<FactorsRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::size_t row_no = r + 1;  // 1-based, header is row 1
    auto cell = [&](std::string_view name) -> std::string_view {
      const std::size_t c = by_name.at(name);
      if (c >= row.size()) {
        throw ValidationError("row " + std::to_string(row_no) + ", column '" + std::string(name) +
                              "': missing value");
      }
      return row[c];
    };
    auto count = [&](std::string_view name) { return parse_count(cell(name), row_no, name); };
    auto number = [&](std::string_view name) {
      const double v = csv::parse_number(cell(name), row_no, name);
      if (v < 0.0) {
        throw ValidationError("row " + std::to_string(row_no) + ", column '" + std::string(name) +
                              "': negative value");
      }
      return v;
    };

    FactorsRow fr;
    auto& f = fr.factors;
    f.run_label = by_name.contains(col::kRun) ? std::string(cell(col::kRun))
                                              : "run" + std::to_string(r);
    f.clients_online = count(col::kClients);
    f.servers = count(col::kServers);
    f.packets_sent = count(col::kPacketsSent);
    f.packets_sent_length = count(col::kPacketsSentLength);
    f.packets_received = count(col::kPacketsReceived);
    f.packets_received_length = count(col::kPacketsReceivedLength);
    f.total_arrival_time = number(col::kArrivalTime);
    f.total_departure_time = number(col::kDepartureTime);
    f.total_service_time = number(col::kServiceTime);
    f.total_time = number(col::kTotalTime);
    if (rate_count != 0) {
      fr.recorded = DerivedRates{
          .byte_rate_bs = number(col::kByteSize),
          .capacity_c = number(col::kCapacity),
          .arrival_rate = number(col::kArrivalRate),
          .service_rate = number(col::kServiceRate),
      };
    }
    try {
      validate(f);
    } catch (const ValidationError& e) {
      throw ValidationError("row " + std::to_string(row_no) + ": " + e.what());
    }
    out.push_back(std::move(fr));
  }
  if (out.empty()) throw ValidationError("factors csv: no data rows");
  return out;
}

std::vector<FactorsRow> read_factors_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.starts_with("\xEF\xBB\xBF")) text.erase(0, 3);
  try {
    return parse_factors_csv(text);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_factors_header(std::ostream& out) { out << csv::join(factors_header()) << '\n'; }

void write_factors_row(std::ostream& out, const FlowFactors& f) {
  const DerivedRates d = derive(f);
  const csv::Row row{f.run_label,
                     std::to_string(f.clients_online),
                     std::to_string(f.servers),
                     std::to_string(f.packets_sent),
                     std::to_string(f.packets_sent_length),
                     std::to_string(f.packets_received),
                     std::to_string(f.packets_received_length),
                     csv::format_number(f.total_arrival_time),
                     csv::format_number(f.total_departure_time),
                     csv::format_number(f.total_service_time),
                     csv::format_number(f.total_time),
                     csv::format_number(d.arrival_rate),
                     csv::format_number(d.service_rate),
                     csv::format_number(d.byte_rate_bs),
                     csv::format_number(d.capacity_c)};
  out << csv::join(row) << '\n';
}

}  // namespace bioperf
