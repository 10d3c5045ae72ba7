#include "bioperf/distance_csv.hpp"

#include "bioperf/csv.hpp"
#include "bioperf/error.hpp"

namespace bioperf {

DistanceMatrix parse_distance_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ValidationError("distance csv: empty input");
  const auto& header = rows.front();
  if (header.size() < 2) throw ValidationError("distance csv: header has no taxa");
  std::vector<std::string> labels(header.begin() + 1, header.end());
  const std::size_t n = labels.size();
  if (rows.size() != n + 1) {
    throw ValidationError("distance csv: " + std::to_string(n) + " taxa in header but " +
                          std::to_string(rows.size() - 1) + " data rows");
  }
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = rows[r + 1];
    const std::size_t row_no = r + 2;
    if (row.size() != n + 1) {
      throw ValidationError("row " + std::to_string(row_no) + ": expected " +
                            std::to_string(n + 1) + " cells, got " + std::to_string(row.size()));
    }
    if (row[0] != labels[r]) {
      throw ValidationError("row " + std::to_string(row_no) + ": label '" + row[0] +
                            "' does not match header label '" + labels[r] + "'");
    }
    for (std::size_t c = 0; c < n; ++c) d[r][c] = csv::parse_number(row[c + 1], row_no, labels[c]);
  }
  return DistanceMatrix(std::move(labels), std::move(d));
}

DistanceMatrix read_distance_csv(const std::string& path) {
  const auto rows = csv::read_file(path);
  std::string text;
  for (const auto& row : rows) text += csv::join(row) + "\n";
  try {
    return parse_distance_csv(text);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string to_distance_csv(const DistanceMatrix& d) {
  csv::Row header{""};
  header.insert(header.end(), d.labels().begin(), d.labels().end());
  std::string out = csv::join(header) + "\n";
  for (std::size_t r = 0; r < d.size(); ++r) {
    csv::Row row{d.labels()[r]};
    for (std::size_t c = 0; c < d.size(); ++c) row.push_back(csv::format_number(d(r, c)));
    out += csv::join(row) + "\n";
  }
  return out;
}

}  // namespace bioperf
