#include "bioperf/path_matrix.hpp"

#include <algorithm>

#include "bioperf/csv.hpp"
#include "bioperf/error.hpp"

namespace bioperf {

IncidenceMatrix::IncidenceMatrix(std::vector<std::string> row_labels,
                                 std::vector<std::string> column_labels,
                                 std::vector<std::vector<std::uint8_t>> entries)
    : rows_(std::move(row_labels)), cols_(std::move(column_labels)), r_(std::move(entries)) {
  if (r_.size() != rows_.size()) throw ValidationError("incidence matrix: row count mismatch");
  for (const auto& row : r_) {
    if (row.size() != cols_.size()) {
      throw ValidationError("incidence matrix: column count mismatch");
    }
    for (auto v : row) {
      if (v > 1) throw ValidationError("incidence matrix: entries must be 0 or 1");
    }
  }
}

std::uint8_t IncidenceMatrix::at(std::string_view row, std::string_view col) const {
  const auto r = std::find(rows_.begin(), rows_.end(), row);
  if (r == rows_.end()) throw ValidationError("unknown row label '" + std::string(row) + "'");
  const auto c = std::find(cols_.begin(), cols_.end(), col);
  if (c == cols_.end()) throw ValidationError("unknown column label '" + std::string(col) + "'");
  return r_[static_cast<std::size_t>(r - rows_.begin())][static_cast<std::size_t>(c - cols_.begin())];
}

IncidenceMatrix build_incidence(const PhyloTree& t, const std::vector<LeafPair>& endpoints) {
  const std::size_t links = t.edges().size();
  std::vector<std::string> link_labels;
  for (std::size_t l = 0; l < links; ++l) link_labels.push_back("L" + std::to_string(l + 1));
  std::vector<std::string> path_labels;
  std::vector<std::vector<std::uint8_t>> r(links, std::vector<std::uint8_t>(endpoints.size(), 0));
  for (std::size_t p = 0; p < endpoints.size(); ++p) {
    path_labels.push_back("P" + std::to_string(p + 1));
    for (std::size_t e : paths_between_leaves(t, endpoints[p].first, endpoints[p].second)) {
      r[e][p] = 1;
    }
  }
  return IncidenceMatrix(std::move(link_labels), std::move(path_labels), std::move(r));
}

std::vector<LeafPair> all_leaf_pairs(const PhyloTree& t) {
  const auto leaves = t.leaves();
  std::vector<LeafPair> out;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      out.emplace_back(t.nodes()[leaves[i]].name, t.nodes()[leaves[j]].name);
    }
  }
  return out;
}

IncidenceMatrix transpose(const IncidenceMatrix& m) {
  std::vector<std::vector<std::uint8_t>> r(m.column_count(),
                                           std::vector<std::uint8_t>(m.row_count(), 0));
  for (std::size_t i = 0; i < m.row_count(); ++i) {
    for (std::size_t j = 0; j < m.column_count(); ++j) r[j][i] = m.at(i, j);
  }
  return IncidenceMatrix(m.column_labels(), m.row_labels(), std::move(r));
}

std::set<std::string> range_of(const IncidenceMatrix& m) {
  std::set<std::string> out;
  for (std::size_t j = 0; j < m.column_count(); ++j) {
    for (std::size_t i = 0; i < m.row_count(); ++i) {
      if (m.at(i, j) == 1) {
        out.insert(m.column_labels()[j]);
        break;
      }
    }
  }
  return out;
}

std::set<std::string> domain_of(const IncidenceMatrix& m) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < m.row_count(); ++i) {
    if (std::ranges::any_of(m.entries()[i], [](auto v) { return v == 1; })) {
      out.insert(m.row_labels()[i]);
    }
  }
  return out;
}

std::uint8_t robustness(const IncidenceMatrix& m, std::string_view link, std::string_view path) {
  return m.at(link, path);
}

std::string to_csv(const IncidenceMatrix& m, std::string_view corner) {
  csv::Row header{std::string(corner)};
  header.insert(header.end(), m.column_labels().begin(), m.column_labels().end());
  std::string out = csv::join(header) + "\n";
  for (std::size_t i = 0; i < m.row_count(); ++i) {
    csv::Row row{m.row_labels()[i]};
    for (auto v : m.entries()[i]) row.push_back(v ? "1" : "0");
    out += csv::join(row) + "\n";
  }
  return out;
}

}  // namespace bioperf
