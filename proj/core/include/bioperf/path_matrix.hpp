#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bioperf/phylo_nj.hpp"

namespace bioperf {

/// 0/1 relation between links (rows) and paths (columns): entry (l, p) is 1
/// iff path p traverses link l. After transpose() the roles swap, so rows are
/// always labeled by `row_labels` whatever they denote.
class IncidenceMatrix {
 public:
  IncidenceMatrix() = default;
  /// Throws ValidationError on shape mismatch or entries other than 0/1.
  IncidenceMatrix(std::vector<std::string> row_labels, std::vector<std::string> column_labels,
                  std::vector<std::vector<std::uint8_t>> entries);

  const std::vector<std::string>& row_labels() const { return rows_; }
  const std::vector<std::string>& column_labels() const { return cols_; }
  std::uint8_t at(std::size_t row, std::size_t col) const { return r_[row][col]; }
  const std::vector<std::vector<std::uint8_t>>& entries() const { return r_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t column_count() const { return cols_.size(); }

  /// Throws ValidationError for unknown labels.
  std::uint8_t at(std::string_view row, std::string_view col) const;

  bool operator==(const IncidenceMatrix&) const = default;

 private:
  std::vector<std::string> rows_;
  std::vector<std::string> cols_;
  std::vector<std::vector<std::uint8_t>> r_;
};

using LeafPair = std::pair<std::string, std::string>;

/// One row per tree edge (labeled L1.. in edge creation order) and one column
/// per endpoint pair (labeled P1..). Throws ValidationError for unknown leaves.
IncidenceMatrix build_incidence(const PhyloTree& t, const std::vector<LeafPair>& endpoints);

/// Every unordered leaf pair in label order: (A,B), (A,C), ..., (C,D).
std::vector<LeafPair> all_leaf_pairs(const PhyloTree& t);

/// Rows and columns exchanged, labels included.
IncidenceMatrix transpose(const IncidenceMatrix& m);

/// Column labels (paths) that contain at least one 1.
std::set<std::string> range_of(const IncidenceMatrix& m);

/// Row labels (links) that contain at least one 1.
std::set<std::string> domain_of(const IncidenceMatrix& m);

/// The entry for (link, path): 1 if the link is used by that path.
std::uint8_t robustness(const IncidenceMatrix& m, std::string_view link, std::string_view path);

/// Tabular CSV: corner cell "R" (or "R^T"), header of column labels, one
/// labeled row per row label.
std::string to_csv(const IncidenceMatrix& m, std::string_view corner = "R");

}  // namespace bioperf
