#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bioperf {

/// Labeled square distance matrix between OTUs (leaf taxa).
class DistanceMatrix {
 public:
  /// Throws ValidationError unless the matrix is square, symmetric, has a zero
  /// diagonal, non-negative entries, unique labels and at least two taxa.
  DistanceMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> d);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  double operator()(std::size_t a, std::size_t b) const { return d_[a][b]; }
  const std::vector<std::vector<double>>& rows() const { return d_; }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<double>> d_;
};

using NodeId = std::size_t;

struct TreeNode {
  std::string name;
  bool leaf = false;
};

struct TreeEdge {
  NodeId a = 0;
  NodeId b = 0;
  double length = 0.0;
};

/// Tree over OTU leaves and HTU internal nodes. Edges are stored in the order
/// they were created; for NJ output leaves occupy ids [0, N) in label order.
class PhyloTree {
 public:
  NodeId add_node(std::string name, bool leaf);
  std::size_t add_edge(NodeId a, NodeId b, double length);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  std::vector<NodeId> leaves() const;

  /// Throws ValidationError for names that are not leaves.
  NodeId leaf_id(std::string_view name) const;

  /// Edge indices incident to `n`.
  std::vector<std::size_t> incident(NodeId n) const;

  std::optional<NodeId> root;
  /// Set when NJ had to clamp a negative branch length to zero.
  bool clamped_negative = false;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<TreeEdge> edges_;
};

/// Net divergence: sum of distances from taxon `a` to every other taxon.
/// Throws std::out_of_range for a bad index.
double net_divergence(const DistanceMatrix& d, std::size_t a);

/// Neighbor Joining. Each step joins the active pair minimising
/// (r - 2) * d(i, j) - U(i) - U(j), breaking ties on the lowest (i, j).
/// Negative branch lengths are clamped to zero and the deficit is moved to
/// the sibling; `clamped_negative` records that this happened.
PhyloTree nj_build(const DistanceMatrix& d);

/// Edge indices along the unique path between two leaves, in walking order.
/// Empty when `a == b`. Throws ValidationError for unknown leaf names.
std::vector<std::size_t> paths_between_leaves(const PhyloTree& t, std::string_view a,
                                              std::string_view b);

/// Sum of branch lengths on the path between two leaves.
double path_length(const PhyloTree& t, std::string_view a, std::string_view b);

/// Copy of `t` rooted at the midpoint of its longest leaf-to-leaf path. A new
/// node named "root" is inserted unless the midpoint falls on an existing node.
PhyloTree midpoint_root(const PhyloTree& t);

}  // namespace bioperf
