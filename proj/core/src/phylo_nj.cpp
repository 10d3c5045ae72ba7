#include "bioperf/phylo_nj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "bioperf/error.hpp"

namespace bioperf {

DistanceMatrix::DistanceMatrix(std::vector<std::string> labels, std::vector<std::vector<double>> d)
    : labels_(std::move(labels)), d_(std::move(d)) {
  const std::size_t n = labels_.size();
  if (n < 2) throw ValidationError("distance matrix needs at least two taxa");
  if (d_.size() != n) throw ValidationError("distance matrix row count does not match labels");
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw ValidationError("distance matrix has an empty label");
    if (!seen.insert(l).second) throw ValidationError("duplicate taxon label '" + l + "'");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (d_[a].size() != n) {
      throw ValidationError("distance matrix row '" + labels_[a] + "' has " +
                            std::to_string(d_[a].size()) + " entries, expected " +
                            std::to_string(n));
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (d_[a][a] != 0.0) {
      throw ValidationError("distance matrix diagonal entry for '" + labels_[a] + "' is not zero");
    }
    for (std::size_t b = 0; b < n; ++b) {
      const double x = d_[a][b];
      if (!std::isfinite(x) || x < 0.0) {
        throw ValidationError("distance " + labels_[a] + "-" + labels_[b] +
                              " must be finite and non-negative");
      }
      const double y = d_[b][a];
      if (std::abs(x - y) > 1e-9 * std::max(1.0, std::max(std::abs(x), std::abs(y)))) {
        throw ValidationError("distance matrix is not symmetric at " + labels_[a] + "/" +
                              labels_[b]);
      }
    }
  }
}

NodeId PhyloTree::add_node(std::string name, bool leaf) {
  nodes_.push_back(TreeNode{std::move(name), leaf});
  return nodes_.size() - 1;
}

std::size_t PhyloTree::add_edge(NodeId a, NodeId b, double length) {
  if (a >= nodes_.size() || b >= nodes_.size() || a == b) {
    throw std::out_of_range("PhyloTree::add_edge: bad endpoints");
  }
  edges_.push_back(TreeEdge{a, b, length});
  return edges_.size() - 1;
}

std::vector<NodeId> PhyloTree::leaves() const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].leaf) out.push_back(i);
  }
  return out;
}

NodeId PhyloTree::leaf_id(std::string_view name) const {
  for (NodeId i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].leaf && nodes_[i].name == name) return i;
  }
  throw ValidationError("unknown leaf '" + std::string(name) + "'");
}

std::vector<std::size_t> PhyloTree::incident(NodeId n) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (edges_[e].a == n || edges_[e].b == n) out.push_back(e);
  }
  return out;
}

double net_divergence(const DistanceMatrix& d, std::size_t a) {
  if (a >= d.size()) throw std::out_of_range("net_divergence: taxon index out of range");
  double u = 0.0;
  for (std::size_t b = 0; b < d.size(); ++b) {
    if (b != a) u += d(a, b);
  }
  return u;
}

PhyloTree nj_build(const DistanceMatrix& dm) {
  PhyloTree tree;
  const std::size_t n = dm.size();
  for (const auto& label : dm.labels()) tree.add_node(label, true);

  if (n == 2) {
    tree.add_edge(0, 1, dm(0, 1));
    return tree;
  }

  std::vector<NodeId> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;
  std::vector<std::vector<double>> d = dm.rows();
  std::size_t htu_count = 0;

  auto add_pair_edges = [&](NodeId parent, NodeId x, double lx, NodeId y, double ly) {
    if (tree.nodes()[y].name < tree.nodes()[x].name) {
      std::swap(x, y);
      std::swap(lx, ly);
    }
    tree.add_edge(x, parent, lx);
    tree.add_edge(y, parent, ly);
  };

  while (active.size() > 2) {
    const std::size_t r = active.size();
    std::vector<double> u(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) u[i] += d[i][j];
    }

    std::size_t best_i = 0;
    std::size_t best_j = 1;
    double best_q = std::numeric_limits<double>::infinity();
    const double scale = static_cast<double>(r - 2);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      for (std::size_t j = i + 1; j < r; ++j) {
        const double q = scale * d[i][j] - u[i] - u[j];
        if (q < best_q) {
          best_q = q;
          best_i = i;
          best_j = j;
        }
      }
    }

    const double dij = d[best_i][best_j];
    double li = 0.5 * dij + (u[best_i] - u[best_j]) / (2.0 * scale);
    double lj = dij - li;
    if (li < 0.0) {
      lj += li;
      li = 0.0;
      tree.clamped_negative = true;
    }
    if (lj < 0.0) {
      li = std::max(0.0, li + lj);
      lj = 0.0;
      tree.clamped_negative = true;
    }

    const NodeId parent = tree.add_node("HTU" + std::to_string(++htu_count), false);
    add_pair_edges(parent, active[best_i], li, active[best_j], lj);

    for (std::size_t k = 0; k < r; ++k) {
      if (k == best_i || k == best_j) continue;
      const double dk = 0.5 * (d[best_i][k] + d[best_j][k] - dij);
      d[best_i][k] = dk;
      d[k][best_i] = dk;
    }
    d[best_i][best_i] = 0.0;
    active[best_i] = parent;

    active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_j));
    d.erase(d.begin() + static_cast<std::ptrdiff_t>(best_j));
    for (auto& row : d) row.erase(row.begin() + static_cast<std::ptrdiff_t>(best_j));
  }

  double last = d[0][1];
  if (last < 0.0) {
    last = 0.0;
    tree.clamped_negative = true;
  }
  tree.add_edge(active[0], active[1], last);
  return tree;
}

namespace {

// Edge indices from `from` to `to`, in walking order.
std::vector<std::size_t> node_path(const PhyloTree& t, NodeId from, NodeId to) {
  if (from == to) return {};
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> via(t.nodes().size(), none);
  std::vector<bool> seen(t.nodes().size(), false);
  std::vector<std::vector<std::size_t>> adj(t.nodes().size());
  for (std::size_t e = 0; e < t.edges().size(); ++e) {
    adj[t.edges()[e].a].push_back(e);
    adj[t.edges()[e].b].push_back(e);
  }
  std::queue<NodeId> q;
  q.push(from);
  seen[from] = true;
  while (!q.empty()) {
    const NodeId n = q.front();
    q.pop();
    if (n == to) break;
    for (std::size_t e : adj[n]) {
      const auto& edge = t.edges()[e];
      const NodeId m = edge.a == n ? edge.b : edge.a;
      if (!seen[m]) {
        seen[m] = true;
        via[m] = e;
        q.push(m);
      }
    }
  }
  if (!seen[to]) throw ValidationError("tree is disconnected");
  std::vector<std::size_t> path;
  for (NodeId n = to; n != from;) {
    const std::size_t e = via[n];
    path.push_back(e);
    n = t.edges()[e].a == n ? t.edges()[e].b : t.edges()[e].a;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<std::size_t> paths_between_leaves(const PhyloTree& t, std::string_view a,
                                              std::string_view b) {
  return node_path(t, t.leaf_id(a), t.leaf_id(b));
}

double path_length(const PhyloTree& t, std::string_view a, std::string_view b) {
  double sum = 0.0;
  for (std::size_t e : paths_between_leaves(t, a, b)) sum += t.edges()[e].length;
  return sum;
}

PhyloTree midpoint_root(const PhyloTree& t) {
  const auto leaves = t.leaves();
  if (leaves.size() < 2) throw ValidationError("midpoint_root needs at least two leaves");

  NodeId far_a = leaves[0];
  NodeId far_b = leaves[1];
  double longest = -1.0;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      double len = 0.0;
      for (std::size_t e : node_path(t, leaves[i], leaves[j])) len += t.edges()[e].length;
      if (len > longest) {
        longest = len;
        far_a = leaves[i];
        far_b = leaves[j];
      }
    }
  }

  const double half = 0.5 * longest;
  const auto path = node_path(t, far_a, far_b);
  double walked = 0.0;
  NodeId at = far_a;
  for (std::size_t e : path) {
    const auto& edge = t.edges()[e];
    const NodeId next = edge.a == at ? edge.b : edge.a;
    const double tol = 1e-12 * std::max(1.0, longest);
    if (std::abs(walked - half) <= tol) {
      PhyloTree out = t;
      out.root = at;
      return out;
    }
    if (walked + edge.length > half + tol) {
      // Split this edge: `at` keeps (half - walked), `next` the remainder.
      PhyloTree out;
      for (const auto& node : t.nodes()) out.add_node(node.name, node.leaf);
      const NodeId root = out.add_node("root", false);
      for (std::size_t k = 0; k < t.edges().size(); ++k) {
        if (k == e) {
          out.add_edge(at, root, half - walked);
          out.add_edge(next, root, edge.length - (half - walked));
        } else {
          out.add_edge(t.edges()[k].a, t.edges()[k].b, t.edges()[k].length);
        }
      }
      out.root = root;
      out.clamped_negative = t.clamped_negative;
      return out;
    }
    walked += edge.length;
    at = next;
  }
  PhyloTree out = t;
  out.root = far_b;
  return out;
}

}  // namespace bioperf
