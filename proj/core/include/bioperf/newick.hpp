#pragma once

#include <string>
#include <string_view>

#include "bioperf/phylo_nj.hpp"

namespace bioperf {

/// Newick text with branch lengths, terminated by ';'. Only leaves are named.
/// Rooted trees are written from their root. Unrooted trees are written from
/// the most recently created internal node, or from the first leaf when the
/// tree is a single edge, e.g. "(b:7)a;".
std::string to_newick(const PhyloTree& t);

/// Parses Newick text with optional names and branch lengths. Unnamed
/// internal nodes become "HTU1", "HTU2", ... A top-level node with exactly two
/// children is treated as a root. Throws ValidationError on syntax errors.
PhyloTree parse_newick(std::string_view text);

}  // namespace bioperf
