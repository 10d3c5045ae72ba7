#pragma once

#include <string>
#include <string_view>

#include "bioperf/phylo_nj.hpp"

namespace bioperf {

// Square labeled matrix: header ",A,B,C", then one "A,0,5,9" row per taxon in
// header order. Throws ValidationError with row/column context.
DistanceMatrix parse_distance_csv(std::string_view text);
DistanceMatrix read_distance_csv(const std::string& path);

std::string to_distance_csv(const DistanceMatrix& d);

}  // namespace bioperf
