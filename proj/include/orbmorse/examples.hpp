#pragma once

#include <vector>

#include "json.hpp"
#include "orbmorse/inequalities.hpp"

namespace orbmorse {

// Model file for the quotient of the 4-torus by the sign involution with
// f = sum of cos(2 pi x_i) and the standard complex structure on R^4 = C^2.
nlohmann::json kummer_model_json();

// Critical-data file for the weighted projective space with the given
// positive weights q_0..q_n: point c_i has value i, automorphism group of
// order q_i rotating tangent block j by 2 pi q_j / q_i, index spanned by the
// blocks j < i and coindex by the blocks j > i.
nlohmann::json weighted_projective_data_json(const std::vector<long long>& weights);

// Weighted projective space with weights (1, 2).
nlohmann::json teardrop_data_json();

// Relative homology ranks of the five critical levels of the resolved
// 4-torus quotient: level i carries choose(4,i) resolved cells of dimension i.
std::vector<ResolutionLevel> k3_resolution_levels();

nlohmann::json resolution_levels_json(const std::vector<ResolutionLevel>& levels);

}  // namespace orbmorse
