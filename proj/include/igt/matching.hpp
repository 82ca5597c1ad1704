#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "igt/tensor.hpp"

namespace igt {

struct MatchResult {
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // (a, b) with a < b, sorted
    double total_weight = 0.0; // computed on the input weights
};

// Exact maximum-weight perfect matching on the complete graph over an even
// number of vertices (Edmonds blossom, O(V^3)). Weights must be finite,
// symmetric and nonnegative; comparisons use a 1e-12 slack relative to the
// weight scale. Among exactly tied optima the result is canonicalized
// toward the lexicographically smallest matching by 2-exchanges.
MatchResult max_weight_perfect_matching(const Mat& weights);

} // namespace igt
