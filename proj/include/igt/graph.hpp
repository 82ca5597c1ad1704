#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "igt/tensor.hpp"

namespace igt {

struct Edge {
    std::size_t u, v;
    double w;
};

// Undirected weighted graph. No self-loops, at most one edge per pair.
// `padded` marks a trailing virtual node with no incident edges, appended
// by pad_to_odd so the spectral dimension is odd.
struct GraphSpec {
    std::size_t node_count = 0;
    std::vector<Edge> edges;
    std::string name;
    bool padded = false;
    // set when the graph is a declared periodic grid (torus/cycle);
    // enables the analytic eigenbasis and grid averaging
    std::size_t grid_h = 0, grid_w = 0;
};

// Edge-list document: optional '#' comment lines, a header line
// "n <node_count>", then lines "u v [w]" (default weight 1.0).
GraphSpec parse_edge_list(const std::string& text);
std::string format_edge_list(const GraphSpec& g);

// Combinatorial Laplacian L = D - W (dense, symmetric, zero row sums).
Mat build_laplacian(const GraphSpec& g);

// Appends an isolated virtual node (and a zero signal coordinate) when the
// node count is even; identity otherwise.
std::pair<GraphSpec, SignalBatch> pad_to_odd(const GraphSpec& g, const SignalBatch& batch);

void validate(const GraphSpec& g); // throws Error on invariant violation

} // namespace igt
