#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "igt/graph.hpp"
#include "igt/tensor.hpp"

namespace igt {

// ring graph on n nodes (n odd, >= 3), declared as an n x 1 periodic grid
GraphSpec gen_cycle(std::size_t n);

// 4-neighbor periodic grid on h x w nodes (h*w odd)
GraphSpec gen_torus(std::size_t h, std::size_t w);

struct SbmGraph {
    GraphSpec graph;
    std::vector<std::size_t> community; // per node
};

// stochastic block model: independent edges, probability p_in within a
// community and p_out across; resampled (seed offset) until connected,
// at most 100 attempts
SbmGraph gen_sbm(const std::vector<std::size_t>& sizes, double p_in, double p_out,
                 std::uint64_t seed);

struct DiffusionDataset {
    GraphSpec graph;
    SignalBatch signals; // samples x 1 x nodes, entries sum to 1
    std::vector<std::size_t> labels;
    std::size_t communities = 0;
    double p_in = 0.0, p_out = 0.0;
    std::size_t walk_steps = 0;
    double edge_drop_q = 0.0;
    std::uint64_t seed = 0;
};

// Per sample: drop each edge independently with probability q, pick a
// uniform source node, run T steps of the lazy random walk (I + D^-1 W)/2
// on the perturbed graph from the source indicator. The perturbed graph is
// used for signal generation only. label = community of the source node.
DiffusionDataset gen_diffusion_dataset(const GraphSpec& g,
                                       const std::vector<std::size_t>& community,
                                       std::size_t samples, std::size_t walk_steps,
                                       double q, std::uint64_t seed);

// torus textures: each sample is a small sum of random plane waves,
// normalized to unit energy; used by the training-effectiveness checks
SignalBatch gen_texture_dataset(std::size_t h, std::size_t w, std::size_t samples,
                                std::uint64_t seed);

} // namespace igt
