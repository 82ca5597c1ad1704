#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "igt/eig.hpp"
#include "igt/tensor.hpp"

namespace igt {

// Result of the Hilbert-pairing of the non-constant eigenvectors.
struct PairMap {
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // eigen indices, a < b
    std::size_t const_index = 0;
    double total_cost = 0.0;
};

// Unitary complex Fourier operator assembled from the paired eigenbasis.
// Layout (n = 2d+1): columns [0, d) are analytic, column n-2-i is the
// conjugate of column i, column n-1 is the real constant column.
struct SpectralFourier {
    std::size_t n = 0;
    CMat columns;                              // n x n
    std::vector<std::size_t> analytic_indices; // d column indices
    std::vector<std::size_t> conj_of;          // conj_of[i] = index of conj column
    std::size_t const_col = 0;
    // per-column (kx, ky) for grid bases; empty otherwise
    std::vector<std::array<int, 2>> freqs;
    std::size_t grid_h = 0, grid_w = 0;

    std::size_t d() const { return (n - 1) / 2; }
};

// Envelope l1 cost of one candidate pairing: sum over pairs of
// sum_k sqrt(e_a[k]^2 + e_b[k]^2). Throws on a non-partition or if the
// constant index appears.
double pairing_cost(const LaplacianEig& eig, const PairMap& pairing);

// Cost of a single candidate pair.
double pair_cost(const LaplacianEig& eig, std::size_t a, std::size_t b);

// Solves the maximum-weight matching over all non-constant eigenvectors and
// assembles F with 1/sqrt(2)-scaled analytic/conjugate column pairs.
std::pair<PairMap, SpectralFourier> build_fourier(const LaplacianEig& eig);

} // namespace igt
