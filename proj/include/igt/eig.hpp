#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "igt/graph.hpp"
#include "igt/tensor.hpp"

namespace igt {

constexpr std::size_t kNoIndex = std::size_t(-1);

// Orthonormal eigenbasis of a connected graph's combinatorial Laplacian,
// eigenvalues ascending, deterministic ordering and sign.
struct LaplacianEig {
    std::size_t n = 0;              // odd, = 2d+1
    std::vector<double> eigenvalues; // ascending, length n
    Mat vectors;                     // n x n, orthonormal columns
    std::size_t const_index = 0;     // zero-eigenvalue constant-sign vector
    std::size_t virtual_index = kNoIndex; // padded indicator column, if any
    // per-column frequency (kx, ky) when built analytically on a grid;
    // empty otherwise
    std::vector<std::array<int, 2>> freqs;
    std::size_t grid_h = 0, grid_w = 0;

    std::size_t pair_count() const { return (n - 1) / 2; }
};

// Dense deterministic symmetric eigendecomposition. Requires a connected
// graph (simple zero eigenvalue). Within equal-eigenvalue groups columns are
// ordered by lexicographic comparison of entries rounded at 1e-9, and each
// column's first entry exceeding 1e-9 in magnitude is made positive.
LaplacianEig eigendecompose(const Mat& laplacian);

// Analytic traveling-wave eigenbasis of the h x w periodic grid (w = 1
// gives the cycle). Columns come in exact cosine/sine Hilbert pairs, which
// dense solvers cannot guarantee once eigenspaces exceed dimension two.
LaplacianEig grid_eigendecompose(std::size_t h, std::size_t w);

// Dispatches on the GraphSpec: declared grids use the analytic basis, the
// padded flag routes through the virtual-node extension, everything else
// goes to the dense solver.
LaplacianEig laplacian_eig(const GraphSpec& g);

} // namespace igt
