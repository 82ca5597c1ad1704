#pragma once

#include <cstddef>
#include <vector>

#include "igt/fourier.hpp"
#include "igt/tensor.hpp"

namespace igt {

enum class AvgKind { GraphProjector, GridGaussian };

// Low-pass averaging operator A with its transfer magnitudes in the F basis.
// Graph case: rank-1 orthogonal projector onto the constant eigenvector.
// Grid case: separable periodized Gaussian (sigma = 0.8 * 2^J) on the torus;
// the representation output additionally subsamples by 2^J in each
// dimension, but energies, budgets and the loss use the full-rate operator.
struct AveragingOp {
    AvgKind kind = AvgKind::GraphProjector;
    std::size_t n = 0;
    std::vector<double> spectral_mag; // A-hat, per F column, in [0, 1]

    // graph projector
    std::size_t const_col = 0;
    std::vector<double> const_vec;

    // grid gaussian
    std::size_t h = 0, w = 0;
    int J = 0;
    std::size_t sub = 1; // 2^J
    std::size_t out_h = 0, out_w = 0;
    std::vector<double> kern_h, kern_w; // circular 1-D kernels, sum 1

    // features emitted per channel by the averaged representation
    std::size_t feature_count() const {
        return kind == AvgKind::GraphProjector ? 1 : out_h * out_w;
    }
};

AveragingOp make_graph_averaging(const SpectralFourier& f);
AveragingOp make_grid_averaging(const SpectralFourier& f, std::size_t h, std::size_t w, int J);

// out = A z at full rate (length n; any padded coordinate maps to 0)
void apply_averaging(const AveragingOp& a, const double* z, double* out);
// subsampled feature extraction (feature_count() values)
void averaged_features(const AveragingOp& a, const double* z, double* out);
// ||A z||^2 at full rate
double averaging_energy(const AveragingOp& a, const double* z);

} // namespace igt
