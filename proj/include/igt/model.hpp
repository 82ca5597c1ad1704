#pragma once

#include <cstddef>
#include <vector>

#include "igt/averaging.hpp"
#include "igt/fourier.hpp"
#include "igt/tensor.hpp"

namespace igt {

// One layer's spectral filter bank: K complex transfer vectors in the F basis.
struct FilterBank {
    std::size_t K = 0;
    std::size_t n = 0;
    CMat spectra; // n x K, column per filter
    int layer_index = 1;
    double tightness_eps = 1.0;
};

struct IGTModel {
    SpectralFourier fourier;
    AveragingOp averaging;
    std::vector<FilterBank> banks; // layers 1..N
    std::size_t order() const { return banks.size(); }
};

// Per-sample feature matrix (column per sample) with layer bookkeeping.
struct Representation {
    Mat features; // feature_dim x samples
    bool averaged = true;
    std::vector<std::size_t> layer_offsets; // start of each layer's block
    std::vector<std::size_t> layer_channels; // channels contributed per layer
};

// Littlewood-Paley budgets in the F basis. gamma[i] sums filter energy over
// the conjugate pair {i, conj(i)} (doubled on the constant frequency);
// lambda[i] = 2 - Ahat[i]^2 - Ahat[conj(i)]^2.
struct Budgets {
    std::vector<double> gamma, lambda;
};

Budgets compute_budgets(const FilterBank& bank, const AveragingOp& a,
                        const SpectralFourier& f);

// Convex projection onto the constraint set: scales each frequency group by
// min(1, sqrt(lambda/gamma)).
FilterBank project_onto_constraint(FilterBank bank, const AveragingOp& a,
                                   const SpectralFourier& f);

// Rescales every frequency group so gamma = lambda exactly (an extremal,
// energy-preserving bank). Throws if a needed frequency has no energy.
FilterBank normalize_to_extremal(const FilterBank& bank, const AveragingOp& a,
                                 const SpectralFourier& f);

// 1 - min over constrained frequencies of gamma/lambda
double measure_tightness(const FilterBank& bank, const AveragingOp& a,
                         const SpectralFourier& f);

// spectrum zhat[i] = <z, F_i>
void spectrum(const SpectralFourier& f, const double* z, cplx* zhat);

// U-step: per input channel, K modulus channels |F (What_k . zhat)|
SignalBatch layer_forward(const FilterBank& bank, const SpectralFourier& f,
                          const SignalBatch& batch);

Representation igt_transform(const IGTModel& model, const SignalBatch& batch,
                             bool averaged);

struct EnergyProfile {
    std::vector<double> fractions; // ||A U_n x||^2 / ||x||^2, n = 0..N
    double residual = 0.0;         // energy not captured after order N
    std::size_t selected_order = 0; // smallest order reaching 99%, capped at 2
};

EnergyProfile energy_profile(const IGTModel& model, const SignalBatch& batch);

} // namespace igt
