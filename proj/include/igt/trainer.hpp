#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "igt/averaging.hpp"
#include "igt/fourier.hpp"
#include "igt/model.hpp"
#include "igt/tensor.hpp"

namespace igt {

struct TrainConfig {
    std::size_t batch_size = 64;
    double lr0 = 1.0;
    std::vector<std::size_t> milestones; // empty = scaled automatically
    double lr_decay = 0.1;
    std::size_t epochs = 5;
    std::uint64_t seed = 0;
    double mod_eps = 1e-8; // relative modulus-gradient cutoff
    std::vector<std::size_t> filters_per_layer = {16};

    void validate() const;
};

struct TrainLogEntry {
    std::size_t iteration = 0;
    double loss = 0.0;
    double lr = 0.0;
    double feasibility_residual = 0.0; // max_i (gamma_i - lambda_i), post-update
};

struct TrainLog {
    std::vector<TrainLogEntry> entries;
};

struct TrainReport {
    std::vector<TrainLog> layer_logs;
    std::vector<EnergyProfile> profiles; // after each trained layer
};

// milestone schedule for T total iterations: the stated 500/1000/1500 recipe
// when T is large, scaled to 4/15, 8/15, 12/15 of T for mid-size runs, and
// drops at 10/20/30 for very short runs
std::vector<std::size_t> scaled_milestones(std::size_t total_iterations);

// sum over samples and channels of ||(I-A)z||^2 - sum_k ||A |W_k z| ||^2
double empirical_loss(const FilterBank& bank, const AveragingOp& a,
                      const SpectralFourier& f, const SignalBatch& batch);

// exact gradient of empirical_loss w.r.t. the spectra, packed as complex
// d/dRe + j*d/dIm per entry; modulus subgradient is zeroed below
// mod_eps * ||z|| coordinate-wise
CMat loss_gradient(const FilterBank& bank, const AveragingOp& a,
                   const SpectralFourier& f, const SignalBatch& batch,
                   double mod_eps);

FilterBank train_layer(const SignalBatch& inputs, const SpectralFourier& f,
                       const AveragingOp& a, std::size_t K, const TrainConfig& cfg,
                       TrainLog* log = nullptr);

IGTModel greedy_train(const SignalBatch& data, const SpectralFourier& f,
                      const AveragingOp& a, const TrainConfig& cfg,
                      TrainReport* report = nullptr);

} // namespace igt
