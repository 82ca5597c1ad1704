#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "igt/model.hpp"
#include "igt/svm.hpp"
#include "igt/tensor.hpp"

namespace igt {

struct LabeledData {
    SignalBatch signals;
    std::vector<int> labels;
};

struct PipelineOptions {
    bool averaged = true;
    bool ablation = false; // additionally score the unaveraged representation
    std::vector<double> c_grid = default_c_grid();
    std::size_t folds = 3;
    std::uint64_t seed = 0; // recorded in the report
};

struct ExperimentReport {
    double accuracy_train = 0.0;
    double accuracy_test = 0.0;
    double baseline_raw = 0.0;       // test accuracy of the SVM on raw signals
    double baseline_raw_train = 0.0;
    double accuracy_train_unaveraged = -1.0; // -1 when ablation not run
    double accuracy_test_unaveraged = -1.0;
    std::vector<double> energy_fractions;
    double energy_residual = 0.0;
    std::size_t order = 0;
    double selected_c = 0.0;
    double baseline_c = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;

    // stable-schema JSON document (keys: accuracy_test, accuracy_train,
    // baseline_raw, energy_fractions, order, config, seed, ...)
    std::string to_json(const PipelineOptions& opt, bool deterministic) const;
};

ExperimentReport evaluate_pipeline(const IGTModel& model, const LabeledData& train,
                                   const LabeledData& test,
                                   const PipelineOptions& opt);

// column-per-sample flattening of the raw signals
Mat flatten_signals(const SignalBatch& batch);

} // namespace igt
