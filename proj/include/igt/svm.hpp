#pragma once

#include <cstddef>
#include <vector>

#include "igt/tensor.hpp"

namespace igt {

// One-vs-rest linear classifier with L2-regularized squared-hinge loss,
// trained by deterministic dual coordinate descent. Features are
// standardized with training statistics (sd floor 1e-8). Prediction is the
// argmax affine score; ties resolve to the smallest class index.
struct SvmModel {
    std::vector<int> classes;     // sorted distinct labels
    Mat weights;                  // features x classes
    std::vector<double> bias;     // per class
    double C = 1.0;               // selected regularization
    std::vector<double> means, sds;
};

inline const std::vector<double>& default_c_grid() {
    static const std::vector<double> g{1.0, 0.1, 0.01, 0.001, 0.0001};
    return g;
}

// X: features x samples (column per sample)
SvmModel fit_linear_svm(const Mat& X, const std::vector<int>& labels,
                        const std::vector<double>& c_grid = default_c_grid(),
                        std::size_t folds = 3);

std::vector<int> svm_predict(const SvmModel& model, const Mat& X);

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

} // namespace igt
