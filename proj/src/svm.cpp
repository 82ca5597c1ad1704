#include "igt/svm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "igt/error.hpp"
#include "igt/kernels.hpp"

namespace igt {

namespace {

struct Standardizer {
    std::vector<double> means, sds;
};

Standardizer fit_standardizer(const Mat& X) {
    const std::size_t f = X.rows, s = X.cols;
    Standardizer st;
    st.means.assign(f, 0.0);
    st.sds.assign(f, 0.0);
    for (std::size_t j = 0; j < s; ++j) {
        const double* x = X.col(j);
        for (std::size_t i = 0; i < f; ++i) st.means[i] += x[i];
    }
    for (double& m : st.means) m /= double(s);
    for (std::size_t j = 0; j < s; ++j) {
        const double* x = X.col(j);
        for (std::size_t i = 0; i < f; ++i) {
            double d = x[i] - st.means[i];
            st.sds[i] += d * d;
        }
    }
    for (double& v : st.sds) v = std::max(std::sqrt(v / double(s)), 1e-8);
    return st;
}

Mat standardize(const Mat& X, const Standardizer& st) {
    Mat Z(X.rows, X.cols);
    for (std::size_t j = 0; j < X.cols; ++j) {
        const double* x = X.col(j);
        double* z = Z.col(j);
        for (std::size_t i = 0; i < X.rows; ++i)
            z[i] = (x[i] - st.means[i]) / st.sds[i];
    }
    return Z;
}

struct Binary {
    std::vector<double> w;
    double b = 0.0;
};

// L2-regularized squared-hinge SVM, dual coordinate descent in fixed sample
// order; the bias is an appended constant feature. Stops at a relative
// duality gap of 1e-6.
Binary train_binary(const Mat& X, const std::vector<double>& y, double C) {
    const std::size_t f = X.rows, s = X.cols;
    Binary m;
    m.w.assign(f, 0.0);
    std::vector<double> alpha(s, 0.0), qdiag(s);
    const double dshift = 1.0 / (2.0 * C);
    for (std::size_t j = 0; j < s; ++j)
        qdiag[j] = kern::nrm2sq(X.col(j), f) + 1.0 + dshift;

    const std::size_t max_epochs = 1000;
    for (std::size_t epoch = 0; epoch < max_epochs; ++epoch) {
        for (std::size_t j = 0; j < s; ++j) {
            const double* x = X.col(j);
            double score = kern::dot(m.w.data(), x, f) + m.b;
            double g = y[j] * score - 1.0 + alpha[j] * dshift;
            if (alpha[j] == 0.0 && g >= 0.0) continue;
            double a_new = std::max(0.0, alpha[j] - g / qdiag[j]);
            double delta = (a_new - alpha[j]) * y[j];
            if (delta == 0.0) continue;
            kern::axpy(delta, x, m.w.data(), f);
            m.b += delta;
            alpha[j] = a_new;
        }
        double reg = 0.5 * (kern::nrm2sq(m.w.data(), f) + m.b * m.b);
        double primal = reg, dual = -reg, asum2 = 0.0;
        for (std::size_t j = 0; j < s; ++j) {
            double margin = 1.0 - y[j] * (kern::dot(m.w.data(), X.col(j), f) + m.b);
            if (margin > 0.0) primal += C * margin * margin;
            dual += alpha[j];
            asum2 += alpha[j] * alpha[j];
        }
        dual -= 0.25 * asum2 / C;
        if (primal - dual <= 1e-6 * std::max(1.0, std::abs(primal))) break;
    }
    return m;
}

SvmModel train_ovr(const Mat& Xz, const std::vector<int>& labels,
                   const std::vector<int>& classes, double C) {
    SvmModel m;
    m.classes = classes;
    m.C = C;
    m.weights = Mat(Xz.rows, classes.size());
    m.bias.assign(classes.size(), 0.0);
    std::vector<double> y(Xz.cols);
    for (std::size_t c = 0; c < classes.size(); ++c) {
        for (std::size_t j = 0; j < Xz.cols; ++j)
            y[j] = labels[j] == classes[c] ? 1.0 : -1.0;
        Binary b = train_binary(Xz, y, C);
        std::copy(b.w.begin(), b.w.end(), m.weights.col(c));
        m.bias[c] = b.b;
    }
    return m;
}

std::vector<int> predict_standardized(const SvmModel& m, const Mat& Xz) {
    std::vector<int> out(Xz.cols);
    for (std::size_t j = 0; j < Xz.cols; ++j) {
        const double* x = Xz.col(j);
        std::size_t best = 0;
        double best_score = kern::dot(m.weights.col(0), x, Xz.rows) + m.bias[0];
        for (std::size_t c = 1; c < m.classes.size(); ++c) {
            double sc = kern::dot(m.weights.col(c), x, Xz.rows) + m.bias[c];
            if (sc > best_score) {
                best_score = sc;
                best = c;
            }
        }
        out[j] = m.classes[best];
    }
    return out;
}

} // namespace

SvmModel fit_linear_svm(const Mat& X, const std::vector<int>& labels,
                        const std::vector<double>& c_grid, std::size_t folds) {
    if (X.cols == 0 || X.cols != labels.size())
        throw Error("fit_linear_svm: label count does not match the sample count");
    if (c_grid.empty()) throw Error("fit_linear_svm: empty C grid");
    std::set<int> uniq(labels.begin(), labels.end());
    if (uniq.size() < 2) throw Error("fit_linear_svm: training set has a single class");
    std::vector<int> classes(uniq.begin(), uniq.end());

    std::vector<double> grid = c_grid;
    std::sort(grid.begin(), grid.end(), std::greater<>()); // ties -> larger C

    double best_c = grid[0];
    if (grid.size() > 1 && folds >= 2 && X.cols >= 2 * folds) {
        // stratified fold assignment: round-robin within each class, in
        // order of appearance
        std::vector<std::size_t> fold_of(X.cols);
        std::vector<std::size_t> seen(classes.size(), 0);
        for (std::size_t j = 0; j < X.cols; ++j) {
            std::size_t c = std::size_t(
                std::lower_bound(classes.begin(), classes.end(), labels[j]) -
                classes.begin());
            fold_of[j] = seen[c]++ % folds;
        }

        double best_acc = -1.0;
        for (double C : grid) {
            double acc_sum = 0.0;
            std::size_t evaluated = 0;
            for (std::size_t fo = 0; fo < folds; ++fo) {
                std::vector<std::size_t> tr, va;
                for (std::size_t j = 0; j < X.cols; ++j)
                    (fold_of[j] == fo ? va : tr).push_back(j);
                if (tr.empty() || va.empty()) continue;
                std::set<int> tr_classes;
                for (std::size_t j : tr) tr_classes.insert(labels[j]);
                if (tr_classes.size() < 2) continue;

                Mat Xtr(X.rows, tr.size()), Xva(X.rows, va.size());
                std::vector<int> ltr(tr.size()), lva(va.size());
                for (std::size_t t = 0; t < tr.size(); ++t) {
                    std::copy(X.col(tr[t]), X.col(tr[t]) + X.rows, Xtr.col(t));
                    ltr[t] = labels[tr[t]];
                }
                for (std::size_t t = 0; t < va.size(); ++t) {
                    std::copy(X.col(va[t]), X.col(va[t]) + X.rows, Xva.col(t));
                    lva[t] = labels[va[t]];
                }
                Standardizer st = fit_standardizer(Xtr);
                std::vector<int> tr_class_list(tr_classes.begin(), tr_classes.end());
                SvmModel m = train_ovr(standardize(Xtr, st), ltr, tr_class_list, C);
                std::vector<int> pred = predict_standardized(m, standardize(Xva, st));
                acc_sum += accuracy(pred, lva);
                ++evaluated;
            }
            if (evaluated == 0) continue;
            double acc = acc_sum / double(evaluated);
            if (acc > best_acc) {
                best_acc = acc;
                best_c = C;
            }
        }
    }

    Standardizer st = fit_standardizer(X);
    SvmModel model = train_ovr(standardize(X, st), labels, classes, best_c);
    model.means = st.means;
    model.sds = st.sds;
    return model;
}

std::vector<int> svm_predict(const SvmModel& model, const Mat& X) {
    if (X.rows != model.weights.rows)
        throw Error("svm_predict: feature dimension mismatch");
    Standardizer st{model.means, model.sds};
    return predict_standardized(model, standardize(X, st));
}

double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size() || predicted.empty())
        throw Error("accuracy: size mismatch or empty input");
    std::size_t hit = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i)
        if (predicted[i] == truth[i]) ++hit;
    return double(hit) / double(predicted.size());
}

} // namespace igt
