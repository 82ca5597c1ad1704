#include "igt/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "igt/error.hpp"
#include "json.hpp"

namespace igt {

Mat flatten_signals(const SignalBatch& batch) {
    const std::size_t dim = batch.channels * batch.nodes;
    Mat X(dim, batch.samples);
    for (std::size_t s = 0; s < batch.samples; ++s) {
        const double* src = batch.at(s, 0);
        std::copy(src, src + dim, X.col(s));
    }
    return X;
}

ExperimentReport evaluate_pipeline(const IGTModel& model, const LabeledData& train,
                                   const LabeledData& test,
                                   const PipelineOptions& opt) {
    if (train.signals.samples != train.labels.size() ||
        test.signals.samples != test.labels.size())
        throw Error("evaluate_pipeline: label count mismatch");

    auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.seed = opt.seed;

    Representation rtr = igt_transform(model, train.signals, opt.averaged);
    Representation rte = igt_transform(model, test.signals, opt.averaged);
    SvmModel svm = fit_linear_svm(rtr.features, train.labels, opt.c_grid, opt.folds);
    rep.selected_c = svm.C;
    rep.accuracy_train = accuracy(svm_predict(svm, rtr.features), train.labels);
    rep.accuracy_test = accuracy(svm_predict(svm, rte.features), test.labels);

    if (opt.ablation) {
        Representation utr = igt_transform(model, train.signals, !opt.averaged);
        Representation ute = igt_transform(model, test.signals, !opt.averaged);
        SvmModel usvm = fit_linear_svm(utr.features, train.labels, opt.c_grid, opt.folds);
        rep.accuracy_train_unaveraged =
            accuracy(svm_predict(usvm, utr.features), train.labels);
        rep.accuracy_test_unaveraged =
            accuracy(svm_predict(usvm, ute.features), test.labels);
    }

    Mat raw_tr = flatten_signals(train.signals);
    Mat raw_te = flatten_signals(test.signals);
    SvmModel raw_svm = fit_linear_svm(raw_tr, train.labels, opt.c_grid, opt.folds);
    rep.baseline_c = raw_svm.C;
    rep.baseline_raw_train = accuracy(svm_predict(raw_svm, raw_tr), train.labels);
    rep.baseline_raw = accuracy(svm_predict(raw_svm, raw_te), test.labels);

    EnergyProfile ep = energy_profile(model, train.signals);
    rep.energy_fractions = ep.fractions;
    rep.energy_residual = ep.residual;
    rep.order = ep.selected_order;

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string ExperimentReport::to_json(const PipelineOptions& opt,
                                      bool deterministic) const {
    nlohmann::json j;
    j["accuracy_test"] = accuracy_test;
    j["accuracy_train"] = accuracy_train;
    j["baseline_raw"] = baseline_raw;
    j["baseline_raw_train"] = baseline_raw_train;
    if (accuracy_test_unaveraged >= 0.0) {
        j["accuracy_test_unaveraged"] = accuracy_test_unaveraged;
        j["accuracy_train_unaveraged"] = accuracy_train_unaveraged;
    }
    j["energy_fractions"] = energy_fractions;
    j["energy_residual"] = energy_residual;
    j["order"] = order;
    j["seed"] = seed;
    j["config"] = {{"averaged", opt.averaged},
                   {"ablation", opt.ablation},
                   {"c_grid", opt.c_grid},
                   {"folds", opt.folds},
                   {"selected_c", selected_c},
                   {"baseline_c", baseline_c}};
    if (!deterministic) j["wall_seconds"] = wall_seconds;
    return j.dump(2) + "\n";
}

} // namespace igt
