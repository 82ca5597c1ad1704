#include <cmath>

#include "doctest.h"
#include "igt/averaging.hpp"
#include "igt/datasets.hpp"
#include "igt/eig.hpp"
#include "igt/error.hpp"
#include "igt/fourier.hpp"
#include "igt/kernels.hpp"
#include "igt/model.hpp"
#include "igt/rng.hpp"
#include "igt/trainer.hpp"

using namespace igt;

namespace {

SpectralFourier cycle_fourier(std::size_t n) {
    return build_fourier(laplacian_eig(gen_cycle(n))).second;
}

FilterBank random_feasible_bank(const SpectralFourier& f, const AveragingOp& a,
                                std::size_t K, Rng& rng) {
    FilterBank b;
    b.K = K;
    b.n = f.n;
    b.spectra = CMat(f.n, K);
    for (auto& v : b.spectra.a) v = cplx(rng.normal(), rng.normal());
    return project_onto_constraint(b, a, f);
}

SignalBatch random_batch(std::size_t samples, std::size_t n, Rng& rng) {
    SignalBatch b(samples, 1, n);
    for (auto& v : b.values) v = rng.normal();
    return b;
}

} // namespace

TEST_SUITE("trainer") {

TEST_CASE("loss special cases") {
    SpectralFourier f = cycle_fourier(7);
    AveragingOp a = make_graph_averaging(f);
    Rng rng(11);
    SignalBatch batch = random_batch(4, 7, rng);

    // W = 0: loss = sum ||(I-A)z||^2
    FilterBank zero;
    zero.K = 2;
    zero.n = 7;
    zero.spectra = CMat(7, 2);
    double expect = 0.0;
    std::vector<double> az(7);
    for (std::size_t s = 0; s < 4; ++s) {
        apply_averaging(a, batch.at(s, 0), az.data());
        for (std::size_t i = 0; i < 7; ++i) {
            double r = batch.at(s, 0)[i] - az[i];
            expect += r * r;
        }
    }
    CHECK(empirical_loss(zero, a, f, batch) == doctest::Approx(expect).epsilon(1e-12));

    // constant z with a projector averaging: loss 0 for any feasible bank
    SignalBatch cbatch(1, 1, 7);
    for (auto& v : cbatch.values) v = 3.0;
    FilterBank b = random_feasible_bank(f, a, 2, rng);
    CHECK(empirical_loss(b, a, f, cbatch) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("gradient is exact against finite differences") {
    SpectralFourier f = cycle_fourier(5);
    AveragingOp a = make_graph_averaging(f);
    Rng rng(13);
    SignalBatch batch = random_batch(3, 5, rng);

    FilterBank b = random_feasible_bank(f, a, 2, rng);
    CMat g = loss_gradient(b, a, f, batch, 1e-8);
    const double h = 1e-6;
    for (std::size_t coord = 0; coord < 2 * b.spectra.a.size(); ++coord) {
        std::size_t idx = coord / 2;
        bool imag = coord % 2;
        FilterBank bp = b, bm = b;
        cplx delta = imag ? cplx(0, h) : cplx(h, 0);
        bp.spectra.a[idx] += delta;
        bm.spectra.a[idx] -= delta;
        double fd = (empirical_loss(bp, a, f, batch) - empirical_loss(bm, a, f, batch)) /
                    (2.0 * h);
        double an = imag ? g.a[idx].imag() : g.a[idx].real();
        CHECK(std::abs(fd - an) <= 1e-5 * std::max(1.0, std::abs(fd)));
    }

    // W = 0: zero gradient under the modulus cutoff
    FilterBank zero = b;
    zero.spectra = CMat(5, 2);
    CMat gz = loss_gradient(zero, a, f, batch, 1e-8);
    for (auto& v : gz.a) CHECK(v == cplx(0, 0));
}

TEST_CASE("loss is concave and positive on the constraint set") {
    SpectralFourier f = cycle_fourier(7);
    AveragingOp a = make_graph_averaging(f);
    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        SignalBatch batch = random_batch(2, 7, rng);
        FilterBank w1 = random_feasible_bank(f, a, 2, rng);
        FilterBank w2 = random_feasible_bank(f, a, 2, rng);
        double lam = rng.uniform();
        FilterBank mid = w1;
        for (std::size_t i = 0; i < mid.spectra.a.size(); ++i)
            mid.spectra.a[i] = lam * w1.spectra.a[i] + (1.0 - lam) * w2.spectra.a[i];
        double lm = empirical_loss(mid, a, f, batch);
        double l1 = empirical_loss(w1, a, f, batch);
        double l2 = empirical_loss(w2, a, f, batch);
        CHECK(lm >= lam * l1 + (1.0 - lam) * l2 - 1e-9);
        CHECK(l1 >= -1e-9);
        CHECK(l2 >= -1e-9);
    }
}

TEST_CASE("milestone schedule scaling") {
    CHECK(scaled_milestones(1875) == std::vector<std::size_t>{500, 1000, 1500});
    CHECK(scaled_milestones(10000) == std::vector<std::size_t>{500, 1000, 1500});
    CHECK(scaled_milestones(150) == std::vector<std::size_t>{40, 80, 120});
    CHECK(scaled_milestones(20) == std::vector<std::size_t>{10, 20, 30});
}

TEST_CASE("config validation") {
    TrainConfig bad;
    bad.lr0 = 0.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = TrainConfig{};
    bad.lr_decay = 1.0;
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = TrainConfig{};
    bad.milestones = {10, 10};
    CHECK_THROWS_AS(bad.validate(), Error);
    bad = TrainConfig{};
    bad.filters_per_layer = {};
    CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("train_layer: feasible, deterministic, loss decreases") {
    SpectralFourier f = build_fourier(laplacian_eig(gen_torus(5, 5))).second;
    AveragingOp a = make_graph_averaging(f);
    SignalBatch data = gen_texture_dataset(5, 5, 96, 999);

    TrainConfig cfg;
    cfg.batch_size = 16;
    cfg.epochs = 3;
    cfg.seed = 4;
    cfg.filters_per_layer = {4};

    TrainLog log;
    FilterBank bank = train_layer(data, f, a, 4, cfg, &log);
    REQUIRE(!log.entries.empty());
    for (const auto& e : log.entries) CHECK(e.feasibility_residual <= 1e-9);

    Budgets bud = compute_budgets(bank, a, f);
    for (std::size_t i = 0; i < f.n; ++i) CHECK(bud.gamma[i] <= bud.lambda[i] + 1e-9);

    // smoothed loss at the end <= smoothed loss at the start (window 5 here)
    auto smoothed = [&](std::size_t start) {
        double s = 0.0;
        std::size_t m = std::min<std::size_t>(5, log.entries.size() - start);
        for (std::size_t i = 0; i < m; ++i) s += log.entries[start + i].loss;
        return s / double(m);
    };
    CHECK(smoothed(log.entries.size() - 5) <= smoothed(0) + 1e-9);

    // determinism: bitwise identical rerun
    TrainLog log2;
    FilterBank bank2 = train_layer(data, f, a, 4, cfg, &log2);
    CHECK(bank.spectra.a == bank2.spectra.a);
    for (std::size_t i = 0; i < log.entries.size(); ++i)
        CHECK(log.entries[i].loss == log2.entries[i].loss);

    CHECK_THROWS_AS(train_layer(SignalBatch(), f, a, 4, cfg), Error);
}

TEST_CASE("greedy_train composes layers exactly") {
    SpectralFourier f = build_fourier(laplacian_eig(gen_torus(5, 5))).second;
    AveragingOp a = make_graph_averaging(f);
    SignalBatch data = gen_texture_dataset(5, 5, 48, 7);

    TrainConfig cfg;
    cfg.batch_size = 16;
    cfg.epochs = 1;
    cfg.seed = 21;

    cfg.filters_per_layer = {3};
    TrainReport rep1;
    IGTModel m1 = greedy_train(data, f, a, cfg, &rep1);
    CHECK(m1.order() == 1);
    CHECK(rep1.profiles.size() == 1);

    cfg.filters_per_layer = {3, 2};
    IGTModel m2 = greedy_train(data, f, a, cfg);
    CHECK(m2.order() == 2);
    // layer 1 must coincide with the order-1 run (same derived seed and data)
    CHECK(m1.banks[0].spectra.a == m2.banks[0].spectra.a);
    CHECK(m2.banks[1].K == 2);
    CHECK(m2.banks[1].layer_index == 2);
}

} // TEST_SUITE
