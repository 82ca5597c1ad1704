#include <cmath>
#include <numeric>

#include "doctest.h"
#include "igt/datasets.hpp"
#include "igt/error.hpp"
#include "igt/idx.hpp"
#include "igt/rng.hpp"
#include "igt/svm.hpp"

using namespace igt;

TEST_SUITE("data") {

TEST_CASE("cycle and torus generators") {
    GraphSpec c5 = gen_cycle(5);
    CHECK(c5.node_count == 5);
    std::vector<int> deg(5, 0);
    for (auto& e : c5.edges) {
        ++deg[e.u];
        ++deg[e.v];
    }
    for (int d : deg) CHECK(d == 2);

    GraphSpec t = gen_torus(3, 3);
    CHECK(t.node_count == 9);
    std::vector<int> dt(9, 0);
    for (auto& e : t.edges) {
        ++dt[e.u];
        ++dt[e.v];
    }
    for (int d : dt) CHECK(d == 4);

    CHECK_THROWS_AS(gen_cycle(4), Error);
    CHECK_THROWS_AS(gen_cycle(1), Error);
    CHECK_THROWS_AS(gen_torus(4, 3), Error);
}

TEST_CASE("sbm edge counts match the binomial oracle") {
    std::vector<std::size_t> sizes{31, 32};
    SbmGraph sg = gen_sbm(sizes, 0.5, 0.02, 77);
    // within-community pair count: C(31,2)+C(32,2) = 465+496 = 961
    const double pairs_in = 961.0, p_in = 0.5;
    std::size_t within = 0;
    for (auto& e : sg.graph.edges)
        if (sg.community[e.u] == sg.community[e.v]) ++within;
    double mean = pairs_in * p_in;
    double sd = std::sqrt(pairs_in * p_in * (1 - p_in));
    CHECK(std::abs(double(within) - mean) <= 3.0 * sd);

    // labels are a partition in declaration order
    for (std::size_t i = 0; i < 31; ++i) CHECK(sg.community[i] == 0);
    for (std::size_t i = 31; i < 63; ++i) CHECK(sg.community[i] == 1);

    // determinism
    SbmGraph sg2 = gen_sbm(sizes, 0.5, 0.02, 77);
    CHECK(sg.graph.edges.size() == sg2.graph.edges.size());

    CHECK_THROWS_AS(gen_sbm(sizes, 0.02, 0.5, 1), Error); // p_in <= p_out
}

TEST_CASE("diffusion dataset invariants") {
    SbmGraph sg = gen_sbm({10, 11}, 0.6, 0.05, 5);
    const std::size_t n = sg.graph.node_count;

    // T = 0: the source indicator
    DiffusionDataset d0 = gen_diffusion_dataset(sg.graph, sg.community, 20, 0, 0.0, 9);
    for (std::size_t s = 0; s < 20; ++s) {
        double sum = 0.0;
        int ones = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += d0.signals.at(s, 0)[i];
            if (d0.signals.at(s, 0)[i] == 1.0) ++ones;
        }
        CHECK(sum == 1.0);
        CHECK(ones == 1);
    }

    // any T, q: entries sum to 1 and stay nonnegative
    DiffusionDataset d = gen_diffusion_dataset(sg.graph, sg.community, 30, 4, 0.3, 9);
    for (std::size_t s = 0; s < 30; ++s) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(d.signals.at(s, 0)[i] >= 0.0);
            sum += d.signals.at(s, 0)[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d.labels[s] < 2);
    }

    // q = 1: every signal stays a delta
    DiffusionDataset dq = gen_diffusion_dataset(sg.graph, sg.community, 20, 6, 1.0, 9);
    for (std::size_t s = 0; s < 20; ++s) {
        int ones = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (dq.signals.at(s, 0)[i] == 1.0) ++ones;
        CHECK(ones == 1);
    }

    // determinism
    DiffusionDataset d2 = gen_diffusion_dataset(sg.graph, sg.community, 30, 4, 0.3, 9);
    CHECK(d.signals.values == d2.signals.values);
    CHECK(d.labels == d2.labels);
}

TEST_CASE("texture dataset is unit energy and deterministic") {
    SignalBatch b = gen_texture_dataset(9, 9, 10, 3);
    for (std::size_t s = 0; s < 10; ++s) {
        double e = 0.0;
        for (std::size_t i = 0; i < 81; ++i)
            e += b.at(s, 0)[i] * b.at(s, 0)[i];
        CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
    }
    SignalBatch b2 = gen_texture_dataset(9, 9, 10, 3);
    CHECK(b.values == b2.values);
}

TEST_CASE("idx round trip and error paths") {
    Rng rng(8);
    IdxTensor t;
    t.dims = {7, 3, 5};
    t.data.resize(7 * 3 * 5);
    for (auto& v : t.data) v = std::uint8_t(rng.below(256));
    std::vector<std::uint8_t> bytes = serialize_idx(t);
    IdxTensor back = parse_idx(bytes);
    CHECK(back.dims == t.dims);
    CHECK(back.data == t.data);

    IdxImages im = parse_idx_images(bytes);
    CHECK(im.count == 7);
    CHECK(im.h == 3);
    CHECK(im.w == 5);
    for (std::size_t i = 0; i < t.data.size(); ++i)
        CHECK(im.pixels[i] == doctest::Approx(double(t.data[i]) / 255.0));

    // 4-byte input: truncation
    CHECK_THROWS_AS(parse_idx({0, 0, 8, 3}), ParseError);
    // payload shorter than the dims promise
    std::vector<std::uint8_t> trunc(bytes.begin(), bytes.end() - 1);
    CHECK_THROWS_AS(parse_idx(trunc), ParseError);
    // wrong magic (not a u8 tensor)
    CHECK_THROWS_AS(parse_idx({0, 0, 13, 1, 0, 0, 0, 0}), ParseError);
    // dimensionality mismatch between labels and images accessors
    IdxTensor lab;
    lab.dims = {4};
    lab.data = {1, 2, 3, 4};
    std::vector<std::uint8_t> lb = serialize_idx(lab);
    CHECK(parse_idx_labels(lb) == lab.data);
    CHECK_THROWS_AS(parse_idx_images(lb), ParseError);
    CHECK_THROWS_AS(parse_idx_labels(bytes), ParseError);
}

TEST_CASE("svm separates point clouds and is deterministic") {
    Rng rng(15);
    const std::size_t dim = 4, per = 30;
    Mat X(dim, 2 * per);
    std::vector<int> y(2 * per);
    for (std::size_t s = 0; s < 2 * per; ++s) {
        int cls = s < per ? 0 : 1;
        y[s] = cls;
        for (std::size_t i = 0; i < dim; ++i)
            X(i, s) = rng.normal() * 0.3 + (cls ? 4.0 : -4.0);
    }
    // every C in the grid separates the clouds perfectly
    for (double c : default_c_grid()) {
        SvmModel m = fit_linear_svm(X, y, {c}, 3);
        CHECK(accuracy(svm_predict(m, X), y) == 1.0);
    }
    CHECK(default_c_grid() == std::vector<double>{1.0, 0.1, 0.01, 0.001, 0.0001});

    SvmModel m1 = fit_linear_svm(X, y);
    SvmModel m2 = fit_linear_svm(X, y);
    CHECK(m1.C == m2.C);
    CHECK(m1.weights.a == m2.weights.a);
    CHECK(m1.bias == m2.bias);

    std::vector<int> ones(2 * per, 1);
    CHECK_THROWS_AS(fit_linear_svm(X, ones), Error); // single class
}

TEST_CASE("raw diffusion signals are linearly separable at q = 0") {
    SbmGraph sg = gen_sbm({31, 32}, 0.5, 0.02, 42);
    DiffusionDataset tr = gen_diffusion_dataset(sg.graph, sg.community, 600, 4, 0.0, 1);
    DiffusionDataset te = gen_diffusion_dataset(sg.graph, sg.community, 200, 4, 0.0, 2);
    auto to_mat = [](const DiffusionDataset& d) {
        Mat X(d.signals.nodes, d.signals.samples);
        for (std::size_t s = 0; s < d.signals.samples; ++s)
            for (std::size_t i = 0; i < d.signals.nodes; ++i)
                X(i, s) = d.signals.at(s, 0)[i];
        return X;
    };
    std::vector<int> ytr(tr.labels.begin(), tr.labels.end());
    std::vector<int> yte(te.labels.begin(), te.labels.end());
    SvmModel m = fit_linear_svm(to_mat(tr), ytr);
    CHECK(accuracy(svm_predict(m, to_mat(te)), yte) >= 0.9);
}

} // TEST_SUITE
