#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "igt/averaging.hpp"
#include "igt/datasets.hpp"
#include "igt/eig.hpp"
#include "igt/error.hpp"
#include "igt/fourier.hpp"
#include "igt/io.hpp"
#include "igt/model.hpp"
#include "igt/rng.hpp"
#include "igt/tensor.hpp"

using namespace igt;

namespace {

std::string tmp_path(const std::string& stem) {
    return std::string("/tmp/igt_test_") + stem;
}

} // namespace

TEST_SUITE("io") {

TEST_CASE("igtm tensor round trips") {
    Rng rng(2);
    Mat m(5, 3);
    for (auto& v : m.a) v = rng.normal();
    std::string p = tmp_path("real.igtm");
    igtm::write_matrix(p, m);
    Mat back = igtm::read_real_matrix(p);
    CHECK(back.rows == 5);
    CHECK(back.cols == 3);
    CHECK(back.a == m.a);

    CMat c(4, 4);
    for (auto& v : c.a) v = cplx(rng.normal(), rng.normal());
    std::string pc = tmp_path("cplx.igtm");
    igtm::write_matrix(pc, c);
    CMat cb = igtm::read_complex_matrix(pc);
    CHECK(cb.a == c.a);

    SignalBatch b(3, 2, 7);
    for (auto& v : b.values) v = rng.normal();
    std::string pb = tmp_path("batch.igtm");
    igtm::write_batch(pb, b);
    SignalBatch bb = igtm::read_batch(pb);
    CHECK(bb.samples == 3);
    CHECK(bb.channels == 2);
    CHECK(bb.nodes == 7);
    CHECK(bb.values == b.values);

    // dtype mismatch is rejected
    CHECK_THROWS_AS(igtm::read_complex_matrix(p), Error);
    CHECK_THROWS_AS(igtm::read_real_matrix(pc), Error);

    // truncated file
    {
        std::ofstream f(tmp_path("trunc.igtm"), std::ios::binary);
        f << "IGTM";
    }
    CHECK_THROWS_AS(igtm::read(tmp_path("trunc.igtm")), Error);
    // wrong magic
    {
        std::ofstream f(tmp_path("bad.igtm"), std::ios::binary);
        f << "NOPExxxxxxxxxxxxxxxxxxx";
    }
    CHECK_THROWS_AS(igtm::read(tmp_path("bad.igtm")), Error);
    CHECK_THROWS_AS(igtm::read(tmp_path("missing.igtm")), Error);
}

TEST_CASE("graph json round trip keeps grid declarations") {
    GraphSpec g = gen_torus(3, 3);
    std::string p = tmp_path("graph.json");
    save_graph(p, g);
    GraphSpec back = load_graph(p);
    CHECK(back.node_count == 9);
    CHECK(back.grid_h == 3);
    CHECK(back.grid_w == 3);
    CHECK(back.edges.size() == g.edges.size());
    CHECK(back.name == g.name);

    // edge-list path loses the grid declaration but parses
    std::string pt = tmp_path("graph.txt");
    write_text_file(pt, format_edge_list(g));
    GraphSpec flat = load_graph(pt);
    CHECK(flat.node_count == 9);
    CHECK(flat.grid_h == 0);
}

TEST_CASE("fourier and model round trips") {
    LaplacianEig e = laplacian_eig(gen_cycle(9));
    auto [pm, f] = build_fourier(e);
    std::string fp = tmp_path("fourier");
    save_fourier(fp, f, pm);
    SpectralFourier fb = load_fourier(fp);
    CHECK(fb.n == f.n);
    CHECK(fb.columns.a == f.columns.a);
    CHECK(fb.conj_of == f.conj_of);
    CHECK(fb.const_col == f.const_col);
    CHECK(fb.freqs == f.freqs);

    AveragingOp a = make_graph_averaging(f);
    IGTModel model;
    model.fourier = f;
    model.averaging = a;
    FilterBank bank;
    bank.K = 2;
    bank.n = f.n;
    bank.spectra = CMat(f.n, 2);
    Rng rng(3);
    for (auto& v : bank.spectra.a) v = cplx(rng.normal(), rng.normal());
    bank = project_onto_constraint(bank, a, f);
    bank.tightness_eps = measure_tightness(bank, a, f);
    model.banks.push_back(bank);

    std::string mp = tmp_path("model");
    save_model(mp, model);
    IGTModel back = load_model(mp);
    CHECK(back.order() == 1);
    CHECK(back.fourier.columns.a == f.columns.a);
    CHECK(back.banks[0].spectra.a == bank.spectra.a);
    CHECK(back.banks[0].tightness_eps == bank.tightness_eps);
    CHECK(back.averaging.kind == AvgKind::GraphProjector);
    CHECK(back.averaging.spectral_mag == a.spectral_mag);

    CHECK_THROWS_AS(load_model(tmp_path("no_such_model")), Error);
}

TEST_CASE("grid averaging round trips through the manifest") {
    auto [pm, f] = build_fourier(grid_eigendecompose(9, 9));
    (void)pm;
    AveragingOp a = make_grid_averaging(f, 9, 9, 1);
    IGTModel model;
    model.fourier = f;
    model.averaging = a;
    std::string mp = tmp_path("gridmodel");
    save_model(mp, model);
    IGTModel back = load_model(mp);
    CHECK(back.averaging.kind == AvgKind::GridGaussian);
    CHECK(back.averaging.h == 9);
    CHECK(back.averaging.sub == 2);
    CHECK(back.averaging.kern_h == a.kern_h);
    CHECK(back.averaging.spectral_mag == a.spectral_mag);
}

} // TEST_SUITE

#ifdef IGT_CLI_PATH
namespace {

int run_cli(const std::string& args) {
    std::string cmd = std::string(IGT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& p) { return read_text_file(p); }

} // namespace

TEST_SUITE("cli") {

TEST_CASE("subcommand exit codes") {
    CHECK(run_cli("definitely-not-a-subcommand") == 2);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("pair --graph /tmp/igt_no_such_file.json --out /tmp/igt_x") == 1);
    CHECK(run_cli("synth --kind nope --out /tmp/igt_x") == 1);
}

TEST_CASE("deterministic artifacts") {
    std::string d = "/tmp/igt_cli_det";
    REQUIRE(std::system(("rm -rf " + d + " && mkdir -p " + d).c_str()) == 0);
    std::string base = " --seed 11 synth --kind sbm --sizes 7 8 --p-in 0.6 --p-out 0.05 "
                       "--samples 12 --steps 3 --out ";
    CHECK(run_cli(base + d + "/a") == 0);
    CHECK(run_cli(base + d + "/b") == 0);
    CHECK(slurp(d + "/a.graph.json") == slurp(d + "/b.graph.json"));
    CHECK(slurp(d + "/a.data.igtm") == slurp(d + "/b.data.igtm"));
    CHECK(slurp(d + "/a.labels.json") == slurp(d + "/b.labels.json"));

    CHECK(run_cli("pair --graph " + d + "/a.graph.json --out " + d + "/fa") == 0);
    CHECK(run_cli("pair --graph " + d + "/b.graph.json --out " + d + "/fb") == 0);
    CHECK(slurp(d + "/fa.fourier.igtm") == slurp(d + "/fb.fourier.igtm"));
    CHECK(slurp(d + "/fa.json") == slurp(d + "/fb.json"));
}

TEST_CASE("train, spectra, energy, transform pipeline") {
    std::string d = "/tmp/igt_cli_pipe";
    REQUIRE(std::system(("rm -rf " + d + " && mkdir -p " + d).c_str()) == 0);
    CHECK(run_cli("--seed 2 synth --kind texture --height 5 --width 5 --samples 32 "
                  "--out " + d + "/tex") == 0);
    CHECK(run_cli("--seed 2 train --graph " + d + "/tex.graph.json --data " + d +
                  "/tex.data.igtm --filters 3 --epochs 1 --batch 16 --avg grid "
                  "--grid-scale 1 --out " + d + "/m") == 0);
    CHECK(run_cli("spectra --model " + d + "/m --layer 1 --out " + d + "/s.csv") == 0);
    CHECK(run_cli("spectra --model " + d + "/m --layer 9 --out " + d + "/x.csv") == 1);
    CHECK(run_cli("energy --model " + d + "/m --data " + d + "/tex.data.igtm --out " +
                  d + "/e.csv") == 0);
    CHECK(run_cli("transform --model " + d + "/m --data " + d +
                  "/tex.data.igtm --out " + d + "/r.igtm") == 0);

    // spectra CSV: header + K rows; torus carries (kx, ky) columns
    std::string csv = slurp(d + "/s.csv");
    std::size_t rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 4); // header + 3 filters
    CHECK(csv.find(",kx0,") != std::string::npos);

    Mat rep = igtm::read_real_matrix(d + "/r.igtm");
    CHECK(rep.cols == 32);

    // training log exists and is JSON-lines
    std::string log = slurp(d + "/m.log.jsonl");
    CHECK(log.find("\"loss\"") != std::string::npos);
    CHECK(log.find("\"feasibility_residual\"") != std::string::npos);
}

TEST_CASE("classify emits the reported schema") {
    std::string d = "/tmp/igt_cli_cls";
    REQUIRE(std::system(("rm -rf " + d + " && mkdir -p " + d).c_str()) == 0);
    CHECK(run_cli("--seed 4 synth --kind sbm --sizes 10 11 --p-in 0.6 --p-out 0.05 "
                  "--samples 120 --test-samples 40 --steps 4 --out " + d + "/s") == 0);
    CHECK(run_cli("--seed 4 train --graph " + d + "/s.graph.json --data " + d +
                  "/s.data.igtm --filters 4 --epochs 2 --out " + d + "/m") == 0);
    CHECK(run_cli("--deterministic classify --model " + d + "/m --train " + d +
                  "/s --test " + d + "/s.test --ablation --out " + d + "/r.json") == 0);
    std::string rep = slurp(d + "/r.json");
    for (const char* key : {"accuracy_test", "accuracy_train", "baseline_raw",
                            "energy_fractions", "order", "config", "seed",
                            "accuracy_test_unaveraged"})
        CHECK(rep.find(std::string("\"") + key + "\"") != std::string::npos);
    CHECK(rep.find("wall_seconds") == std::string::npos); // deterministic mode

    // identical rerun is byte-identical under --deterministic
    CHECK(run_cli("--deterministic classify --model " + d + "/m --train " + d +
                  "/s --test " + d + "/s.test --ablation --out " + d + "/r2.json") == 0);
    CHECK(slurp(d + "/r.json") == slurp(d + "/r2.json"));
}

} // TEST_SUITE
#endif
