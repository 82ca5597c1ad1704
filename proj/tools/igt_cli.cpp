// Command-line front end: dataset synthesis, eigenvector pairing, greedy
// layer-wise training, transforms, classification, and artifact export.
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "igt/datasets.hpp"
#include "igt/eig.hpp"
#include "igt/error.hpp"
#include "igt/graph.hpp"
#include "igt/io.hpp"
#include "igt/model.hpp"
#include "igt/pipeline.hpp"
#include "igt/rng.hpp"
#include "igt/tensor.hpp"
#include "igt/trainer.hpp"

namespace {

using igt::Error;
using nlohmann::json;

struct GlobalOpts {
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    bool deterministic = false;
};

void write_labels_json(const std::string& path, const std::vector<int>& labels,
                       const json& metadata) {
    json j;
    j["labels"] = labels;
    j["metadata"] = metadata;
    igt::write_text_file(path, j.dump(2) + "\n");
}

igt::LabeledData load_labeled(const std::string& prefix) {
    igt::LabeledData d;
    d.signals = igt::igtm::read_batch(prefix + ".data.igtm");
    json j = json::parse(igt::read_text_file(prefix + ".labels.json"));
    d.labels = j.at("labels").get<std::vector<int>>();
    if (!d.labels.empty() && d.labels.size() != d.signals.samples)
        throw Error(prefix + ": label count does not match the sample count");
    return d;
}

int cmd_synth(const GlobalOpts& g, const std::string& kind, std::size_t n,
              std::size_t h, std::size_t w, std::vector<std::size_t> sizes,
              double p_in, double p_out, std::size_t samples,
              std::size_t test_samples, std::size_t steps, double drop,
              const std::string& out) {
    igt::GraphSpec graph;
    std::vector<std::size_t> community;
    if (kind == "cycle") {
        graph = igt::gen_cycle(n);
        community.assign(graph.node_count, 0);
    } else if (kind == "torus" || kind == "texture") {
        graph = igt::gen_torus(h, w);
        community.assign(graph.node_count, 0);
    } else if (kind == "sbm") {
        if (sizes.empty()) throw Error("synth: --sizes required for sbm");
        igt::SbmGraph sg = igt::gen_sbm(sizes, p_in, p_out, g.seed);
        graph = std::move(sg.graph);
        community = std::move(sg.community);
    } else {
        throw Error("synth: unknown kind '" + kind + "'");
    }
    igt::save_graph(out + ".graph.json", graph);
    igt::write_text_file(out + ".graph.txt", igt::format_edge_list(graph));

    // train split uses the run seed directly, the test split a derived
    // stream, so both come from the same graph
    auto emit = [&](const std::string& prefix, std::size_t count,
                    std::uint64_t seed) {
        json meta{{"kind", kind}, {"seed", seed}};
        if (kind == "texture") {
            igt::SignalBatch batch = igt::gen_texture_dataset(h, w, count, seed);
            igt::igtm::write_batch(prefix + ".data.igtm", batch);
            write_labels_json(prefix + ".labels.json", {}, meta);
        } else {
            igt::DiffusionDataset ds = igt::gen_diffusion_dataset(
                graph, community, count, steps, drop, seed);
            igt::igtm::write_batch(prefix + ".data.igtm", ds.signals);
            meta["communities"] = ds.communities;
            meta["walk_steps"] = steps;
            meta["edge_drop_q"] = drop;
            if (kind == "sbm") {
                meta["p_in"] = p_in;
                meta["p_out"] = p_out;
                meta["community"] = community;
            }
            std::vector<int> labels(ds.labels.begin(), ds.labels.end());
            write_labels_json(prefix + ".labels.json", labels, meta);
        }
    };
    if (samples > 0) emit(out, samples, g.seed);
    if (test_samples > 0)
        emit(out + ".test", test_samples, igt::Rng::derive(g.seed, 0x7e57));
    std::cout << "graph " << graph.name << ": " << graph.node_count << " nodes, "
              << graph.edges.size() << " edges";
    if (samples > 0) std::cout << ", " << samples << " samples";
    std::cout << "\n";
    return 0;
}

int cmd_pair(const std::string& graph_path, const std::string& out) {
    igt::GraphSpec graph = igt::load_graph(graph_path);
    igt::SignalBatch empty;
    auto [padded, _] = igt::pad_to_odd(graph, empty);
    igt::LaplacianEig eig = igt::laplacian_eig(padded);
    auto [pm, fourier] = igt::build_fourier(eig);
    igt::save_fourier(out, fourier, pm);
    std::cout << "paired " << pm.pairs.size() << " eigenvector pairs, total cost "
              << pm.total_cost << "\n";
    return 0;
}

igt::AveragingOp make_averaging(const igt::SpectralFourier& f, const std::string& avg,
                                int J) {
    if (avg == "graph") return igt::make_graph_averaging(f);
    if (avg == "grid") {
        if (f.grid_h == 0 || f.grid_w == 0)
            throw Error("grid averaging requires a Fourier operator built on a "
                        "declared periodic grid");
        return igt::make_grid_averaging(f, f.grid_h, f.grid_w, J);
    }
    throw Error("unknown averaging kind '" + avg + "'");
}

int cmd_train(const GlobalOpts& g, const std::string& fourier_prefix,
              const std::string& graph_path, const std::string& data_path,
              const std::string& config_path, std::vector<std::size_t> filters,
              std::size_t batch, std::size_t epochs, double lr,
              std::vector<std::size_t> drops, const std::string& avg, int J,
              const std::string& out) {
    igt::SpectralFourier fourier;
    if (!fourier_prefix.empty()) {
        fourier = igt::load_fourier(fourier_prefix);
    } else if (!graph_path.empty()) {
        igt::GraphSpec graph = igt::load_graph(graph_path);
        igt::SignalBatch empty;
        auto [padded, _] = igt::pad_to_odd(graph, empty);
        fourier = igt::build_fourier(igt::laplacian_eig(padded)).second;
    } else {
        throw Error("train: need --fourier or --graph");
    }

    igt::TrainConfig cfg;
    if (!config_path.empty()) {
        json j = json::parse(igt::read_text_file(config_path));
        if (j.contains("K")) cfg.filters_per_layer = j["K"].get<std::vector<std::size_t>>();
        if (j.contains("batch")) cfg.batch_size = j["batch"].get<std::size_t>();
        if (j.contains("epochs")) cfg.epochs = j["epochs"].get<std::size_t>();
        if (j.contains("lr")) cfg.lr0 = j["lr"].get<double>();
        if (j.contains("drops")) cfg.milestones = j["drops"].get<std::vector<std::size_t>>();
        if (j.contains("lr_decay")) cfg.lr_decay = j["lr_decay"].get<double>();
        if (j.contains("mod_eps")) cfg.mod_eps = j["mod_eps"].get<double>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    }
    if (!filters.empty()) cfg.filters_per_layer = filters;
    if (batch) cfg.batch_size = batch;
    if (epochs) cfg.epochs = epochs;
    if (lr > 0.0) cfg.lr0 = lr;
    if (!drops.empty()) cfg.milestones = drops;
    if (g.seed_set) cfg.seed = g.seed;

    igt::SignalBatch data = igt::igtm::read_batch(data_path);
    if (data.nodes != fourier.n) {
        if (data.nodes + 1 == fourier.n) {
            // padded spectral dimension: extend each signal with a zero
            igt::SignalBatch padded(data.samples, data.channels, fourier.n);
            for (std::size_t s = 0; s < data.samples; ++s)
                for (std::size_t c = 0; c < data.channels; ++c)
                    std::copy(data.at(s, c), data.at(s, c) + data.nodes,
                              padded.at(s, c));
            data = std::move(padded);
        } else {
            throw Error("train: dataset dimension does not match the operator");
        }
    }

    igt::AveragingOp averaging = make_averaging(fourier, avg, J);
    igt::TrainReport report;
    igt::IGTModel model = igt::greedy_train(data, fourier, averaging, cfg, &report);
    igt::save_model(out, model);
    igt::save_training_log(out + ".log.jsonl", report);
    for (std::size_t l = 0; l < model.banks.size(); ++l)
        std::cout << "layer " << l + 1 << ": K=" << model.banks[l].K
                  << " tightness_eps=" << model.banks[l].tightness_eps << "\n";
    return 0;
}

igt::SignalBatch load_batch_for(const igt::IGTModel& model, const std::string& path) {
    igt::SignalBatch data = igt::igtm::read_batch(path);
    if (data.nodes + 1 == model.fourier.n) {
        igt::SignalBatch padded(data.samples, data.channels, model.fourier.n);
        for (std::size_t s = 0; s < data.samples; ++s)
            for (std::size_t c = 0; c < data.channels; ++c)
                std::copy(data.at(s, c), data.at(s, c) + data.nodes, padded.at(s, c));
        return padded;
    }
    if (data.nodes != model.fourier.n)
        throw Error("dataset dimension does not match the model");
    return data;
}

int cmd_transform(const std::string& model_prefix, const std::string& data_path,
                  bool no_average, const std::string& out) {
    igt::IGTModel model = igt::load_model(model_prefix);
    igt::SignalBatch data = load_batch_for(model, data_path);
    igt::Representation rep = igt::igt_transform(model, data, !no_average);
    igt::igtm::write_matrix(out, rep.features);
    std::cout << "representation " << rep.features.rows << " x " << rep.features.cols
              << (rep.averaged ? " (averaged)\n" : " (unaveraged)\n");
    return 0;
}

int cmd_classify(const GlobalOpts& g, const std::string& model_prefix,
                 const std::string& train_prefix, const std::string& test_prefix,
                 bool no_average, bool ablation, std::vector<double> c_grid,
                 const std::string& out) {
    igt::IGTModel model = igt::load_model(model_prefix);
    igt::LabeledData train = load_labeled(train_prefix);
    igt::LabeledData test = load_labeled(test_prefix);
    if (train.signals.nodes + 1 == model.fourier.n) {
        train.signals = load_batch_for(model, train_prefix + ".data.igtm");
        test.signals = load_batch_for(model, test_prefix + ".data.igtm");
    }
    igt::PipelineOptions opt;
    opt.averaged = !no_average;
    opt.ablation = ablation;
    if (!c_grid.empty()) opt.c_grid = c_grid;
    opt.seed = g.seed;
    igt::ExperimentReport rep = igt::evaluate_pipeline(model, train, test, opt);
    std::string doc = rep.to_json(opt, g.deterministic);
    igt::write_text_file(out, doc);
    std::cout << "test accuracy " << rep.accuracy_test << ", raw baseline "
              << rep.baseline_raw << "\n";
    return 0;
}

int cmd_spectra(const std::string& model_prefix, std::size_t layer,
                const std::string& out) {
    igt::IGTModel model = igt::load_model(model_prefix);
    if (layer < 1 || layer > model.order())
        throw Error("spectra: layer out of range");
    const igt::FilterBank& bank = model.banks[layer - 1];
    const igt::SpectralFourier& f = model.fourier;
    std::ostringstream csv;
    csv.precision(17);
    csv << "filter";
    for (std::size_t i = 0; i < f.n; ++i) csv << ",mag" << i;
    if (!f.freqs.empty())
        for (std::size_t i = 0; i < f.n; ++i) csv << ",kx" << i << ",ky" << i;
    csv << "\n";
    for (std::size_t k = 0; k < bank.K; ++k) {
        csv << k;
        for (std::size_t i = 0; i < f.n; ++i) csv << "," << std::abs(bank.spectra(i, k));
        if (!f.freqs.empty())
            for (std::size_t i = 0; i < f.n; ++i)
                csv << "," << f.freqs[i][0] << "," << f.freqs[i][1];
        csv << "\n";
    }
    igt::write_text_file(out, csv.str());
    std::cout << "wrote " << bank.K << " filter spectra\n";
    return 0;
}

int cmd_energy(const std::string& model_prefix, const std::string& data_path,
               const std::string& out) {
    igt::IGTModel model = igt::load_model(model_prefix);
    igt::SignalBatch data = load_batch_for(model, data_path);
    igt::EnergyProfile p = igt::energy_profile(model, data);
    std::ostringstream csv;
    csv.precision(17);
    csv << "order,fraction\n";
    for (std::size_t l = 0; l < p.fractions.size(); ++l)
        csv << l << "," << p.fractions[l] << "\n";
    csv << "residual," << p.residual << "\n";
    csv << "selected_order," << p.selected_order << "\n";
    igt::write_text_file(out, csv.str());
    std::cout << "selected order " << p.selected_order << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"interferometric graph transform pipeline"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("IGT_THREADS")) g.threads = std::atoi(env);
    app.add_option("--seed", g.seed, "seed override")
        ->each([&](const std::string&) { g.seed_set = true; });
    app.add_option("--threads", g.threads, "parallelism cap (default 1)");
    app.add_flag("--deterministic", g.deterministic,
                 "omit timestamps/timings from artifacts");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a graph and dataset");
    std::string kind, out;
    std::size_t n = 0, h = 0, w = 0, samples = 0, test_samples = 0, steps = 4;
    std::vector<std::size_t> sizes;
    double p_in = 0.5, p_out = 0.02, drop = 0.0;
    synth->add_option("--kind", kind, "cycle|torus|sbm|texture")->required();
    synth->add_option("--n", n, "cycle length");
    synth->add_option("--height", h, "grid height");
    synth->add_option("--width", w, "grid width");
    synth->add_option("--sizes", sizes, "sbm community sizes");
    synth->add_option("--p-in", p_in, "sbm within-community edge probability");
    synth->add_option("--p-out", p_out, "sbm cross-community edge probability");
    synth->add_option("--samples", samples, "dataset size (0 = graph only)");
    synth->add_option("--test-samples", test_samples,
                      "held-out dataset size on the same graph");
    synth->add_option("--steps", steps, "diffusion walk steps");
    synth->add_option("--drop", drop, "edge failure probability");
    synth->add_option("--out", out, "output prefix")->required();

    // pair
    auto* pair = app.add_subcommand("pair", "build the paired Fourier operator");
    std::string graph_path, pair_out;
    pair->add_option("--graph", graph_path, "graph file (.json or edge list)")
        ->required();
    pair->add_option("--out", pair_out, "output prefix")->required();

    // train
    auto* train = app.add_subcommand("train", "greedy layer-wise training");
    std::string t_fourier, t_graph, t_data, t_config, t_avg = "graph", t_out;
    std::vector<std::size_t> t_filters, t_drops;
    std::size_t t_batch = 0, t_epochs = 0;
    double t_lr = 0.0;
    int t_J = 1;
    train->add_option("--fourier", t_fourier, "Fourier operator prefix");
    train->add_option("--graph", t_graph, "graph file (builds the operator)");
    train->add_option("--data", t_data, "training batch (.igtm)")->required();
    train->add_option("--config", t_config, "JSON training config");
    train->add_option("--filters", t_filters, "filters per layer");
    train->add_option("--batch", t_batch, "minibatch size");
    train->add_option("--epochs", t_epochs, "epochs");
    train->add_option("--lr", t_lr, "initial learning rate");
    train->add_option("--drops", t_drops, "learning-rate drop iterations");
    train->add_option("--avg", t_avg, "averaging: graph|grid");
    train->add_option("--grid-scale", t_J, "grid averaging scale J (subsample 2^J)");
    train->add_option("--out", t_out, "model output prefix")->required();

    // transform
    auto* transform = app.add_subcommand("transform", "apply a trained model");
    std::string x_model, x_data, x_out;
    bool x_noavg = false;
    transform->add_option("--model", x_model, "model prefix")->required();
    transform->add_option("--data", x_data, "input batch (.igtm)")->required();
    transform->add_flag("--no-average", x_noavg, "emit the unaveraged representation");
    transform->add_option("--out", x_out, "output tensor (.igtm)")->required();

    // classify
    auto* classify = app.add_subcommand("classify", "SVM evaluation + report");
    std::string c_model, c_train, c_test, c_out;
    bool c_noavg = false, c_ablation = false;
    std::vector<double> c_grid;
    classify->add_option("--model", c_model, "model prefix")->required();
    classify->add_option("--train", c_train, "train dataset prefix")->required();
    classify->add_option("--test", c_test, "test dataset prefix")->required();
    classify->add_flag("--no-average", c_noavg, "use the unaveraged representation");
    classify->add_flag("--ablation", c_ablation,
                       "also score the complementary representation");
    classify->add_option("--c-grid", c_grid, "SVM regularization grid override");
    classify->add_option("--out", c_out, "report path (.json)")->required();

    // spectra
    auto* spectra = app.add_subcommand("spectra", "export filter spectra as CSV");
    std::string s_model, s_out;
    std::size_t s_layer = 1;
    spectra->add_option("--model", s_model, "model prefix")->required();
    spectra->add_option("--layer", s_layer, "layer index (1-based)");
    spectra->add_option("--out", s_out, "CSV path")->required();

    // energy
    auto* energy = app.add_subcommand("energy", "per-order energy table");
    std::string e_model, e_data, e_out;
    energy->add_option("--model", e_model, "model prefix")->required();
    energy->add_option("--data", e_data, "input batch (.igtm)")->required();
    energy->add_option("--out", e_out, "CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (g.threads < 1) throw Error("--threads must be at least 1");
        if (*synth)
            return cmd_synth(g, kind, n, h, w, sizes, p_in, p_out, samples,
                             test_samples, steps, drop, out);
        if (*pair) return cmd_pair(graph_path, pair_out);
        if (*train)
            return cmd_train(g, t_fourier, t_graph, t_data, t_config, t_filters,
                             t_batch, t_epochs, t_lr, t_drops, t_avg, t_J, t_out);
        if (*transform) return cmd_transform(x_model, x_data, x_noavg, x_out);
        if (*classify)
            return cmd_classify(g, c_model, c_train, c_test, c_noavg, c_ablation,
                                c_grid, c_out);
        if (*spectra) return cmd_spectra(s_model, s_layer, s_out);
        if (*energy) return cmd_energy(e_model, e_data, e_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
