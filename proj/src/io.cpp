#include "igt/io.hpp"

#include <fstream>
#include <sstream>

#include "igt/error.hpp"
#include "json.hpp"

namespace igt {

namespace {

using nlohmann::json;

json fourier_meta(const SpectralFourier& f) {
    json j;
    j["n"] = f.n;
    j["analytic_indices"] = f.analytic_indices;
    j["conj_of"] = f.conj_of;
    j["const_col"] = f.const_col;
    j["grid_h"] = f.grid_h;
    j["grid_w"] = f.grid_w;
    json freqs = json::array();
    for (const auto& kk : f.freqs) freqs.push_back({kk[0], kk[1]});
    j["freqs"] = freqs;
    return j;
}

SpectralFourier fourier_from_meta(const json& j, const std::string& columns_path) {
    SpectralFourier f;
    f.n = j.at("n").get<std::size_t>();
    f.analytic_indices = j.at("analytic_indices").get<std::vector<std::size_t>>();
    f.conj_of = j.at("conj_of").get<std::vector<std::size_t>>();
    f.const_col = j.at("const_col").get<std::size_t>();
    f.grid_h = j.at("grid_h").get<std::size_t>();
    f.grid_w = j.at("grid_w").get<std::size_t>();
    for (const auto& kk : j.at("freqs"))
        f.freqs.push_back({kk.at(0).get<int>(), kk.at(1).get<int>()});
    f.columns = igtm::read_complex_matrix(columns_path);
    if (f.columns.rows != f.n || f.columns.cols != f.n)
        throw Error("fourier manifest/tensor dimension mismatch");
    return f;
}

json averaging_meta(const AveragingOp& a) {
    json j;
    j["kind"] = a.kind == AvgKind::GraphProjector ? "graph" : "grid";
    j["n"] = a.n;
    j["spectral_mag"] = a.spectral_mag;
    j["const_col"] = a.const_col;
    j["const_vec"] = a.const_vec;
    j["h"] = a.h;
    j["w"] = a.w;
    j["J"] = a.J;
    j["sub"] = a.sub;
    j["out_h"] = a.out_h;
    j["out_w"] = a.out_w;
    j["kern_h"] = a.kern_h;
    j["kern_w"] = a.kern_w;
    return j;
}

AveragingOp averaging_from_meta(const json& j) {
    AveragingOp a;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "graph")
        a.kind = AvgKind::GraphProjector;
    else if (kind == "grid")
        a.kind = AvgKind::GridGaussian;
    else
        throw Error("unknown averaging kind: " + kind);
    a.n = j.at("n").get<std::size_t>();
    a.spectral_mag = j.at("spectral_mag").get<std::vector<double>>();
    a.const_col = j.at("const_col").get<std::size_t>();
    a.const_vec = j.at("const_vec").get<std::vector<double>>();
    a.h = j.at("h").get<std::size_t>();
    a.w = j.at("w").get<std::size_t>();
    a.J = j.at("J").get<int>();
    a.sub = j.at("sub").get<std::size_t>();
    a.out_h = j.at("out_h").get<std::size_t>();
    a.out_w = j.at("out_w").get<std::size_t>();
    a.kern_h = j.at("kern_h").get<std::vector<double>>();
    a.kern_w = j.at("kern_w").get<std::vector<double>>();
    return a;
}

json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

} // namespace

void save_graph(const std::string& path, const GraphSpec& g) {
    json j;
    j["format"] = "igt-graph";
    j["name"] = g.name;
    j["node_count"] = g.node_count;
    j["padded"] = g.padded;
    j["grid_h"] = g.grid_h;
    j["grid_w"] = g.grid_w;
    json edges = json::array();
    for (const auto& e : g.edges) edges.push_back({e.u, e.v, e.w});
    j["edges"] = edges;
    write_text_file(path, j.dump(2) + "\n");
}

GraphSpec load_graph(const std::string& path) {
    std::string text = read_text_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
        if (j.value("format", "") != "igt-graph")
            throw ParseError(path + ": not a graph document");
        GraphSpec g;
        g.name = j.value("name", "");
        g.node_count = j.at("node_count").get<std::size_t>();
        g.padded = j.value("padded", false);
        g.grid_h = j.value("grid_h", std::size_t(0));
        g.grid_w = j.value("grid_w", std::size_t(0));
        for (const auto& e : j.at("edges"))
            g.edges.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                               e.at(2).get<double>()});
        validate(g);
        return g;
    }
    return parse_edge_list(text);
}

void save_model(const std::string& prefix, const IGTModel& model) {
    json j;
    j["format"] = "igt-model";
    j["version"] = 1;
    j["fourier"] = fourier_meta(model.fourier);
    j["averaging"] = averaging_meta(model.averaging);
    json banks = json::array();
    for (const auto& b : model.banks)
        banks.push_back({{"K", b.K},
                         {"layer_index", b.layer_index},
                         {"tightness_eps", b.tightness_eps}});
    j["banks"] = banks;
    write_text_file(prefix + ".json", j.dump(2) + "\n");
    igtm::write_matrix(prefix + ".fourier.igtm", model.fourier.columns);
    for (std::size_t i = 0; i < model.banks.size(); ++i)
        igtm::write_matrix(prefix + ".bank" + std::to_string(i + 1) + ".igtm",
                           model.banks[i].spectra);
}

IGTModel load_model(const std::string& prefix) {
    json j = parse_json_file(prefix + ".json");
    if (j.value("format", "") != "igt-model")
        throw ParseError(prefix + ".json: not a model manifest");
    IGTModel model;
    model.fourier = fourier_from_meta(j.at("fourier"), prefix + ".fourier.igtm");
    model.averaging = averaging_from_meta(j.at("averaging"));
    std::size_t idx = 0;
    for (const auto& bj : j.at("banks")) {
        FilterBank b;
        b.K = bj.at("K").get<std::size_t>();
        b.layer_index = bj.at("layer_index").get<int>();
        b.tightness_eps = bj.at("tightness_eps").get<double>();
        b.spectra = igtm::read_complex_matrix(prefix + ".bank" +
                                              std::to_string(++idx) + ".igtm");
        b.n = b.spectra.rows;
        if (b.n != model.fourier.n || b.spectra.cols != b.K)
            throw Error("bank tensor dimensions do not match the manifest");
        model.banks.push_back(std::move(b));
    }
    return model;
}

void save_fourier(const std::string& prefix, const SpectralFourier& f,
                  const PairMap& pm) {
    json j;
    j["format"] = "igt-fourier";
    j["version"] = 1;
    j["fourier"] = fourier_meta(f);
    json pairs = json::array();
    for (const auto& [a, b] : pm.pairs) pairs.push_back({a, b});
    j["pairing"] = {{"pairs", pairs},
                    {"const_index", pm.const_index},
                    {"total_cost", pm.total_cost}};
    write_text_file(prefix + ".json", j.dump(2) + "\n");
    igtm::write_matrix(prefix + ".fourier.igtm", f.columns);
}

SpectralFourier load_fourier(const std::string& prefix) {
    json j = parse_json_file(prefix + ".json");
    std::string fmt = j.value("format", "");
    if (fmt != "igt-fourier" && fmt != "igt-model")
        throw ParseError(prefix + ".json: not a Fourier manifest");
    return fourier_from_meta(j.at("fourier"), prefix + ".fourier.igtm");
}

void save_training_log(const std::string& path, const TrainReport& report) {
    std::ostringstream out;
    for (std::size_t l = 0; l < report.layer_logs.size(); ++l) {
        for (const auto& e : report.layer_logs[l].entries) {
            json j;
            j["layer"] = l + 1;
            j["iteration"] = e.iteration;
            j["loss"] = e.loss;
            j["lr"] = e.lr;
            j["feasibility_residual"] = e.feasibility_residual;
            out << j.dump() << "\n";
        }
        if (l < report.profiles.size()) {
            json j;
            j["layer"] = l + 1;
            j["energy_fractions"] = report.profiles[l].fractions;
            j["energy_residual"] = report.profiles[l].residual;
            j["selected_order"] = report.profiles[l].selected_order;
            out << j.dump() << "\n";
        }
    }
    write_text_file(path, out.str());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

} // namespace igt
