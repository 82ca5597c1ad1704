#include "igt/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "igt/error.hpp"

namespace igt {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw ParseError("edge list line " + std::to_string(line) + ": " + what);
}

} // namespace

GraphSpec parse_edge_list(const std::string& text) {
    GraphSpec g;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::set<std::pair<std::size_t, std::size_t>> seen;

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue; // blank or comment line

        if (!have_header) {
            if (first != "n") parse_fail(lineno, "expected header \"n <node_count>\"");
            long long n = -1;
            if (!(ls >> n) || n <= 0) parse_fail(lineno, "invalid node count");
            std::string extra;
            if (ls >> extra) parse_fail(lineno, "trailing tokens after header");
            g.node_count = std::size_t(n);
            have_header = true;
            continue;
        }

        long long u = -1, v = -1;
        double w = 1.0;
        std::istringstream es(line);
        if (!(es >> u >> v)) parse_fail(lineno, "expected \"u v [w]\"");
        bool has_w = bool(es >> w);
        std::string extra;
        if (es >> extra) parse_fail(lineno, "trailing tokens after edge");
        if (u < 0 || v < 0 || std::size_t(u) >= g.node_count || std::size_t(v) >= g.node_count)
            parse_fail(lineno, "node index out of range");
        if (u == v) parse_fail(lineno, "self-loop");
        if (has_w && !(w > 0.0)) parse_fail(lineno, "non-positive weight");
        std::pair<std::size_t, std::size_t> key{std::min(std::size_t(u), std::size_t(v)),
                                                std::max(std::size_t(u), std::size_t(v))};
        if (!seen.insert(key).second) parse_fail(lineno, "duplicate edge");
        g.edges.push_back({std::size_t(u), std::size_t(v), w});
    }
    if (!have_header) throw ParseError("edge list: missing header \"n <node_count>\"");
    return g;
}

std::string format_edge_list(const GraphSpec& g) {
    std::ostringstream os;
    os.precision(17);
    if (!g.name.empty()) os << "# " << g.name << "\n";
    os << "n " << g.node_count << "\n";
    for (const auto& e : g.edges) {
        os << e.u << " " << e.v;
        if (e.w != 1.0) os << " " << e.w;
        os << "\n";
    }
    return os.str();
}

Mat build_laplacian(const GraphSpec& g) {
    validate(g);
    Mat L(g.node_count, g.node_count);
    for (const auto& e : g.edges) {
        L(e.u, e.v) -= e.w;
        L(e.v, e.u) -= e.w;
        L(e.u, e.u) += e.w;
        L(e.v, e.v) += e.w;
    }
    return L;
}

std::pair<GraphSpec, SignalBatch> pad_to_odd(const GraphSpec& g, const SignalBatch& batch) {
    if (g.node_count % 2 == 1) return {g, batch};
    GraphSpec gp = g;
    gp.node_count += 1;
    gp.padded = true;
    SignalBatch out(batch.samples, batch.channels, batch.nodes + 1);
    for (std::size_t s = 0; s < batch.samples; ++s)
        for (std::size_t c = 0; c < batch.channels; ++c) {
            const double* src = batch.at(s, c);
            double* dst = out.at(s, c);
            std::copy(src, src + batch.nodes, dst);
            dst[batch.nodes] = 0.0;
        }
    return {gp, out};
}

void validate(const GraphSpec& g) {
    if (g.node_count == 0) throw Error("graph: node_count must be positive");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::size_t real_nodes = g.padded ? g.node_count - 1 : g.node_count;
    for (const auto& e : g.edges) {
        if (e.u == e.v) throw Error("graph: self-loop");
        if (e.u >= real_nodes || e.v >= real_nodes)
            throw Error("graph: edge index out of range");
        if (!(e.w > 0.0)) throw Error("graph: non-positive edge weight");
        if (!seen.insert(std::minmax(e.u, e.v)).second)
            throw Error("graph: duplicate edge");
    }
}

} // namespace igt
