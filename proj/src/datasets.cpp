#include "igt/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "igt/error.hpp"
#include "igt/rng.hpp"

namespace igt {

namespace {

bool is_connected(std::size_t n, const std::vector<Edge>& edges) {
    if (n == 0) return false;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

} // namespace

GraphSpec gen_cycle(std::size_t n) {
    if (n < 3 || n % 2 == 0) throw Error("gen_cycle: n must be odd and at least 3");
    GraphSpec g;
    g.node_count = n;
    g.name = "cycle-" + std::to_string(n);
    g.grid_h = n;
    g.grid_w = 1;
    for (std::size_t i = 0; i < n; ++i) g.edges.push_back({i, (i + 1) % n, 1.0});
    return g;
}

GraphSpec gen_torus(std::size_t h, std::size_t w) {
    if (h == 0 || w == 0 || (h * w) % 2 == 0)
        throw Error("gen_torus: h*w must be odd");
    if (h == 1) return w == 1 ? throw Error("gen_torus: need at least 3 nodes")
                              : gen_torus(w, 1);
    GraphSpec g;
    g.node_count = h * w;
    g.name = "torus-" + std::to_string(h) + "x" + std::to_string(w);
    g.grid_h = h;
    g.grid_w = w;
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            std::size_t u = r * w + c;
            if (h > 1) g.edges.push_back({u, ((r + 1) % h) * w + c, 1.0});
            if (w > 1) g.edges.push_back({u, r * w + (c + 1) % w, 1.0});
        }
    return g;
}

SbmGraph gen_sbm(const std::vector<std::size_t>& sizes, double p_in, double p_out,
                 std::uint64_t seed) {
    if (sizes.empty()) throw Error("gen_sbm: need at least one community");
    if (!(p_in > p_out)) throw Error("gen_sbm: p_in must exceed p_out");
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
        throw Error("gen_sbm: probabilities must lie in [0, 1]");
    std::size_t n = 0;
    for (std::size_t s : sizes) n += s;
    if (n < 2) throw Error("gen_sbm: too few nodes");

    std::vector<std::size_t> community(n);
    std::size_t node = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c)
        for (std::size_t i = 0; i < sizes[c]; ++i) community[node++] = c;

    for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
        Rng rng(Rng::derive(seed, attempt));
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                double p = community[u] == community[v] ? p_in : p_out;
                if (rng.uniform() < p) edges.push_back({u, v, 1.0});
            }
        if (is_connected(n, edges)) {
            SbmGraph out;
            out.graph.node_count = n;
            out.graph.edges = std::move(edges);
            out.graph.name = "sbm-" + std::to_string(sizes.size()) + "-" +
                             std::to_string(n);
            out.community = std::move(community);
            return out;
        }
    }
    throw Error("gen_sbm: no connected sample after 100 attempts");
}

DiffusionDataset gen_diffusion_dataset(const GraphSpec& g,
                                       const std::vector<std::size_t>& community,
                                       std::size_t samples, std::size_t walk_steps,
                                       double q, std::uint64_t seed) {
    if (q < 0.0 || q > 1.0) throw Error("gen_diffusion_dataset: q must lie in [0, 1]");
    if (community.size() != g.node_count)
        throw Error("gen_diffusion_dataset: community size mismatch");
    const std::size_t n = g.node_count;

    DiffusionDataset ds;
    ds.graph = g;
    ds.signals = SignalBatch(samples, 1, n);
    ds.labels.resize(samples);
    ds.communities = community.empty()
                         ? 0
                         : *std::max_element(community.begin(), community.end()) + 1;
    ds.walk_steps = walk_steps;
    ds.edge_drop_q = q;
    ds.seed = seed;

    std::vector<double> cur(n), nxt(n), degree(n);
    std::vector<Edge> kept;
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(Rng::derive(seed, s));
        kept.clear();
        for (const auto& e : g.edges)
            if (!(rng.uniform() < q)) kept.push_back(e);
        std::fill(degree.begin(), degree.end(), 0.0);
        for (const auto& e : kept) {
            degree[e.u] += e.w;
            degree[e.v] += e.w;
        }

        std::size_t src = std::size_t(rng.below(n));
        ds.labels[s] = community[src];
        std::fill(cur.begin(), cur.end(), 0.0);
        cur[src] = 1.0;
        for (std::size_t t = 0; t < walk_steps; ++t) {
            // mass update of the lazy walk (I + D^-1 W)/2; isolated nodes
            // keep their mass
            for (std::size_t u = 0; u < n; ++u)
                nxt[u] = degree[u] > 0.0 ? 0.5 * cur[u] : cur[u];
            for (const auto& e : kept) {
                if (degree[e.u] > 0.0) nxt[e.v] += 0.5 * cur[e.u] * e.w / degree[e.u];
                if (degree[e.v] > 0.0) nxt[e.u] += 0.5 * cur[e.v] * e.w / degree[e.v];
            }
            std::swap(cur, nxt);
        }
        std::copy(cur.begin(), cur.end(), ds.signals.at(s, 0));
    }
    return ds;
}

SignalBatch gen_texture_dataset(std::size_t h, std::size_t w, std::size_t samples,
                                std::uint64_t seed) {
    const std::size_t n = h * w;
    if (n == 0) throw Error("gen_texture_dataset: empty grid");
    SignalBatch batch(samples, 1, n);
    const double two_pi = 6.283185307179586476925286766559;
    for (std::size_t s = 0; s < samples; ++s) {
        Rng rng(Rng::derive(seed, s));
        double* z = batch.at(s, 0);
        const std::size_t waves = 3;
        for (std::size_t t = 0; t < waves; ++t) {
            std::size_t kx = std::size_t(rng.below(h));
            std::size_t ky = std::size_t(rng.below(w));
            double amp = 0.5 + rng.uniform();
            double phase = two_pi * rng.uniform();
            for (std::size_t u = 0; u < h; ++u)
                for (std::size_t v = 0; v < w; ++v)
                    z[u * w + v] += amp * std::cos(two_pi * (double(kx * u) / double(h) +
                                                             double(ky * v) / double(w)) +
                                                   phase);
        }
        double e = 0.0;
        for (std::size_t u = 0; u < n; ++u) e += z[u] * z[u];
        if (e > 0.0) {
            double inv = 1.0 / std::sqrt(e);
            for (std::size_t u = 0; u < n; ++u) z[u] *= inv;
        }
    }
    return batch;
}

} // namespace igt
