#include "igt/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "igt/error.hpp"
#include "igt/matching.hpp"

namespace igt {

double pair_cost(const LaplacianEig& eig, std::size_t a, std::size_t b) {
    const double* ea = eig.vectors.col(a);
    const double* eb = eig.vectors.col(b);
    double s = 0.0;
    for (std::size_t k = 0; k < eig.n; ++k)
        s += std::sqrt(ea[k] * ea[k] + eb[k] * eb[k]);
    return s;
}

double pairing_cost(const LaplacianEig& eig, const PairMap& pairing) {
    const std::size_t n = eig.n;
    if (n % 2 == 0) throw Error("pairing_cost: dimension must be odd");
    const std::size_t d = eig.pair_count();
    if (pairing.pairs.size() != d) throw Error("pairing_cost: wrong number of pairs");
    std::vector<char> used(n, 0);
    used[eig.const_index] = 1;
    for (const auto& [a, b] : pairing.pairs) {
        if (a >= n || b >= n || a == b) throw Error("pairing_cost: invalid pair index");
        if (a == eig.const_index || b == eig.const_index)
            throw Error("pairing_cost: constant eigenvector cannot be paired");
        if (used[a] || used[b]) throw Error("pairing_cost: index repeated in pairing");
        used[a] = used[b] = 1;
    }
    double total = 0.0;
    for (const auto& [a, b] : pairing.pairs) total += pair_cost(eig, a, b);
    return total;
}

std::pair<PairMap, SpectralFourier> build_fourier(const LaplacianEig& eig) {
    const std::size_t n = eig.n;
    if (n % 2 == 0) throw Error("build_fourier: dimension must be odd (pad_to_odd first)");
    const std::size_t d = eig.pair_count();

    // matching pool: every non-constant eigenvector, ascending
    std::vector<std::size_t> pool;
    pool.reserve(2 * d);
    for (std::size_t i = 0; i < n; ++i)
        if (i != eig.const_index) pool.push_back(i);

    PairMap pm;
    pm.const_index = eig.const_index;
    if (d > 0) {
        Mat w(2 * d, 2 * d);
        for (std::size_t i = 0; i < 2 * d; ++i)
            for (std::size_t j = i + 1; j < 2 * d; ++j) {
                double c = pair_cost(eig, pool[i], pool[j]);
                w(i, j) = c;
                w(j, i) = c;
            }
        MatchResult mr = max_weight_perfect_matching(w);
        pm.total_cost = mr.total_weight;
        for (const auto& [i, j] : mr.pairs) {
            auto [a, b] = std::minmax(pool[i], pool[j]);
            pm.pairs.emplace_back(a, b);
        }
        std::sort(pm.pairs.begin(), pm.pairs.end());
    }

    SpectralFourier f;
    f.n = n;
    f.columns = CMat(n, n);
    f.conj_of.assign(n, 0);
    f.const_col = n - 1;
    f.grid_h = eig.grid_h;
    f.grid_w = eig.grid_w;
    bool have_freqs = !eig.freqs.empty();
    if (have_freqs) f.freqs.assign(n, {-1, -1});

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t p = 0; p < d; ++p) {
        auto [a, b] = pm.pairs[p];
        const double* ea = eig.vectors.col(a);
        const double* eb = eig.vectors.col(b);
        cplx* ca = f.columns.col(p);
        cplx* cb = f.columns.col(n - 2 - p);
        for (std::size_t k = 0; k < n; ++k) {
            double re = ea[k] * inv_sqrt2, im = eb[k] * inv_sqrt2;
            ca[k] = cplx(re, im);
            cb[k] = cplx(re, -im);
        }
        f.conj_of[p] = n - 2 - p;
        f.conj_of[n - 2 - p] = p;
        f.analytic_indices.push_back(p);
        if (have_freqs) {
            f.freqs[p] = eig.freqs[a];
            f.freqs[n - 2 - p] = eig.freqs[a];
        }
    }
    const double* ec = eig.vectors.col(eig.const_index);
    cplx* cc = f.columns.col(n - 1);
    for (std::size_t k = 0; k < n; ++k) cc[k] = cplx(ec[k], 0.0);
    f.conj_of[n - 1] = n - 1;
    if (have_freqs) f.freqs[n - 1] = eig.freqs[eig.const_index];

    return {std::move(pm), std::move(f)};
}

} // namespace igt
