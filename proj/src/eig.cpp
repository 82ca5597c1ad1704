#include "igt/eig.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "igt/error.hpp"

namespace igt {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// flips columns so the first entry exceeding 1e-9 in magnitude is positive
void fix_signs(Mat& vecs) {
    for (std::size_t j = 0; j < vecs.cols; ++j) {
        double* c = vecs.col(j);
        for (std::size_t i = 0; i < vecs.rows; ++i) {
            if (std::abs(c[i]) > 1e-9) {
                if (c[i] < 0.0)
                    for (std::size_t k = 0; k < vecs.rows; ++k) c[k] = -c[k];
                break;
            }
        }
    }
}

bool lex_less(const Mat& vecs, std::size_t a, std::size_t b) {
    const double* ca = vecs.col(a);
    const double* cb = vecs.col(b);
    for (std::size_t i = 0; i < vecs.rows; ++i) {
        long long ra = llround(ca[i] * 1e9);
        long long rb = llround(cb[i] * 1e9);
        if (ra != rb) return ra < rb;
    }
    return false;
}

// ascending eigenvalues; within equal-eigenvalue groups, lexicographic order
// of the (sign-fixed) rounded entries
std::vector<std::size_t> canonical_order(std::vector<double>& vals, const Mat& vecs) {
    std::vector<std::size_t> idx(vals.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    double scale = vals.empty() ? 1.0 : std::max(1.0, std::abs(vals[idx.back()]));
    double gtol = 1e-9 * scale;
    std::size_t start = 0;
    while (start < idx.size()) {
        std::size_t end = start + 1;
        while (end < idx.size() && vals[idx[end]] - vals[idx[start]] <= gtol) ++end;
        std::sort(idx.begin() + start, idx.begin() + end,
                  [&](std::size_t a, std::size_t b) { return lex_less(vecs, a, b); });
        // snap the group to one representative value so the reorder cannot
        // introduce sub-tolerance eigenvalue inversions
        double rep = vals[idx[start]];
        for (std::size_t k = start; k < end; ++k) rep = std::min(rep, vals[idx[k]]);
        if (std::abs(rep) <= gtol) rep = 0.0; // the kernel eigenvalue is exactly 0
        for (std::size_t k = start; k < end; ++k) vals[idx[k]] = rep;
        start = end;
    }
    return idx;
}

LaplacianEig assemble(std::vector<double> vals, Mat vecs,
                      std::vector<std::array<int, 2>> freqs,
                      std::size_t const_idx, std::size_t virtual_idx) {
    fix_signs(vecs);
    auto perm = canonical_order(vals, vecs);

    LaplacianEig out;
    out.n = vecs.rows;
    out.eigenvalues.resize(out.n);
    out.vectors = Mat(out.n, out.n);
    if (!freqs.empty()) out.freqs.resize(out.n);
    for (std::size_t j = 0; j < out.n; ++j) {
        std::size_t src = perm[j];
        out.eigenvalues[j] = vals[src];
        std::copy(vecs.col(src), vecs.col(src) + out.n, out.vectors.col(j));
        if (!freqs.empty()) out.freqs[j] = freqs[src];
        if (src == const_idx) out.const_index = j;
        if (src == virtual_idx) out.virtual_index = j;
    }
    if (virtual_idx == kNoIndex) out.virtual_index = kNoIndex;
    return out;
}

} // namespace

LaplacianEig eigendecompose(const Mat& laplacian) {
    const std::size_t n = laplacian.rows;
    if (n == 0 || laplacian.cols != n) throw Error("eigendecompose: matrix must be square");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (std::abs(laplacian(i, j) - laplacian(j, i)) > 1e-12)
                throw Error("eigendecompose: matrix not symmetric within 1e-12");

    Eigen::MatrixXd L = Eigen::Map<const Eigen::MatrixXd>(laplacian.a.data(), long(n), long(n));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success) throw Error("eigendecompose: solver failed");

    std::vector<double> vals(n);
    Mat vecs(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        vals[j] = solver.eigenvalues()[long(j)];
        for (std::size_t i = 0; i < n; ++i) vecs(i, j) = solver.eigenvectors()(long(i), long(j));
    }

    double scale = std::max(1.0, std::abs(vals[n - 1]));
    if (std::abs(vals[0]) > 1e-10 * scale)
        throw Error("eigendecompose: smallest eigenvalue not zero (not a Laplacian?)");
    if (n > 1 && vals[1] <= 1e-10 * scale)
        throw Error("eigendecompose: zero eigenvalue has multiplicity > 1 (graph disconnected)");

    // the kernel vector of a connected graph's Laplacian is the constant
    return assemble(std::move(vals), std::move(vecs), {}, 0, kNoIndex);
}

LaplacianEig grid_eigendecompose(std::size_t h, std::size_t w) {
    if (h == 0 || w == 0) throw Error("grid_eigendecompose: empty grid");
    const std::size_t n = h * w;
    std::vector<double> vals;
    Mat vecs(n, n);
    std::vector<std::array<int, 2>> freqs;
    vals.reserve(n);
    freqs.reserve(n);

    std::size_t col = 0;
    std::size_t const_src = kNoIndex;
    for (std::size_t kx = 0; kx < h; ++kx) {
        for (std::size_t ky = 0; ky < w; ++ky) {
            std::size_t cx = (h - kx) % h, cy = (w - ky) % w;
            if (std::make_pair(cx, cy) < std::make_pair(kx, ky)) continue; // conjugate handled
            double lam = 0.0;
            if (h > 1) lam += 2.0 - 2.0 * std::cos(kTwoPi * double(kx) / double(h));
            if (w > 1) lam += 2.0 - 2.0 * std::cos(kTwoPi * double(ky) / double(w));
            bool self_conj = (cx == kx && cy == ky);
            double amp = self_conj ? 1.0 / std::sqrt(double(n)) : std::sqrt(2.0 / double(n));
            // cosine column (DC when kx = ky = 0)
            if (kx == 0 && ky == 0) const_src = col;
            for (std::size_t u = 0; u < h; ++u)
                for (std::size_t v = 0; v < w; ++v) {
                    double th = kTwoPi * (double(kx) * double(u) / double(h) +
                                          double(ky) * double(v) / double(w));
                    vecs(u * w + v, col) = amp * std::cos(th);
                }
            vals.push_back(lam);
            freqs.push_back({int(kx), int(ky)});
            ++col;
            if (!self_conj) {
                for (std::size_t u = 0; u < h; ++u)
                    for (std::size_t v = 0; v < w; ++v) {
                        double th = kTwoPi * (double(kx) * double(u) / double(h) +
                                              double(ky) * double(v) / double(w));
                        vecs(u * w + v, col) = amp * std::sin(th);
                    }
                vals.push_back(lam);
                freqs.push_back({int(kx), int(ky)});
                ++col;
            }
        }
    }
    if (col != n) throw Error("grid_eigendecompose: internal frequency enumeration mismatch");

    LaplacianEig out = assemble(std::move(vals), std::move(vecs), std::move(freqs),
                                const_src, kNoIndex);
    out.grid_h = h;
    out.grid_w = w;
    return out;
}

LaplacianEig laplacian_eig(const GraphSpec& g) {
    if (g.padded) {
        GraphSpec orig = g;
        orig.padded = false;
        orig.node_count -= 1;
        LaplacianEig base = laplacian_eig(orig);

        const std::size_t n = base.n + 1;
        std::vector<double> vals(n);
        Mat vecs(n, n);
        std::vector<std::array<int, 2>> freqs;
        bool have_freqs = !base.freqs.empty();
        if (have_freqs) freqs.resize(n);
        for (std::size_t j = 0; j < base.n; ++j) {
            vals[j] = base.eigenvalues[j];
            std::copy(base.vectors.col(j), base.vectors.col(j) + base.n, vecs.col(j));
            vecs(n - 1, j) = 0.0;
            if (have_freqs) freqs[j] = base.freqs[j];
        }
        // virtual node indicator enters as an extra zero-eigenvalue vector
        vals[n - 1] = 0.0;
        vecs(n - 1, n - 1) = 1.0;
        if (have_freqs) freqs[n - 1] = {-1, -1};

        LaplacianEig out = assemble(std::move(vals), std::move(vecs), std::move(freqs),
                                    base.const_index, n - 1);
        out.grid_h = base.grid_h;
        out.grid_w = base.grid_w;
        return out;
    }
    if (g.grid_h > 0) {
        if (g.grid_h * std::max<std::size_t>(g.grid_w, 1) != g.node_count)
            throw Error("laplacian_eig: grid dims disagree with node count");
        return grid_eigendecompose(g.grid_h, std::max<std::size_t>(g.grid_w, 1));
    }
    return eigendecompose(build_laplacian(g));
}

} // namespace igt
