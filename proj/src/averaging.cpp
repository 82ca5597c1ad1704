#include "igt/averaging.hpp"

#include <cmath>

#include "igt/error.hpp"
#include "igt/kernels.hpp"

namespace igt {

namespace {

// circular 1-D kernel of a periodized Gaussian, normalized to sum 1
std::vector<double> periodized_gaussian(std::size_t len, double sigma) {
    std::vector<double> k(len, 0.0);
    for (std::size_t d = 0; d < len; ++d)
        for (int m = -4; m <= 4; ++m) {
            double x = double(d) + double(m) * double(len);
            k[d] += std::exp(-x * x / (2.0 * sigma * sigma));
        }
    double s = 0.0;
    for (double v : k) s += v;
    for (double& v : k) v /= s;
    return k;
}

// separable circular convolution on the leading h*w coordinates
void grid_convolve(const AveragingOp& a, const double* z, double* out) {
    const std::size_t h = a.h, w = a.w;
    std::vector<double> tmp(h * w, 0.0);
    for (std::size_t v = 0; v < w; ++v)
        for (std::size_t u = 0; u < h; ++u) {
            double s = 0.0;
            for (std::size_t du = 0; du < h; ++du)
                s += a.kern_h[du] * z[((u + h - du) % h) * w + v];
            tmp[u * w + v] = s;
        }
    for (std::size_t u = 0; u < h; ++u)
        for (std::size_t v = 0; v < w; ++v) {
            double s = 0.0;
            for (std::size_t dv = 0; dv < w; ++dv)
                s += a.kern_w[dv] * tmp[u * w + ((v + w - dv) % w)];
            out[u * w + v] = s;
        }
}

} // namespace

AveragingOp make_graph_averaging(const SpectralFourier& f) {
    AveragingOp a;
    a.kind = AvgKind::GraphProjector;
    a.n = f.n;
    a.const_col = f.const_col;
    a.const_vec.resize(f.n);
    const cplx* c = f.columns.col(f.const_col);
    for (std::size_t k = 0; k < f.n; ++k) a.const_vec[k] = c[k].real();
    a.spectral_mag.assign(f.n, 0.0);
    a.spectral_mag[f.const_col] = 1.0;
    return a;
}

AveragingOp make_grid_averaging(const SpectralFourier& f, std::size_t h, std::size_t w, int J) {
    AveragingOp a;
    a.kind = AvgKind::GridGaussian;
    a.n = f.n;
    a.h = h;
    a.w = w;
    a.J = J;
    if (J < 0) throw Error("make_grid_averaging: J must be nonnegative");
    a.sub = std::size_t(1) << J;
    if (a.sub > h || a.sub > w)
        throw Error("make_grid_averaging: 2^J exceeds a grid dimension");
    if (f.n != h * w && f.n != h * w + 1)
        throw Error("make_grid_averaging: Fourier dimension does not match the grid");
    a.out_h = (h + a.sub - 1) / a.sub;
    a.out_w = (w + a.sub - 1) / a.sub;
    double sigma = 0.8 * double(a.sub);
    a.kern_h = periodized_gaussian(h, sigma);
    a.kern_w = periodized_gaussian(w, sigma);

    // transfer magnitude per column, measured on the column itself; exact
    // for pure frequency pairs, conservative for mixed leftovers
    a.spectral_mag.assign(f.n, 0.0);
    std::vector<double> re(h * w), im(h * w), cre(h * w), cim(h * w);
    for (std::size_t j = 0; j < f.n; ++j) {
        const cplx* col = f.columns.col(j);
        for (std::size_t k = 0; k < h * w; ++k) {
            re[k] = col[k].real();
            im[k] = col[k].imag();
        }
        grid_convolve(a, re.data(), cre.data());
        grid_convolve(a, im.data(), cim.data());
        double e = kern::nrm2sq(cre.data(), h * w) + kern::nrm2sq(cim.data(), h * w);
        a.spectral_mag[j] = std::sqrt(e);
    }
    return a;
}

void apply_averaging(const AveragingOp& a, const double* z, double* out) {
    if (a.kind == AvgKind::GraphProjector) {
        double c = kern::dot(z, a.const_vec.data(), a.n);
        for (std::size_t k = 0; k < a.n; ++k) out[k] = c * a.const_vec[k];
    } else {
        grid_convolve(a, z, out);
        if (a.n > a.h * a.w) out[a.n - 1] = 0.0;
    }
}

void averaged_features(const AveragingOp& a, const double* z, double* out) {
    if (a.kind == AvgKind::GraphProjector) {
        out[0] = kern::dot(z, a.const_vec.data(), a.n);
        return;
    }
    std::vector<double> full(a.h * a.w);
    grid_convolve(a, z, full.data());
    std::size_t idx = 0;
    for (std::size_t u = 0; u < a.h; u += a.sub)
        for (std::size_t v = 0; v < a.w; v += a.sub) out[idx++] = full[u * a.w + v];
}

double averaging_energy(const AveragingOp& a, const double* z) {
    if (a.kind == AvgKind::GraphProjector) {
        double c = kern::dot(z, a.const_vec.data(), a.n);
        return c * c;
    }
    std::vector<double> full(a.h * a.w);
    grid_convolve(a, z, full.data());
    return kern::nrm2sq(full.data(), a.h * a.w);
}

} // namespace igt
