#include "igt/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "igt/error.hpp"
#include "igt/kernels.hpp"

namespace igt {

Budgets compute_budgets(const FilterBank& bank, const AveragingOp& a,
                        const SpectralFourier& f) {
    const std::size_t n = f.n;
    if (bank.n != n || a.n != n) throw Error("compute_budgets: dimension mismatch");
    Budgets b;
    b.gamma.assign(n, 0.0);
    b.lambda.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = f.conj_of[i];
        double g = 0.0;
        for (std::size_t k = 0; k < bank.K; ++k)
            g += std::norm(bank.spectra(i, k)) + std::norm(bank.spectra(j, k));
        b.gamma[i] = g; // i == j on the constant frequency gives the doubled form
        b.lambda[i] = 2.0 - a.spectral_mag[i] * a.spectral_mag[i] -
                      a.spectral_mag[j] * a.spectral_mag[j];
    }
    return b;
}

FilterBank project_onto_constraint(FilterBank bank, const AveragingOp& a,
                                   const SpectralFourier& f) {
    Budgets b = compute_budgets(bank, a, f);
    for (std::size_t i = 0; i < f.n; ++i) {
        // relative slack keeps the projection exactly idempotent: a freshly
        // rescaled group recomputes within a few ulps of its budget
        if (b.gamma[i] <= b.lambda[i] * (1.0 + 1e-12)) continue;
        double p = b.lambda[i] > 0.0 ? std::sqrt(b.lambda[i] / b.gamma[i]) : 0.0;
        for (std::size_t k = 0; k < bank.K; ++k) bank.spectra(i, k) *= p;
    }
    return bank;
}

FilterBank normalize_to_extremal(const FilterBank& bank, const AveragingOp& a,
                                 const SpectralFourier& f) {
    Budgets b = compute_budgets(bank, a, f);
    FilterBank out = bank;
    std::vector<char> done(f.n, 0);
    for (std::size_t i = 0; i < f.n; ++i) {
        if (done[i]) continue;
        std::size_t j = f.conj_of[i];
        done[i] = done[j] = 1;
        double s;
        if (b.lambda[i] <= 0.0) {
            s = 0.0;
        } else if (b.gamma[i] == 0.0) {
            throw Error("normalize_to_extremal: frequency " + std::to_string(i) +
                        " has no filter energy but a positive budget");
        } else {
            s = std::sqrt(b.lambda[i] / b.gamma[i]);
        }
        for (std::size_t k = 0; k < out.K; ++k) {
            out.spectra(i, k) *= s;
            if (j != i) out.spectra(j, k) *= s;
        }
    }
    out.tightness_eps = measure_tightness(out, a, f);
    return out;
}

double measure_tightness(const FilterBank& bank, const AveragingOp& a,
                         const SpectralFourier& f) {
    Budgets b = compute_budgets(bank, a, f);
    double min_usage = 1.0;
    for (std::size_t i = 0; i < f.n; ++i) {
        if (b.lambda[i] <= 0.0) continue;
        double u = b.gamma[i] / b.lambda[i];
        if (u < min_usage) min_usage = u;
    }
    if (min_usage < 0.0) min_usage = 0.0;
    if (min_usage > 1.0) min_usage = 1.0;
    return 1.0 - min_usage;
}

void spectrum(const SpectralFourier& f, const double* z, cplx* zhat) {
    for (std::size_t i = 0; i < f.n; ++i)
        zhat[i] = kern::dotc_rz(z, f.columns.col(i), f.n);
}

SignalBatch layer_forward(const FilterBank& bank, const SpectralFourier& f,
                          const SignalBatch& batch) {
    const std::size_t n = f.n;
    if (batch.nodes != n || bank.n != n) throw Error("layer_forward: dimension mismatch");
    SignalBatch out(batch.samples, batch.channels * bank.K, n);
    std::vector<cplx> zhat(n), y(n);
    for (std::size_t s = 0; s < batch.samples; ++s)
        for (std::size_t c = 0; c < batch.channels; ++c) {
            spectrum(f, batch.at(s, c), zhat.data());
            for (std::size_t k = 0; k < bank.K; ++k) {
                std::fill(y.begin(), y.end(), cplx(0, 0));
                for (std::size_t i = 0; i < n; ++i) {
                    cplx coef = bank.spectra(i, k) * zhat[i];
                    if (coef != cplx(0, 0)) kern::zaxpy(coef, f.columns.col(i), y.data(), n);
                }
                kern::zmod(y.data(), out.at(s, c * bank.K + k), n);
            }
        }
    return out;
}

Representation igt_transform(const IGTModel& model, const SignalBatch& batch,
                             bool averaged) {
    const std::size_t n = model.fourier.n;
    if (batch.nodes != n) throw Error("igt_transform: batch/model dimension mismatch");
    const std::size_t B = batch.samples;
    const std::size_t N = model.order();

    Representation rep;
    rep.averaged = averaged;

    if (!averaged) {
        SignalBatch cur = batch;
        for (std::size_t l = 0; l < N; ++l)
            cur = layer_forward(model.banks[l], model.fourier, cur);
        rep.layer_offsets = {0};
        rep.layer_channels = {cur.channels};
        rep.features = Mat(cur.channels * n, B);
        for (std::size_t s = 0; s < B; ++s) {
            double* dst = rep.features.col(s);
            const double* src = cur.at(s, 0);
            std::copy(src, src + cur.channels * n, dst);
        }
        return rep;
    }

    const std::size_t fc = model.averaging.feature_count();
    std::size_t dim = 0, ch = batch.channels;
    for (std::size_t l = 0; l <= N; ++l) {
        rep.layer_offsets.push_back(dim);
        rep.layer_channels.push_back(ch);
        dim += ch * fc;
        if (l < N) ch *= model.banks[l].K;
    }
    rep.features = Mat(dim, B);

    SignalBatch cur = batch;
    for (std::size_t l = 0; l <= N; ++l) {
        std::size_t off = rep.layer_offsets[l];
        for (std::size_t s = 0; s < B; ++s)
            for (std::size_t c = 0; c < cur.channels; ++c)
                averaged_features(model.averaging, cur.at(s, c),
                                  rep.features.col(s) + off + c * fc);
        if (l < N) cur = layer_forward(model.banks[l], model.fourier, cur);
    }
    return rep;
}

EnergyProfile energy_profile(const IGTModel& model, const SignalBatch& batch) {
    const std::size_t N = model.order();
    double total = kern::nrm2sq(batch.values.data(), batch.values.size());
    if (total <= 0.0) throw Error("energy_profile: batch has zero norm");

    EnergyProfile p;
    SignalBatch cur = batch;
    double last_norm2 = total;
    for (std::size_t l = 0; l <= N; ++l) {
        double avg = 0.0;
        for (std::size_t s = 0; s < cur.samples; ++s)
            for (std::size_t c = 0; c < cur.channels; ++c)
                avg += averaging_energy(model.averaging, cur.at(s, c));
        p.fractions.push_back(avg / total);
        if (l < N) {
            cur = layer_forward(model.banks[l], model.fourier, cur);
            last_norm2 = kern::nrm2sq(cur.values.data(), cur.values.size());
        } else {
            // energy the next (hypothetical extremal) layer would still carry
            p.residual = std::max(0.0, (last_norm2 - avg)) / total;
        }
    }

    double cum = 0.0;
    std::size_t sel = std::min<std::size_t>(N, 2);
    for (std::size_t l = 0; l <= N; ++l) {
        cum += p.fractions[l];
        if (cum >= 0.99) {
            sel = std::min<std::size_t>(l, 2);
            break;
        }
    }
    p.selected_order = sel;
    return p;
}

} // namespace igt
