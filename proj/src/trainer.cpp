#include "igt/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "igt/error.hpp"
#include "igt/kernels.hpp"
#include "igt/rng.hpp"

namespace igt {

namespace {

// y = F (What_k . zhat), m = |y|
void filter_apply(const FilterBank& bank, const SpectralFourier& f,
                  std::size_t k, const cplx* zhat, cplx* y) {
    std::fill(y, y + f.n, cplx(0, 0));
    for (std::size_t i = 0; i < f.n; ++i) {
        cplx coef = bank.spectra(i, k) * zhat[i];
        if (coef != cplx(0, 0)) kern::zaxpy(coef, f.columns.col(i), y, f.n);
    }
}

} // namespace

void TrainConfig::validate() const {
    if (batch_size == 0) throw Error("TrainConfig: batch_size must be positive");
    if (!(lr0 > 0.0)) throw Error("TrainConfig: lr0 must be positive");
    if (!(lr_decay > 0.0 && lr_decay < 1.0))
        throw Error("TrainConfig: lr_decay must lie in (0, 1)");
    if (epochs == 0) throw Error("TrainConfig: epochs must be positive");
    if (!(mod_eps >= 0.0)) throw Error("TrainConfig: mod_eps must be nonnegative");
    for (std::size_t i = 1; i < milestones.size(); ++i)
        if (milestones[i] <= milestones[i - 1])
            throw Error("TrainConfig: milestones must be strictly ascending");
    if (filters_per_layer.empty())
        throw Error("TrainConfig: filters_per_layer must be non-empty");
    for (std::size_t k : filters_per_layer)
        if (k == 0) throw Error("TrainConfig: every layer needs at least one filter");
}

std::vector<std::size_t> scaled_milestones(std::size_t total_iterations) {
    if (total_iterations >= 1875) return {500, 1000, 1500};
    if (total_iterations >= 40)
        return {4 * total_iterations / 15, 8 * total_iterations / 15,
                12 * total_iterations / 15};
    return {10, 20, 30};
}

double empirical_loss(const FilterBank& bank, const AveragingOp& a,
                      const SpectralFourier& f, const SignalBatch& batch) {
    const std::size_t n = f.n;
    if (batch.nodes != n || bank.n != n || a.n != n)
        throw Error("empirical_loss: dimension mismatch");
    std::vector<double> az(n), m(n), am(n);
    std::vector<cplx> zhat(n), y(n);
    double loss = 0.0;
    for (std::size_t s = 0; s < batch.samples; ++s)
        for (std::size_t c = 0; c < batch.channels; ++c) {
            const double* z = batch.at(s, c);
            apply_averaging(a, z, az.data());
            for (std::size_t u = 0; u < n; ++u) {
                double r = z[u] - az[u];
                loss += r * r;
            }
            spectrum(f, z, zhat.data());
            for (std::size_t k = 0; k < bank.K; ++k) {
                filter_apply(bank, f, k, zhat.data(), y.data());
                kern::zmod(y.data(), m.data(), n);
                apply_averaging(a, m.data(), am.data());
                loss -= kern::nrm2sq(am.data(), n);
            }
        }
    return loss;
}

CMat loss_gradient(const FilterBank& bank, const AveragingOp& a,
                   const SpectralFourier& f, const SignalBatch& batch,
                   double mod_eps) {
    const std::size_t n = f.n;
    if (batch.nodes != n || bank.n != n || a.n != n)
        throw Error("loss_gradient: dimension mismatch");
    CMat grad(n, bank.K);
    std::vector<double> m(n), am(n), gm(n);
    std::vector<cplx> zhat(n), y(n), q(n);
    for (std::size_t s = 0; s < batch.samples; ++s)
        for (std::size_t c = 0; c < batch.channels; ++c) {
            const double* z = batch.at(s, c);
            double znorm = std::sqrt(kern::nrm2sq(z, n));
            double cutoff = mod_eps * znorm;
            spectrum(f, z, zhat.data());
            for (std::size_t k = 0; k < bank.K; ++k) {
                filter_apply(bank, f, k, zhat.data(), y.data());
                kern::zmod(y.data(), m.data(), n);
                // d(-||A m||^2)/dm = -2 A^T A m; both averaging kinds are
                // symmetric, so two forward applications give A^T A
                apply_averaging(a, m.data(), am.data());
                apply_averaging(a, am.data(), gm.data());
                for (std::size_t u = 0; u < n; ++u)
                    q[u] = m[u] >= cutoff && m[u] > 0.0
                               ? (-2.0 * gm[u] / m[u]) * y[u]
                               : cplx(0, 0);
                cplx* gk = grad.col(k);
                for (std::size_t i = 0; i < n; ++i)
                    gk[i] += std::conj(zhat[i]) *
                             kern::dotc_zz(q.data(), f.columns.col(i), n);
            }
        }
    return grad;
}

FilterBank train_layer(const SignalBatch& inputs, const SpectralFourier& f,
                       const AveragingOp& a, std::size_t K, const TrainConfig& cfg,
                       TrainLog* log) {
    cfg.validate();
    if (K == 0) throw Error("train_layer: K must be at least 1");
    const std::size_t n = f.n;
    const std::size_t S = inputs.samples * inputs.channels;
    if (S == 0 || inputs.nodes != n)
        throw Error("train_layer: empty dataset or dimension mismatch");

    FilterBank bank;
    bank.K = K;
    bank.n = n;
    bank.spectra = CMat(n, K);

    Rng rng(cfg.seed);
    const double sd = std::sqrt(0.5 / double(n)); // complex variance 1/n
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t i = 0; i < n; ++i)
            bank.spectra(i, k) = cplx(sd * rng.normal(), sd * rng.normal());
    bank = project_onto_constraint(std::move(bank), a, f);

    const std::size_t per_epoch = (S + cfg.batch_size - 1) / cfg.batch_size;
    const std::size_t total = cfg.epochs * per_epoch;
    std::vector<std::size_t> milestones =
        cfg.milestones.empty() ? scaled_milestones(total) : cfg.milestones;

    // flat (sample, channel) order, reshuffled each epoch
    std::vector<std::size_t> order(S);
    std::iota(order.begin(), order.end(), 0);

    std::size_t iter = 0;
    SignalBatch mb;
    for (std::size_t e = 0; e < cfg.epochs; ++e) {
        rng.shuffle(order);
        for (std::size_t b = 0; b < per_epoch; ++b, ++iter) {
            std::size_t lo = b * cfg.batch_size;
            std::size_t hi = std::min(lo + cfg.batch_size, S);
            mb = SignalBatch(hi - lo, 1, n);
            for (std::size_t t = lo; t < hi; ++t) {
                std::size_t idx = order[t];
                const double* src =
                    inputs.at(idx / inputs.channels, idx % inputs.channels);
                std::copy(src, src + n, mb.at(t - lo, 0));
            }

            std::size_t drops = 0;
            for (std::size_t ms : milestones)
                if (iter >= ms) ++drops;
            double lr = cfg.lr0 * std::pow(cfg.lr_decay, double(drops));

            double loss = empirical_loss(bank, a, f, mb);
            CMat g = loss_gradient(bank, a, f, mb, cfg.mod_eps);
            for (std::size_t j = 0; j < n * K; ++j)
                bank.spectra.a[j] -= lr * g.a[j];
            bank = project_onto_constraint(std::move(bank), a, f);

            if (log) {
                Budgets bud = compute_budgets(bank, a, f);
                double resid = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    resid = std::max(resid, bud.gamma[i] - bud.lambda[i]);
                log->entries.push_back({iter, loss, lr, resid});
            }
        }
    }

    bank.tightness_eps = measure_tightness(bank, a, f);
    return bank;
}

IGTModel greedy_train(const SignalBatch& data, const SpectralFourier& f,
                      const AveragingOp& a, const TrainConfig& cfg,
                      TrainReport* report) {
    cfg.validate();
    IGTModel model;
    model.fourier = f;
    model.averaging = a;

    SignalBatch cur = data;
    for (std::size_t l = 0; l < cfg.filters_per_layer.size(); ++l) {
        TrainConfig layer_cfg = cfg;
        layer_cfg.seed = Rng::derive(cfg.seed, l);
        TrainLog log;
        FilterBank bank = train_layer(cur, f, a, cfg.filters_per_layer[l],
                                      layer_cfg, report ? &log : nullptr);
        bank.layer_index = int(l) + 1;
        model.banks.push_back(std::move(bank));
        if (report) {
            report->layer_logs.push_back(std::move(log));
            report->profiles.push_back(energy_profile(model, data));
        }
        if (l + 1 < cfg.filters_per_layer.size())
            cur = layer_forward(model.banks.back(), f, cur);
    }
    return model;
}

} // namespace igt
