#include "dll/inference/sampler.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "dll/core/rng.hpp"

namespace dll::inference {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double chain_mean(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double chain_variance(const std::vector<double>& x, double mean) {
    if (x.size() < 2) return 0.0;
    double s = 0.0;
    for (double v : x) s += (v - mean) * (v - mean);
    return s / static_cast<double>(x.size() - 1);
}

// Biased (1/n) autocovariance at a given lag.
double autocovariance(const std::vector<double>& x, double mean, std::size_t lag) {
    const std::size_t n = x.size();
    double s = 0.0;
    for (std::size_t i = 0; i + lag < n; ++i) s += (x[i] - mean) * (x[i + lag] - mean);
    return s / static_cast<double>(n);
}

struct PooledVariance {
    double w = 0.0;         // mean within-chain variance
    double var_plus = 0.0;  // pooled variance estimate
};

PooledVariance pooled_variance(const std::vector<std::vector<double>>& chains,
                               const std::vector<double>& means) {
    const double n = static_cast<double>(chains.front().size());
    const double m = static_cast<double>(chains.size());
    double w = 0.0;
    for (std::size_t c = 0; c < chains.size(); ++c) w += chain_variance(chains[c], means[c]);
    w /= m;
    double grand = 0.0;
    for (double mu : means) grand += mu;
    grand /= m;
    double b_over_n = 0.0;
    if (chains.size() > 1) {
        for (double mu : means) b_over_n += (mu - grand) * (mu - grand);
        b_over_n /= (m - 1.0);
    }
    return {w, (n - 1.0) / n * w + b_over_n};
}

struct ChainState {
    Theta theta;
    double logp = kNegInf;
};

Eigen::Vector3d to_vec(const Theta& t) { return {t.kappa_dd, t.kappa0, t.gamma}; }
Theta to_theta(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }

Eigen::Matrix3d safe_cholesky(Eigen::Matrix3d cov) {
    const double jitter = std::max(cov.trace() * 1e-9, 1e-12);
    for (int tries = 0; tries < 8; ++tries) {
        Eigen::LLT<Eigen::Matrix3d> llt(cov);
        if (llt.info() == Eigen::Success) return llt.matrixL();
        cov += jitter * std::pow(10.0, tries) * Eigen::Matrix3d::Identity();
    }
    return cov.diagonal().cwiseMax(1e-12).cwiseSqrt().asDiagonal();
}

}  // namespace

double split_rhat(const std::vector<std::vector<double>>& chains) {
    std::vector<std::vector<double>> halves;
    for (const auto& chain : chains) {
        const std::size_t half = chain.size() / 2;
        if (half < 2) continue;
        halves.emplace_back(chain.begin(), chain.begin() + static_cast<long>(half));
        halves.emplace_back(chain.end() - static_cast<long>(half), chain.end());
    }
    if (halves.size() < 2) return 1.0;
    std::vector<double> means;
    means.reserve(halves.size());
    for (const auto& h : halves) means.push_back(chain_mean(h));
    const auto pooled = pooled_variance(halves, means);
    if (pooled.w <= 0.0) return 1.0;
    return std::sqrt(pooled.var_plus / pooled.w);
}

double effective_sample_size(const std::vector<std::vector<double>>& chains) {
    if (chains.empty() || chains.front().size() < 4) return 0.0;
    const std::size_t n = chains.front().size();
    const std::size_t m = chains.size();
    std::vector<double> means;
    means.reserve(m);
    for (const auto& c : chains) means.push_back(chain_mean(c));
    const auto pooled = pooled_variance(chains, means);
    if (pooled.var_plus <= 0.0) return 0.0;

    auto rho = [&](std::size_t lag) {
        double g = 0.0;
        for (std::size_t c = 0; c < m; ++c) g += autocovariance(chains[c], means[c], lag);
        g /= static_cast<double>(m);
        return 1.0 - (pooled.w - g) / pooled.var_plus;
    };

    // Geyer pairing: accumulate rho_{2k} + rho_{2k+1} while positive and
    // non-increasing.
    double tau = -1.0;
    double prev_pair = std::numeric_limits<double>::max();
    for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
        double pair = rho(2 * k) + rho(2 * k + 1);
        if (pair <= 0.0) break;
        pair = std::min(pair, prev_pair);
        prev_pair = pair;
        tau += 2.0 * pair;
    }
    tau = std::max(tau, 1.0 / std::numeric_limits<double>::max());
    return static_cast<double>(n * m) / tau;
}

Posterior sample_posterior(const SurvivalCurves& data, const PriorSpec& priors,
                           const SamplerSettings& settings, double t_m) {
    const int n_chains = std::max(settings.n_chains, 1);
    const int n_tune = std::max(settings.n_tune, 0);
    const int n_draws = std::max(settings.n_draws, 1);

    auto target = [&](const Theta& theta) {
        const double lp = log_prior(theta, priors);
        if (lp == kNegInf) return kNegInf;
        if (data.size() == 0) return lp;
        return lp + log_likelihood(theta, data, t_m);
    };

    // Crude total-rate estimate from the unconditional curve, used only to
    // spread the chain starting points.
    double kappa_hat = 0.0;
    if (data.size() > 0) {
        double sty = 0.0, stt = 0.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            if (data.n_uncond[i] <= 0) continue;
            const double frac =
                std::max(0.5, static_cast<double>(data.k_uncond[i])) /
                static_cast<double>(data.n_uncond[i]);
            const double y = -std::log(std::min(frac, 1.0));
            sty += data.times[i] * y;
            stt += data.times[i] * data.times[i];
        }
        if (stt > 0) kappa_hat = sty / stt;
        kappa_hat = std::clamp(kappa_hat, 0.0, priors.kappa0_hi);
    }

    Posterior posterior;
    posterior.n_chains = n_chains;
    posterior.chains.assign(static_cast<std::size_t>(n_chains), {});

    std::vector<double> acceptance(static_cast<std::size_t>(n_chains), 0.0);

    auto run_chain = [&](int chain_id) {
        RngStream rng(settings.seed, RngStream::Domain::chain,
                      static_cast<std::uint64_t>(chain_id));
        ChainState state;
        if (data.size() == 0) {
            state.theta.kappa_dd =
                priors.kappa_dd_lo + rng.uniform() * (priors.kappa_dd_hi - priors.kappa_dd_lo);
            state.theta.kappa0 =
                priors.kappa0_lo + rng.uniform() * (priors.kappa0_hi - priors.kappa0_lo);
        } else {
            const double f = (chain_id + 0.5) / n_chains;
            state.theta.kappa_dd =
                std::clamp(f * kappa_hat, priors.kappa_dd_lo, priors.kappa_dd_hi);
            state.theta.kappa0 =
                std::clamp(kappa_hat - state.theta.kappa_dd, priors.kappa0_lo, priors.kappa0_hi);
        }
        state.theta.gamma =
            std::max(priors.gamma_mean + priors.gamma_sd * rng.normal(), priors.gamma_sd * 1e-3);
        state.logp = target(state.theta);

        Eigen::Vector3d scales(std::max(kappa_hat, 10.0) * 0.05,
                               std::max(kappa_hat, 10.0) * 0.05, priors.gamma_sd);
        if (data.size() == 0) {
            scales[0] = (priors.kappa_dd_hi - priors.kappa_dd_lo) * 0.1;
            scales[1] = (priors.kappa0_hi - priors.kappa0_lo) * 0.1;
        }
        Eigen::Matrix3d chol = scales.asDiagonal();
        double step = 2.38 / std::sqrt(3.0);

        std::vector<Eigen::Vector3d> history;
        history.reserve(static_cast<std::size_t>(n_tune));
        int window_accepts = 0;
        int window_size = 0;

        auto metropolis_step = [&](bool tuning) {
            const Eigen::Vector3d z(rng.normal(), rng.normal(), rng.normal());
            const Eigen::Vector3d proposal_vec = to_vec(state.theta) + step * (chol * z);
            const Theta proposal = to_theta(proposal_vec);
            const double logp = target(proposal);
            bool accepted = false;
            if (logp > state.logp || std::log(rng.uniform_pos()) < logp - state.logp) {
                state.theta = proposal;
                state.logp = logp;
                accepted = true;
            }
            if (tuning) {
                window_accepts += accepted ? 1 : 0;
                ++window_size;
            }
            return accepted;
        };

        for (int i = 0; i < n_tune; ++i) {
            metropolis_step(true);
            history.push_back(to_vec(state.theta));
            if (window_size >= 50) {
                const double rate = static_cast<double>(window_accepts) / window_size;
                step = std::clamp(step * std::exp((rate - 0.234) * 0.66), 1e-4, 50.0);
                window_accepts = 0;
                window_size = 0;
            }
            if (i >= 200 && (i + 1) % 100 == 0) {
                // empirical covariance of the most recent half of the history
                const std::size_t begin = history.size() / 2;
                const std::size_t count = history.size() - begin;
                Eigen::Vector3d mean = Eigen::Vector3d::Zero();
                for (std::size_t j = begin; j < history.size(); ++j) mean += history[j];
                mean /= static_cast<double>(count);
                Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
                for (std::size_t j = begin; j < history.size(); ++j) {
                    const Eigen::Vector3d d = history[j] - mean;
                    cov += d * d.transpose();
                }
                cov /= static_cast<double>(std::max<std::size_t>(count - 1, 1));
                cov += (scales.cwiseProduct(scales) * 1e-6).asDiagonal();
                chol = safe_cholesky(cov);
            }
        }

        auto& draws = posterior.chains[static_cast<std::size_t>(chain_id)];
        draws.reserve(static_cast<std::size_t>(n_draws));
        int accepts = 0;
        for (int i = 0; i < n_draws; ++i) {
            accepts += metropolis_step(false) ? 1 : 0;
            draws.push_back(state.theta);
        }
        acceptance[static_cast<std::size_t>(chain_id)] =
            static_cast<double>(accepts) / n_draws;
    };

    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    const int n_workers =
        std::min(n_chains, settings.threads > 0 ? settings.threads : hw);
    if (n_workers <= 1) {
        for (int c = 0; c < n_chains; ++c) run_chain(c);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&, w] {
                for (int c = w; c < n_chains; c += n_workers) run_chain(c);
            });
        }
        for (auto& th : pool) th.join();
    }

    for (const auto& chain : posterior.chains)
        posterior.samples.insert(posterior.samples.end(), chain.begin(), chain.end());

    // diagnostics per parameter
    auto extract = [&](int param) {
        std::vector<std::vector<double>> out;
        out.reserve(posterior.chains.size());
        for (const auto& chain : posterior.chains) {
            std::vector<double> vals;
            vals.reserve(chain.size());
            for (const Theta& t : chain)
                vals.push_back(param == 0 ? t.kappa_dd : param == 1 ? t.kappa0 : t.gamma);
            out.push_back(std::move(vals));
        }
        return out;
    };
    for (int p = 0; p < 3; ++p) {
        const auto series = extract(p);
        posterior.diagnostics.rhat[static_cast<std::size_t>(p)] = split_rhat(series);
        posterior.diagnostics.ess[static_cast<std::size_t>(p)] = effective_sample_size(series);
    }
    double acc = 0.0;
    for (double a : acceptance) acc += a;
    posterior.diagnostics.acceptance_rate = acc / n_chains;
    bool converged = true;
    for (int p = 0; p < 3; ++p) {
        converged = converged && posterior.diagnostics.rhat[static_cast<std::size_t>(p)] < 1.01 &&
                    posterior.diagnostics.ess[static_cast<std::size_t>(p)] > 400.0;
    }
    posterior.diagnostics.converged = converged;
    return posterior;
}

}  // namespace dll::inference
