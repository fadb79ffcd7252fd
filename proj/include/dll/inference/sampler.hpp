#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dll/inference/likelihood.hpp"

namespace dll::inference {

struct SamplerSettings {
    int n_chains = 4;
    int n_tune = 2000;   ///< adaptation steps, discarded
    int n_draws = 3000;  ///< kept draws per chain
    std::uint64_t seed = 0;
    int threads = 0;     ///< 0 = one thread per chain up to hardware limit
};

struct Diagnostics {
    std::array<double, 3> rhat{};  ///< split R-hat per parameter (kappa_dd, kappa0, gamma)
    std::array<double, 3> ess{};   ///< effective sample size per parameter
    double acceptance_rate = 0.0;  ///< post-tuning average
    bool converged = false;        ///< rhat < 1.01 and ess > 400 for every parameter
};

struct Posterior {
    std::vector<Theta> samples;               ///< pooled post-tuning draws
    std::vector<std::vector<Theta>> chains;   ///< per-chain draws
    int n_chains = 0;
    Diagnostics diagnostics;
};

/// Adaptive random-walk Metropolis on (kappa_dd, kappa0, gamma): independent
/// chains with proposal covariance adapted during the tuning phase from the
/// chain history (scaled empirical covariance plus an acceptance-rate-driven
/// step size), frozen afterwards. Empty data samples the prior. The result
/// is returned regardless of convergence; the diagnostics carry the verdict.
Posterior sample_posterior(const SurvivalCurves& data, const PriorSpec& priors,
                           const SamplerSettings& settings, double t_m);

/// Split R-hat of one parameter across chains (each chain halved).
double split_rhat(const std::vector<std::vector<double>>& chains);

/// Multi-chain effective sample size (Geyer initial-positive-sequence
/// truncation of the combined autocorrelation).
double effective_sample_size(const std::vector<std::vector<double>>& chains);

}  // namespace dll::inference
