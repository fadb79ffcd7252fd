#pragma once

#include <string>
#include <vector>

#include "dll/core/records.hpp"

namespace dll::inference {

/// Uniform priors on the two loss rates, normal prior on the qubit decay
/// rate (centered on an independent T1 measurement).
struct PriorSpec {
    double kappa_dd_lo = 0.0, kappa_dd_hi = 1e4;
    double kappa0_lo = 0.0, kappa0_hi = 1e4;
    double gamma_mean = 0.0, gamma_sd = 1.0;
};

/// Defaults from the measured device: gamma ~ N(1/71 us, mean/71).
PriorSpec default_priors();

std::vector<std::string> validate(const PriorSpec& priors);

struct Theta {
    double kappa_dd = 0.0;
    double kappa0 = 0.0;
    double gamma = 0.0;
};

/// Joint binomial log likelihood of the paired survival curves:
/// sum over times of log Binom(k_uncond | n_uncond, e^(-kappa t))
/// + log Binom(k_cond | n_cond, P1g(t)), with kappa = kappa_dd + kappa0 and
/// P1g from the conditional-survival model. Binomial coefficients are
/// constant in theta and dropped. Data impossible under the model (k > 0 at
/// p = 0, or k < n at p = 1) yields -inf.
double log_likelihood(const Theta& theta, const SurvivalCurves& data, double t_m);

/// Log prior density up to a constant; -inf outside the support.
double log_prior(const Theta& theta, const PriorSpec& priors);

}  // namespace dll::inference
