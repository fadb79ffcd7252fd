#include "dll/inference/likelihood.hpp"

#include <cmath>
#include <limits>

#include "dll/analytic/model.hpp"

namespace dll::inference {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// k log p + (n-k) log(1-p) with the 0 log 0 = 0 convention.
double binomial_log_term(std::int64_t k, std::int64_t n, double p) {
    if (n <= 0) return 0.0;
    if (p <= 0.0) return k == 0 ? 0.0 : kNegInf;
    if (p >= 1.0) return k == n ? 0.0 : kNegInf;
    return static_cast<double>(k) * std::log(p) +
           static_cast<double>(n - k) * std::log1p(-p);
}

}  // namespace

PriorSpec default_priors() {
    PriorSpec priors;
    priors.gamma_mean = 1.0 / 71.0e-6;
    priors.gamma_sd = priors.gamma_mean / 71.0;
    return priors;
}

std::vector<std::string> validate(const PriorSpec& p) {
    std::vector<std::string> warnings;
    if (p.kappa_dd_lo < 0 || p.kappa0_lo < 0) warnings.push_back("uniform prior lower bound negative");
    if (p.kappa_dd_hi <= p.kappa_dd_lo || p.kappa0_hi <= p.kappa0_lo)
        warnings.push_back("uniform prior bounds inverted");
    if (p.gamma_sd <= 0) warnings.push_back("gamma prior sd must be positive");
    return warnings;
}

double log_likelihood(const Theta& theta, const SurvivalCurves& data, double t_m) {
    if (theta.kappa_dd < 0 || theta.kappa0 < 0 || theta.gamma < 0) return kNegInf;
    const double kappa = theta.kappa_dd + theta.kappa0;
    const double xi =
        analytic::detection_probability(theta.kappa_dd, theta.kappa0, theta.gamma, t_m);
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double t = data.times[i];
        total += binomial_log_term(data.k_uncond[i], data.n_uncond[i],
                                   analytic::unconditional_survival(t, kappa));
        total += binomial_log_term(data.k_cond[i], data.n_cond[i],
                                   analytic::conditional_survival(t, kappa, xi));
        if (total == kNegInf) break;
    }
    return total;
}

double log_prior(const Theta& theta, const PriorSpec& priors) {
    if (theta.kappa_dd < priors.kappa_dd_lo || theta.kappa_dd > priors.kappa_dd_hi) return kNegInf;
    if (theta.kappa0 < priors.kappa0_lo || theta.kappa0 > priors.kappa0_hi) return kNegInf;
    if (theta.gamma < 0) return kNegInf;
    const double z = (theta.gamma - priors.gamma_mean) / priors.gamma_sd;
    return -0.5 * z * z;
}

}  // namespace dll::inference
