#include "dll/analytic/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dll::analytic {

namespace {

// Probabilities are clamped to [0,1]; an excursion beyond the floating-point
// tolerance indicates a bug upstream rather than roundoff.
double clamp01(double x) {
    constexpr double tol = 1e-12;
    if (x < -tol || x > 1.0 + tol)
        throw std::logic_error("probability outside [0,1] beyond roundoff tolerance");
    if (x < 0.0) return 0.0;
    if (x > 1.0) return 1.0;
    return x;
}

}  // namespace

double dressed_dephasing_rate(double g, double delta, const PsdValue& s) {
    if (delta <= 0.0) throw std::domain_error("dressed_dephasing_rate: delta must be positive");
    const double ratio = g / delta;
    return 4.0 * ratio * ratio * s.value;
}

double detection_probability(double kappa_dd, double kappa0, double gamma, double t_m) {
    if (t_m <= 0.0) throw std::domain_error("detection_probability: t_m must be positive");
    const double kappa = kappa_dd + kappa0;
    if (kappa_dd <= 0.0 || kappa <= 0.0) return 0.0;

    const double a = kappa * t_m;
    const double b = gamma * t_m;
    const double d = b - a;  // (gamma - kappa) t_m
    // (e^-a - e^-b) / (gamma - kappa) = t_m e^-b expm1(d)/d; the d -> 0 limit
    // removes the gamma == kappa singularity. For large |d| the factored form
    // overflows, so evaluate the difference directly (no cancellation there).
    double numerator_over_rate;  // (e^-a - e^-b) / (gamma - kappa)
    if (std::abs(d) < 0.5) {
        const double phi = d == 0.0 ? 1.0 : std::expm1(d) / d;
        numerator_over_rate = t_m * std::exp(-b) * phi;
    } else {
        numerator_over_rate = (std::exp(-a) - std::exp(-b)) / (gamma - kappa);
    }
    const double denom = -std::expm1(-a);  // 1 - e^(-kappa t_m)
    return clamp01(kappa_dd * numerator_over_rate / denom);
}

double conditional_survival(double t, double kappa, double xi) {
    if (t < 0.0) throw std::domain_error("conditional_survival: t must be non-negative");
    if (kappa < 0.0) throw std::domain_error("conditional_survival: kappa must be non-negative");
    if (xi < 0.0 || xi > 1.0) throw std::domain_error("conditional_survival: xi must be in [0,1]");
    if (xi == 1.0) return 1.0;  // every loss detected and discarded
    // e^-kt / (e^-kt + (1-xi)(1-e^-kt)) rewritten to stay finite for large kt
    return clamp01(1.0 / (1.0 + (1.0 - xi) * std::expm1(kappa * t)));
}

double unconditional_survival(double t, double kappa) {
    if (t < 0.0) throw std::domain_error("unconditional_survival: t must be non-negative");
    if (kappa < 0.0) throw std::domain_error("unconditional_survival: kappa must be non-negative");
    return clamp01(std::exp(-kappa * t));
}

PsdValue injected_psd(const NoiseInjection& noise, double omega) {
    const double x = (omega - noise.beat) * noise.t_rand / 2.0;
    const double sinc = x == 0.0 ? 1.0 : std::sin(x) / x;
    return PsdValue{noise.dw1 * noise.dw2 * noise.t_rand * sinc * sinc, omega};
}

PsdValue stark_calibrated_psd(const NoiseInjection& noise) {
    return injected_psd(noise, noise.beat);
}

PredictedCurves predict_curves(const DeviceParams& params, double kappa_dd,
                               std::span<const double> times) {
    const double kappa = params.kappa0 + kappa_dd;
    const double xi = detection_probability(kappa_dd, params.kappa0, params.gamma, params.t_m);
    PredictedCurves curves;
    curves.p1.reserve(times.size());
    curves.p1g.reserve(times.size());
    for (double t : times) {
        curves.p1.push_back(unconditional_survival(t, kappa));
        curves.p1g.push_back(conditional_survival(t, kappa, xi));
    }
    return curves;
}

}  // namespace dll::analytic
