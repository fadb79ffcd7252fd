#pragma once

#include <span>
#include <vector>

#include "dll/core/params.hpp"

namespace dll::analytic {

/// Frequency-noise PSD sample, angular convention (see core/params.hpp).
struct PsdValue {
    double value = 0.0;         ///< PSD magnitude
    double at_frequency = 0.0;  ///< angular frequency the value refers to, rad/s
};

/// Dressed-dephasing photon loss rate 4 (g/delta)^2 S, s^-1.
/// Throws std::domain_error when delta <= 0.
double dressed_dephasing_rate(double g, double delta, const PsdValue& s);

/// Probability that a photon lost during one measurement interval leaves a
/// detectable qubit excitation at the interval's closing readout:
///   xi = kappa_dd / (gamma - kappa) * (e^(-kappa T) - e^(-gamma T)) / (1 - e^(-kappa T)),
/// kappa = kappa_dd + kappa0. The gamma == kappa point is a removable
/// singularity and evaluates to the analytic limit.
double detection_probability(double kappa_dd, double kappa0, double gamma, double t_m);

/// Post-selected photon survival e^(-kt) / (e^(-kt) + (1-xi)(1-e^(-kt))).
double conditional_survival(double t, double kappa, double xi);

/// Unconditional photon survival e^(-kappa t).
double unconditional_survival(double t, double kappa);

/// Injected two-tone PSD S(w) = dw1 dw2 T sinc^2((w - beat) T / 2) with the
/// unnormalized sinc(x) = sin(x)/x, so the peak sits at the beat frequency
/// with value dw1 dw2 T and first zeros at beat +- 2 pi / T.
PsdValue injected_psd(const NoiseInjection& noise, double omega);

/// Peak of the injected PSD, i.e. the Stark-shift calibration value
/// S = dw1 dw2 T at the beat frequency.
PsdValue stark_calibrated_psd(const NoiseInjection& noise);

struct PredictedCurves {
    std::vector<double> p1;   ///< unconditional survival per time
    std::vector<double> p1g;  ///< post-selected survival per time
};

/// Model curves for a device at a given dressed-dephasing rate, using
/// kappa = kappa0 + kappa_dd and xi from detection_probability.
PredictedCurves predict_curves(const DeviceParams& params, double kappa_dd,
                               std::span<const double> times);

}  // namespace dll::analytic
