#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dll {

// Unit convention: every frequency-like quantity (g, delta, Stark shifts,
// PSD arguments) is stored in angular units (rad/s). Config files accept
// cyclic frequencies under an explicit {"units": "Hz"} tag and the I/O layer
// multiplies by 2*pi on the way in. Noise PSDs follow the same convention:
// S = dw1 * dw2 * T with angular dw_i, which reproduces the printed
// "Hz^2/Hz" values when the Stark shifts are entered as cyclic frequencies,
// i.e. S = (2*pi)^2 * df1 * df2 * T.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

double hz_to_angular(double f_hz);
double angular_to_hz(double omega);

/// Physical rates and couplings of the cavity-qubit system.
struct DeviceParams {
    double kappa0 = 0.0;     ///< intrinsic cavity loss rate 1/T1c, s^-1
    double gamma = 0.0;      ///< qubit relaxation rate 1/T1, s^-1
    double n_th = 0.0;       ///< qubit thermal population, dimensionless
    double gamma_phi = 0.0;  ///< qubit pure dephasing rate, s^-1
    double g = 0.0;          ///< qubit-cavity coupling, rad/s
    double delta = 0.0;      ///< qubit-cavity detuning, rad/s
    double t_m = 0.0;        ///< mid-circuit measurement interval, s
};

/// Measured device values (cavity T1c = 11.3 ms, qubit T1 = 71 us,
/// T2 = 35 us, n_th = 2.5%, g/2pi = 6.4 MHz, detuning/2pi = 508 MHz,
/// T_m = 4 us). gamma_phi is derived from 1/T2 = 1/(2 T1) + gamma_phi.
DeviceParams paper_device_params();

/// Named warnings for violated invariants; empty when all hold.
std::vector<std::string> validate(const DeviceParams& p);

/// Two-tone injected-noise description. Amplitudes enter only through the
/// per-tone Stark shifts dw_i (dw_i proportional to amplitude squared).
struct NoiseInjection {
    double dw1 = 0.0;     ///< Stark shift of tone 1, rad/s
    double dw2 = 0.0;     ///< Stark shift of tone 2, rad/s
    double t_rand = 0.0;  ///< phase-randomization interval, s
    double beat = 0.0;    ///< tone difference frequency, rad/s
};

std::vector<std::string> validate(const NoiseInjection& n);

/// Single-shot qubit readout error probabilities.
struct ReadoutModel {
    double p_false_pos = 0.0;  ///< ground state read as excited
    double p_false_neg = 0.0;  ///< excited state read as ground
};

/// Readout errors quoted for the device: false positives bounded above by
/// 0.15% (stored as the bound) and false negatives 13%.
ReadoutModel paper_readout_model();

std::vector<std::string> validate(const ReadoutModel& r);

/// Shot-level protocol description.
struct ProtocolConfig {
    double total_time = 0.0;           ///< full evolution span, s
    std::vector<double> sample_times;  ///< multiples of t_m, strictly increasing
    std::int64_t n_shots = 0;
    std::uint64_t seed = 0;
    bool include_reverse_dd = true;
    bool post_select_init = true;
};

std::vector<std::string> validate(const ProtocolConfig& c, double t_m);

/// `points` distinct multiples of t_m, approximately log-spaced between t_m
/// and t_max. Used as the default sampling grid when a config omits
/// sample_times.
std::vector<double> default_sample_grid(double t_m, double t_max, int points = 30);

}  // namespace dll
