#include "dll/core/params.hpp"

#include <algorithm>
#include <cmath>

namespace dll {

double hz_to_angular(double f_hz) { return f_hz * kTwoPi; }
double angular_to_hz(double omega) { return omega / kTwoPi; }

DeviceParams paper_device_params() {
    DeviceParams p;
    const double t1_cavity = 11.3e-3;
    const double t1_qubit = 71.0e-6;
    const double t2_qubit = 35.0e-6;
    p.kappa0 = 1.0 / t1_cavity;
    p.gamma = 1.0 / t1_qubit;
    p.n_th = 0.025;
    p.gamma_phi = 1.0 / t2_qubit - 1.0 / (2.0 * t1_qubit);
    p.g = hz_to_angular(6.4e6);
    p.delta = hz_to_angular(508e6);
    p.t_m = 4e-6;
    return p;
}

ReadoutModel paper_readout_model() { return ReadoutModel{0.0015, 0.13}; }

std::vector<std::string> validate(const DeviceParams& p) {
    std::vector<std::string> warnings;
    if (p.kappa0 < 0 || p.gamma < 0 || p.gamma_phi < 0) warnings.push_back("negative rate");
    if (p.n_th < 0 || p.n_th > 1) warnings.push_back("n_th out of range");
    if (p.g < 0) warnings.push_back("negative coupling");
    if (p.delta <= 0) warnings.push_back("non-positive detuning");
    else if (p.delta < 10.0 * p.g) warnings.push_back("dispersive condition weak");
    if (p.t_m <= 0) warnings.push_back("non-positive measurement interval");
    return warnings;
}

std::vector<std::string> validate(const NoiseInjection& n) {
    std::vector<std::string> warnings;
    if (n.dw1 < 0 || n.dw2 < 0) warnings.push_back("negative Stark shift");
    if (n.t_rand <= 0) warnings.push_back("non-positive randomization interval");
    return warnings;
}

std::vector<std::string> validate(const ReadoutModel& r) {
    std::vector<std::string> warnings;
    if (r.p_false_pos < 0 || r.p_false_pos > 1) warnings.push_back("p_false_pos out of range");
    if (r.p_false_neg < 0 || r.p_false_neg > 1) warnings.push_back("p_false_neg out of range");
    return warnings;
}

std::vector<std::string> validate(const ProtocolConfig& c, double t_m) {
    std::vector<std::string> warnings;
    if (c.total_time <= 0) warnings.push_back("non-positive total_time");
    if (c.n_shots < 1) warnings.push_back("n_shots must be at least 1");
    double prev = 0.0;
    for (double t : c.sample_times) {
        if (t <= prev) {
            warnings.push_back("sample_times not strictly increasing");
            break;
        }
        prev = t;
    }
    if (!c.sample_times.empty() && c.sample_times.back() > c.total_time * (1 + 1e-12))
        warnings.push_back("sample time exceeds total_time");
    if (t_m > 0) {
        for (double t : c.sample_times) {
            const double k = t / t_m;
            if (std::abs(k - std::llround(k)) > 1e-6) {
                warnings.push_back("sample time not a multiple of T_m");
                break;
            }
        }
    }
    return warnings;
}

std::vector<double> default_sample_grid(double t_m, double t_max, int points) {
    std::vector<double> grid;
    if (t_m <= 0 || t_max < t_m || points < 1) return grid;
    const auto k_max = static_cast<long long>(t_max / t_m + 1e-9);
    if (k_max < 1) return grid;
    const double log_span = std::log(static_cast<double>(k_max));
    long long prev = 0;
    for (int i = 0; i < points; ++i) {
        const double f = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
        auto k = static_cast<long long>(std::llround(std::exp(f * log_span)));
        k = std::max(k, prev + 1);  // keep the grid strictly increasing
        if (k > k_max) break;
        grid.push_back(static_cast<double>(k) * t_m);
        prev = k;
    }
    return grid;
}

}  // namespace dll
