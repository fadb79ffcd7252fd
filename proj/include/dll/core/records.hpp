#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace dll {

enum class LossChannel { intrinsic, dressed };

/// One state-changing event inside a shot, kept only for debugging.
struct QubitEvent {
    enum class Kind { thermal_up, relax, loss_intrinsic, loss_dressed, reverse_transfer };
    double time = 0.0;
    Kind kind{};
};

/// Complete log of a single protocol shot.
struct ShotRecord {
    std::optional<double> loss_time;            ///< first photon loss
    std::optional<LossChannel> loss_channel;    ///< channel of the first loss
    std::vector<std::uint8_t> measurement_outcomes;  ///< 0 = g, 1 = e; ends at the discard
    std::optional<std::size_t> discarded_at;    ///< index of the first excited readout
    std::vector<QubitEvent> truth_qubit_trace;  ///< filled only on request
    std::vector<std::uint8_t> photon_at_sample; ///< photon present at each sample time
};

/// Aggregated binomial counts versus time. n_uncond counts every shot;
/// n_cond counts shots whose every readout up to that time returned ground
/// (so n_cond == n_retained at each point).
struct SurvivalCurves {
    std::vector<double> times;
    std::vector<std::int64_t> n_uncond;
    std::vector<std::int64_t> k_uncond;
    std::vector<std::int64_t> n_cond;
    std::vector<std::int64_t> k_cond;
    std::vector<std::int64_t> n_retained;

    std::size_t size() const { return times.size(); }
};

/// Throws std::logic_error when a structural invariant is violated
/// (count bounds, retained monotonicity, size mismatches).
void check_invariants(const SurvivalCurves& curves);

}  // namespace dll
