#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dll/core/params.hpp"
#include "dll/core/records.hpp"

namespace dll::sim {

/// Everything one protocol run needs.
struct SimEngineConfig {
    DeviceParams params;
    ReadoutModel readout;
    ProtocolConfig protocol;
    double kappa_dd = 0.0;
};

std::vector<std::string> validate(const SimEngineConfig& cfg);

struct ShotOptions {
    bool record_outcomes = true;  ///< keep the per-boundary readout bits
    bool record_events = false;   ///< keep the qubit truth trace
};

/// One complete shot, reproducible as a pure function of
/// (protocol.seed, shot_index) at any degree of parallelism.
///
/// The dynamics are a continuous-time jump process on (qubit, photon),
/// simulated with competing exponential clocks resampled at every
/// state-changing event:
///   - photon present, qubit ground:  intrinsic loss kappa0, dressed loss
///     kappa_dd (photon out, qubit excited), thermal excitation gamma n_th
///   - photon present, qubit excited: intrinsic loss kappa0, relaxation gamma
///   - photon absent,  qubit excited: relaxation gamma and, when
///     include_reverse_dd is set, the reverse transfer kappa_dd
///     (qubit ground, photon restored)
///   - photon absent,  qubit ground:  thermal excitation gamma n_th
/// At each interval boundary the qubit is read out with the ReadoutModel
/// error probabilities; readout does not alter the qubit or the photon
/// (an erroneous read is a misreport, not a state change). Outcome
/// recording stops at the first excited readout, which marks the shot
/// discarded for post-selection; the underlying dynamics continue so
/// unconditional statistics stay unbiased.
ShotRecord simulate_shot(const SimEngineConfig& cfg, std::uint64_t shot_index,
                         const ShotOptions& opts = {});

struct RunOptions {
    int threads = 0;  ///< worker threads; 0 = DLL_THREADS env or hardware
};

/// Per-shot tallies used by validation checks.
struct ExperimentStats {
    std::int64_t losses = 0;          ///< shots whose first loss happened before the horizon
    std::int64_t dressed_losses = 0;  ///< ... of which via the dressed channel
    double exposure = 0.0;            ///< sum of min(first loss time, horizon)
    std::int64_t dressed_evaluated = 0;  ///< dressed first losses with no prior discard
    std::int64_t dressed_detected = 0;   ///< ... read out excited at the closing boundary
};

/// Aggregates simulate_shot over protocol.n_shots. Every shot contributes to
/// every sample time: unconditional counts use the true photon presence,
/// conditional counts the shots with an all-ground readout record up to that
/// time. Deterministic for a fixed seed regardless of thread count.
SurvivalCurves run_experiment(const SimEngineConfig& cfg, const RunOptions& opts = {},
                              ExperimentStats* stats = nullptr);

/// Excited-state fraction at each time from fresh shots with no mid-circuit
/// measurements and a single terminal readout (errors applied).
std::vector<double> simulate_population_trace(const SimEngineConfig& cfg,
                                              std::span<const double> times,
                                              const RunOptions& opts = {});

int resolve_thread_count(int requested);

}  // namespace dll::sim
