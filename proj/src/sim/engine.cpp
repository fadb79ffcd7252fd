#include "dll/sim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "dll/core/errors.hpp"
#include "dll/core/rng.hpp"

namespace dll::sim {

namespace {

struct ShotState {
    bool photon = true;
    bool excited = false;
    double t = 0.0;
};

enum Channel : int { loss_intrinsic = 0, loss_dressed, thermal_up, relax, reverse_transfer, n_channels };

struct EventSink {
    ShotRecord* record = nullptr;
    bool events = false;

    void loss(double t, LossChannel channel) const {
        if (!record) return;
        if (!record->loss_time) {
            record->loss_time = t;
            record->loss_channel = channel;
        }
        if (events)
            record->truth_qubit_trace.push_back(
                {t, channel == LossChannel::dressed ? QubitEvent::Kind::loss_dressed
                                                    : QubitEvent::Kind::loss_intrinsic});
    }
    void qubit(double t, QubitEvent::Kind kind) const {
        if (record && events) record->truth_qubit_trace.push_back({t, kind});
    }
};

// Advances the jump process to t_target, applying every event on the way.
void advance(ShotState& s, double t_target, const SimEngineConfig& cfg, RngStream& rng,
             const EventSink& sink) {
    const double kappa0 = cfg.params.kappa0;
    const double kappa_dd = cfg.kappa_dd;
    const double gamma = cfg.params.gamma;
    const double rate_up = cfg.params.gamma * cfg.params.n_th;
    const bool reverse = cfg.protocol.include_reverse_dd;

    while (true) {
        double rates[n_channels] = {};
        if (s.photon) {
            rates[loss_intrinsic] = kappa0;
            if (!s.excited) rates[loss_dressed] = kappa_dd;
        } else if (s.excited && reverse) {
            rates[reverse_transfer] = kappa_dd;
        }
        rates[thermal_up] = s.excited ? 0.0 : rate_up;
        rates[relax] = s.excited ? gamma : 0.0;

        double total = 0.0;
        for (double r : rates) total += r;
        if (total <= 0.0) break;

        const double dt = rng.exponential(total);
        if (s.t + dt >= t_target) break;
        s.t += dt;

        const double u = rng.uniform() * total;
        int pick = -1;
        double acc = 0.0;
        for (int i = 0; i < n_channels; ++i) {
            if (rates[i] <= 0.0) continue;
            acc += rates[i];
            pick = i;  // falls back to the last active channel on fp residue
            if (u < acc) break;
        }
        switch (pick) {
            case loss_intrinsic:
                s.photon = false;
                sink.loss(s.t, LossChannel::intrinsic);
                break;
            case loss_dressed:
                s.photon = false;
                s.excited = true;
                sink.loss(s.t, LossChannel::dressed);
                break;
            case thermal_up:
                s.excited = true;
                sink.qubit(s.t, QubitEvent::Kind::thermal_up);
                break;
            case relax:
                s.excited = false;
                sink.qubit(s.t, QubitEvent::Kind::relax);
                break;
            case reverse_transfer:
                s.photon = true;
                s.excited = false;
                sink.qubit(s.t, QubitEvent::Kind::reverse_transfer);
                break;
            default:
                break;
        }
    }
    s.t = t_target;
}

std::vector<long long> sample_boundary_indices(const SimEngineConfig& cfg) {
    std::vector<long long> idx;
    idx.reserve(cfg.protocol.sample_times.size());
    for (double t : cfg.protocol.sample_times) {
        const double k = t / cfg.params.t_m;
        const auto rounded = std::llround(k);
        if (rounded < 1 || std::abs(k - static_cast<double>(rounded)) > 1e-6)
            throw ConfigError("protocol.sample_times must be positive multiples of device.T_m");
        idx.push_back(rounded);
    }
    return idx;
}

struct ShotSummary {
    std::vector<std::uint8_t> photon_at_sample;
    long long discard_boundary = 0;  // 1-based; 0 = never discarded
};

ShotSummary run_shot(const SimEngineConfig& cfg, std::uint64_t shot_index,
                     std::span<const long long> sample_idx, ShotRecord* record,
                     const ShotOptions& opts) {
    RngStream rng(cfg.protocol.seed, RngStream::Domain::protocol, shot_index);
    ShotSummary summary;
    summary.photon_at_sample.assign(sample_idx.size(), 0);

    EventSink sink{record, opts.record_events};
    ShotState state;
    state.excited = rng.bernoulli(cfg.params.n_th);
    // post_select_init models verified preparation: the cavity starts in |1>.
    state.photon = true;

    const long long last = sample_idx.empty() ? 0 : sample_idx.back();
    std::size_t next_sample = 0;
    bool discarded = false;

    for (long long k = 1; k <= last; ++k) {
        advance(state, static_cast<double>(k) * cfg.params.t_m, cfg, rng, sink);

        if (!discarded) {
            const bool reported_excited = state.excited
                                              ? !rng.bernoulli(cfg.readout.p_false_neg)
                                              : rng.bernoulli(cfg.readout.p_false_pos);
            if (record && opts.record_outcomes)
                record->measurement_outcomes.push_back(reported_excited ? 1 : 0);
            if (reported_excited) {
                discarded = true;
                summary.discard_boundary = k;
                if (record) record->discarded_at = static_cast<std::size_t>(k - 1);
            }
        }

        while (next_sample < sample_idx.size() && sample_idx[next_sample] == k) {
            summary.photon_at_sample[next_sample] = state.photon ? 1 : 0;
            ++next_sample;
        }
    }
    return summary;
}

}  // namespace

std::vector<std::string> validate(const SimEngineConfig& cfg) {
    std::vector<std::string> warnings = validate(cfg.params);
    for (auto& w : validate(cfg.readout)) warnings.push_back(w);
    for (auto& w : validate(cfg.protocol, cfg.params.t_m)) warnings.push_back(w);
    if (cfg.kappa_dd < 0) warnings.push_back("negative kappa_dd");
    return warnings;
}

ShotRecord simulate_shot(const SimEngineConfig& cfg, std::uint64_t shot_index,
                         const ShotOptions& opts) {
    const auto sample_idx = sample_boundary_indices(cfg);
    ShotRecord record;
    const ShotSummary summary = run_shot(cfg, shot_index, sample_idx, &record, opts);
    record.photon_at_sample = summary.photon_at_sample;
    return record;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return std::min(requested, 256);
    if (const char* env = std::getenv("DLL_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return std::min(n, 256);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 64u));
}

SurvivalCurves run_experiment(const SimEngineConfig& cfg, const RunOptions& opts,
                              ExperimentStats* stats) {
    {
        const auto warnings = validate(cfg);
        if (!warnings.empty())
            throw ConfigError("invalid simulation config: " + warnings.front());
    }
    SimEngineConfig config = cfg;
    if (config.protocol.sample_times.empty())
        config.protocol.sample_times =
            default_sample_grid(config.params.t_m, config.protocol.total_time);
    const auto sample_idx = sample_boundary_indices(config);
    const std::size_t n_times = sample_idx.size();
    const std::int64_t n_shots = config.protocol.n_shots;
    const double horizon =
        sample_idx.empty() ? 0.0 : static_cast<double>(sample_idx.back()) * config.params.t_m;

    struct Partial {
        std::vector<std::int64_t> k_uncond, k_cond, n_retained;
        ExperimentStats stats;
    };

    const int n_threads = std::min<std::int64_t>(resolve_thread_count(opts.threads), n_shots);
    std::vector<Partial> partials(static_cast<std::size_t>(std::max(n_threads, 1)));

    auto work = [&](int worker) {
        Partial& part = partials[static_cast<std::size_t>(worker)];
        part.k_uncond.assign(n_times, 0);
        part.k_cond.assign(n_times, 0);
        part.n_retained.assign(n_times, 0);
        // A full record is needed per shot to see the first-loss channel; the
        // outcome bits are not kept.
        ShotRecord record;
        for (std::int64_t i = worker; i < n_shots; i += n_threads) {
            record = ShotRecord{};
            const ShotSummary s = run_shot(config, static_cast<std::uint64_t>(i), sample_idx,
                                           &record, ShotOptions{false, false});
            for (std::size_t j = 0; j < n_times; ++j) {
                part.k_uncond[j] += s.photon_at_sample[j];
                const bool retained =
                    s.discard_boundary == 0 || s.discard_boundary > sample_idx[j];
                if (retained) {
                    part.n_retained[j] += 1;
                    part.k_cond[j] += s.photon_at_sample[j];
                }
            }
            if (record.loss_time && *record.loss_time <= horizon) {
                part.stats.losses += 1;
                part.stats.exposure += *record.loss_time;
                if (record.loss_channel == LossChannel::dressed) {
                    part.stats.dressed_losses += 1;
                    // boundary closing the loss interval
                    const auto kb =
                        static_cast<long long>(std::ceil(*record.loss_time / config.params.t_m - 1e-12));
                    const bool no_prior_discard =
                        s.discard_boundary == 0 || s.discard_boundary >= kb;
                    if (no_prior_discard && kb <= sample_idx.back()) {
                        part.stats.dressed_evaluated += 1;
                        if (s.discard_boundary == kb) part.stats.dressed_detected += 1;
                    }
                }
            } else {
                part.stats.exposure += horizon;
            }
        }
    };

    if (n_threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int w = 0; w < n_threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    SurvivalCurves curves;
    curves.times = config.protocol.sample_times;
    curves.n_uncond.assign(n_times, n_shots);
    curves.k_uncond.assign(n_times, 0);
    curves.n_cond.assign(n_times, 0);
    curves.k_cond.assign(n_times, 0);
    curves.n_retained.assign(n_times, 0);
    ExperimentStats total_stats;
    for (const Partial& part : partials) {
        if (part.k_uncond.empty()) continue;
        for (std::size_t j = 0; j < n_times; ++j) {
            curves.k_uncond[j] += part.k_uncond[j];
            curves.k_cond[j] += part.k_cond[j];
            curves.n_retained[j] += part.n_retained[j];
        }
        total_stats.losses += part.stats.losses;
        total_stats.dressed_losses += part.stats.dressed_losses;
        total_stats.exposure += part.stats.exposure;
        total_stats.dressed_evaluated += part.stats.dressed_evaluated;
        total_stats.dressed_detected += part.stats.dressed_detected;
    }
    curves.n_cond = curves.n_retained;
    if (stats) *stats = total_stats;
    check_invariants(curves);
    return curves;
}

std::vector<double> simulate_population_trace(const SimEngineConfig& cfg,
                                              std::span<const double> times,
                                              const RunOptions& opts) {
    {
        const auto warnings = validate(cfg.params);
        if (!warnings.empty()) throw ConfigError("invalid device params: " + warnings.front());
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0 || (i > 0 && times[i] <= times[i - 1]))
            throw ConfigError("trace times must be non-negative and strictly increasing");
    }
    const std::int64_t n_shots = std::max<std::int64_t>(cfg.protocol.n_shots, 1);
    const int n_threads = std::min<std::int64_t>(resolve_thread_count(opts.threads), n_shots);

    std::vector<std::vector<std::int64_t>> partial(static_cast<std::size_t>(n_threads));
    auto work = [&](int worker) {
        auto& counts = partial[static_cast<std::size_t>(worker)];
        counts.assign(times.size(), 0);
        const EventSink sink{};
        for (std::size_t j = 0; j < times.size(); ++j) {
            for (std::int64_t i = worker; i < n_shots; i += n_threads) {
                // fresh shots per time point, a stream per (point, shot)
                RngStream rng(cfg.protocol.seed, RngStream::Domain::trace,
                              (static_cast<std::uint64_t>(j) << 40) + static_cast<std::uint64_t>(i));
                ShotState state;
                state.excited = rng.bernoulli(cfg.params.n_th);
                advance(state, times[j], cfg, rng, sink);
                const bool reported_excited = state.excited
                                                  ? !rng.bernoulli(cfg.readout.p_false_neg)
                                                  : rng.bernoulli(cfg.readout.p_false_pos);
                counts[j] += reported_excited ? 1 : 0;
            }
        }
    };
    if (n_threads <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_threads; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }

    std::vector<double> trace(times.size(), 0.0);
    for (const auto& counts : partial)
        for (std::size_t j = 0; j < times.size(); ++j) trace[j] += static_cast<double>(counts[j]);
    for (double& v : trace) v /= static_cast<double>(n_shots);
    return trace;
}

}  // namespace dll::sim
