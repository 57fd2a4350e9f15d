#include "palprender/synth.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "palprender/rendering.hpp"
#include "palprender/rng.hpp"

namespace palprender {

namespace {

// Spatial weights for spreading the scalar total over the 4x4 grid.
// Broad dome for bulk tissue contact, center 2x2 for the local lump cue.
constexpr double kEdge = 1.0 / 6.0;
constexpr double kMid = 2.0 / 6.0;
const double kRowWeights[4] = {kEdge, kMid, kMid, kEdge};

double base_weight(int r, int c) { return kRowWeights[r] * kRowWeights[c]; }
double lump_weight(int r, int c) {
    return (r >= 1 && r <= 2 && c >= 1 && c <= 2) ? 0.25 : 0.0;
}

double trapezoid_depth(double t, double poke_start, double peak, const SynthOptions& o) {
    const double rel = t - poke_start;
    if (rel < 0.0 || rel >= 2.0 * o.ramp_s + o.dwell_s) return o.depth_rest_mm;
    if (rel < o.ramp_s) return o.depth_rest_mm + (peak - o.depth_rest_mm) * (rel / o.ramp_s);
    if (rel < o.ramp_s + o.dwell_s) return peak;
    const double down = rel - o.ramp_s - o.dwell_s;
    return peak - (peak - o.depth_rest_mm) * (down / o.ramp_s);
}

void check_options(const SynthOptions& o) {
    if (o.pokes < 1) throw std::invalid_argument("pokes must be >= 1");
    if (!(o.depth_peak_mm > 0.0 && o.depth_peak_mm <= 10.0)) {
        throw std::invalid_argument("depth_peak must be in (0, 10] mm");
    }
    if (!(o.rate_hz > 0.0)) throw std::invalid_argument("rate must be positive");
    if (o.phantom_height_mm + o.depth_rest_mm < 0.0) {
        throw std::invalid_argument("rest height above table must be non-negative");
    }
}

}  // namespace

double synth_depth_at(double t_s, const SynthOptions& opts,
                      const std::vector<double>& peak_per_poke) {
    double depth = opts.depth_rest_mm;
    for (int k = 0; k < opts.pokes; ++k) {
        const double start = opts.lead_s + static_cast<double>(k) * opts.period_s;
        const double peak =
            peak_per_poke.empty() ? opts.depth_peak_mm : peak_per_poke[static_cast<std::size_t>(k)];
        const double d = trapezoid_depth(t_s, start, peak, opts);
        depth = std::max(depth, d);
    }
    return depth;
}

double synth_total_force_at(double t_s, bool lump, const SynthOptions& opts) {
    const double d = synth_depth_at(t_s, opts);
    const HertzParams base{opts.e_star_base, 7.5};
    double total = hertz_force(base, d);
    if (lump) {
        const HertzParams inclusion{opts.e_star_lump, 7.5};
        total += hertz_force(inclusion, d - opts.lump_onset_mm);
    }
    return total;
}

PokeBoundaries synth_poke_boundaries(int poke, double d_contact_mm, const SynthOptions& opts) {
    const double start = opts.lead_s + static_cast<double>(poke) * opts.period_s;
    const double rate = (opts.depth_peak_mm - opts.depth_rest_mm) / opts.ramp_s;  // mm/s
    PokeBoundaries b;
    b.contact_on_s = start + (d_contact_mm - opts.depth_rest_mm) / rate;
    b.approach_end_s = start + opts.ramp_s;
    b.release_begin_s = start + opts.ramp_s + opts.dwell_s;
    b.contact_off_s = b.release_begin_s + (opts.depth_peak_mm - d_contact_mm) / rate;
    return b;
}

TrialRecording synth_trial(bool lump, const SynthOptions& opts, std::uint64_t seed) {
    check_options(opts);
    Rng rng(seed);

    std::vector<double> peaks(static_cast<std::size_t>(opts.pokes), opts.depth_peak_mm);
    if (opts.depth_jitter_mm > 0.0) {
        for (auto& p : peaks) {
            p += rng.uniform(-opts.depth_jitter_mm, opts.depth_jitter_mm);
        }
    }

    const double duration = opts.lead_s + static_cast<double>(opts.pokes) * opts.period_s - 0.2;

    // Uniform stamps plus the exact trapezoid breakpoints, so the depth is
    // piecewise linear between consecutive samples and linear resampling
    // reproduces it exactly. Breakpoints that land on the sampling grid are
    // snapped to the grid's own floating-point values to keep a 100 Hz
    // synthesis bit-exactly uniform.
    const double dt = 1.0 / opts.rate_hz;
    const auto snap_to_grid = [&](double t) {
        const double on_grid = static_cast<double>(std::llround(t * opts.rate_hz)) * dt;
        return std::abs(on_grid - t) < 1e-9 ? on_grid : t;
    };
    std::set<double> stamps;
    const auto samples = static_cast<std::size_t>(std::llround(duration * opts.rate_hz));
    for (std::size_t k = 0; k < samples; ++k) {
        double t = static_cast<double>(k) * dt;
        if (opts.timestamp_jitter > 0.0 && k > 0) {
            t += dt * opts.timestamp_jitter * rng.uniform(-0.49, 0.49);
        }
        stamps.insert(t);
    }
    const double t_last = *stamps.rbegin();
    for (int k = 0; k < opts.pokes; ++k) {
        const double start = opts.lead_s + static_cast<double>(k) * opts.period_s;
        for (double brk : {start, start + opts.ramp_s, start + opts.ramp_s + opts.dwell_s,
                           start + 2.0 * opts.ramp_s + opts.dwell_s}) {
            if (brk < t_last) stamps.insert(snap_to_grid(brk));
        }
    }

    TrialRecording trial;
    trial.phantom_height_mm = opts.phantom_height_mm;
    trial.lump_label = lump;
    trial.timestamps_s.assign(stamps.begin(), stamps.end());

    const HertzParams base{opts.e_star_base, 7.5};
    const HertzParams inclusion{opts.e_star_lump, 7.5};
    trial.finger_height_mm.resize(trial.size());
    trial.force_grid_n.resize(trial.size());

    // Noise is drawn per (sample, cell) from a dedicated stream so the
    // depth profile of a lump/no-lump pair stays bit-identical.
    Rng noise_rng(seed ^ 0x9e3779b97f4a7c15ull);

    for (std::size_t i = 0; i < trial.size(); ++i) {
        const double t = trial.timestamps_s[i];
        const double depth = synth_depth_at(t, opts, peaks);
        trial.finger_height_mm[i] = opts.phantom_height_mm - depth;

        const double bulk = hertz_force(base, depth);
        const double local = lump ? hertz_force(inclusion, depth - opts.lump_onset_mm) : 0.0;
        ForceGrid grid{};
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                double f = bulk * base_weight(r, c) + local * lump_weight(r, c);
                if (opts.force_noise_n > 0.0 && depth > 0.0) {
                    f += noise_rng.normal(0.0, opts.force_noise_n);
                }
                grid[static_cast<std::size_t>(r * 4 + c)] = std::max(0.0, f);
            }
        }
        trial.force_grid_n[i] = grid;
    }
    validate_trial(trial);
    return trial;
}

TrialRecording synth_trial(bool lump, int pokes, double depth_peak_mm, double rate_hz,
                           std::uint64_t seed) {
    SynthOptions opts;
    opts.pokes = pokes;
    opts.depth_peak_mm = depth_peak_mm;
    opts.rate_hz = rate_hz;
    return synth_trial(lump, opts, seed);
}

TrialRecording synth_session(std::uint64_t seed, const SynthOptions& opts) {
    SynthOptions seg = opts;
    seg.pokes = 3;
    if (seg.timestamp_jitter > 0.0) {
        throw std::invalid_argument("session synthesis requires uniform sampling");
    }
    const TrialRecording plain = synth_trial(false, seg, seed);
    const TrialRecording lumped = synth_trial(true, seg, seed);

    // plain pokes occupy [0, 10) s; the lump segment replays them from 13 s.
    const double offset = 13.0;
    const double total = 25.0;
    const double dt = 1.0 / seg.rate_hz;
    const auto samples = static_cast<std::size_t>(std::llround(total * seg.rate_hz));

    TrialRecording out;
    out.phantom_height_mm = seg.phantom_height_mm;
    out.timestamps_s.resize(samples);
    out.finger_height_mm.resize(samples);
    out.force_grid_n.resize(samples);
    const double rest = seg.phantom_height_mm - seg.depth_rest_mm;
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        out.timestamps_s[i] = t;
        const TrialRecording* src = nullptr;
        double local_t = t;
        if (t < offset - 1.0) {
            src = &plain;
        } else {
            src = &lumped;
            local_t = t - offset;
        }
        const auto idx = static_cast<std::size_t>(std::llround(local_t * seg.rate_hz));
        if (idx < src->size() && local_t >= 0.0) {
            out.finger_height_mm[i] = src->finger_height_mm[idx];
            out.force_grid_n[i] = src->force_grid_n[idx];
        } else {
            out.finger_height_mm[i] = rest;
            out.force_grid_n[i] = ForceGrid{};
        }
    }
    validate_trial(out);
    return out;
}

}  // namespace palprender
