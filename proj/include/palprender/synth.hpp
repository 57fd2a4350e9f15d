#ifndef PALPRENDER_SYNTH_HPP
#define PALPRENDER_SYNTH_HPP

#include <cstdint>
#include <vector>

#include "palprender/trial.hpp"

namespace palprender {

// Stimulus generator. Each poke is a trapezoid in indentation depth:
// linear approach ramp, flat dwell, linear release ramp, all breakpoints
// aligned to the 10 ms grid so a 100 Hz synthesis is already uniform.
// Total force follows a Hertzian law in depth; an embedded lump adds a
// second, stiffer Hertzian term that engages once depth crosses
// `lump_onset_mm`. Lump and no-lump trials generated with the same seed
// share the exact depth profile and differ only in the force grid.
struct SynthOptions {
    int pokes = 3;
    double depth_peak_mm = 5.0;          // in (0, 10]
    double rate_hz = 100.0;              // sampling rate of the recording
    double depth_rest_mm = -2.0;         // finger hover height between pokes
    double ramp_s = 0.16;                // approach/release duration
    double dwell_s = 1.6;                // hold at peak depth
    double lead_s = 1.5;                 // rest before the first poke
    double period_s = 2.9;               // poke start to poke start
    double phantom_height_mm = 39.0;

    // Generator force model (effective moduli, N/mm^2). Defaults are
    // calibrated so the reference device reproduces the validation
    // magnitudes; see reference.hpp.
    double e_star_base = 0.0019595917942265426;   // 0.08 N at 5 mm depth
    double e_star_lump = 0.07631211638094786;     // +2.66 N at 5 mm depth
    double lump_onset_mm = 0.5;

    // Seeded perturbations, all off by default so trials are analytic.
    double depth_jitter_mm = 0.0;        // per-poke uniform jitter of the peak
    double force_noise_n = 0.0;          // per-cell Gaussian sigma
    double timestamp_jitter = 0.0;       // fraction of the sample period
};

// Deterministic for a given (options, lump, seed).
TrialRecording synth_trial(bool lump, const SynthOptions& opts, std::uint64_t seed);

// Convenience overload matching the CLI surface.
TrialRecording synth_trial(bool lump, int pokes, double depth_peak_mm,
                           double rate_hz, std::uint64_t seed);

// 25 s validation sequence: three pokes on plain tissue (0-10 s), a rest
// gap, then three pokes over an embedded lump (13-25 s). Used by the
// tracking and augmentation checks.
TrialRecording synth_session(std::uint64_t seed, const SynthOptions& opts = {});

// Analytic ground truth for tests and oracles.
double synth_depth_at(double t_s, const SynthOptions& opts,
                      const std::vector<double>& peak_per_poke = {});
double synth_total_force_at(double t_s, bool lump, const SynthOptions& opts);

// Exact contact-crossing and ramp-corner times for poke `k` (0-based):
// {contact_on, approach_end, release_begin, contact_off} in seconds,
// valid for unjittered profiles.
struct PokeBoundaries {
    double contact_on_s;
    double approach_end_s;
    double release_begin_s;
    double contact_off_s;
};
PokeBoundaries synth_poke_boundaries(int poke, double d_contact_mm,
                                     const SynthOptions& opts);

}  // namespace palprender

#endif
