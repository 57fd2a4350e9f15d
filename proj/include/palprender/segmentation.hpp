#ifndef PALPRENDER_SEGMENTATION_HPP
#define PALPRENDER_SEGMENTATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "palprender/trial.hpp"

namespace palprender {

struct SegmentationConfig {
    double d_contact_mm = 0.5;   // below this depth the finger is off the tissue
    double v_thresh_mm_s = 35.0; // |velocity| above this is approach/release
    int smoothing_window = 5;    // centered moving average, odd, >= 1
};

// Velocity here is the derivative of depth d, so approach (finger moving
// down, depth increasing) is positive. The finger-height convention is
// the mirror image: z_dot = -d_dot.
enum class PokePhase { NoContact, Approach, Sustain, Release };

const char* to_string(PokePhase phase);

// One contiguous contact span (d >= d_contact). The sustain span is the
// range between the first and last sustain-labeled sample; pokes with no
// sustain sample keep has_sustain = false and render to zero pressure.
struct PokeEvent {
    std::size_t start_index = 0;  // inclusive
    std::size_t end_index = 0;    // inclusive
    std::size_t sustain_start = 0;
    std::size_t sustain_end = 0;
    bool has_sustain = false;
    double sustain_mean_depth_mm = 0.0;
    double sustain_mean_residual_n = 0.0;  // filled by the rendering stage
};

// Central finite difference (one-sided at the ends) followed by a
// centered moving average of width smoothing_window (shrunk near the
// ends). Requires a uniform 100 Hz series of length >= window + 2.
std::vector<double> estimate_velocity(const std::vector<double>& depth_mm,
                                      const SegmentationConfig& config);

PokePhase classify_phase(double depth_mm, double depth_velocity_mm_s,
                         const SegmentationConfig& config);

std::vector<PokePhase> label_phases(const std::vector<double>& depth_mm,
                                    const std::vector<double>& velocity_mm_s,
                                    const SegmentationConfig& config);

// Expects a resampled (uniform 100 Hz) trial. Zero events is a valid result.
std::vector<PokeEvent> segment_pokes(const TrialRecording& trial,
                                     const SegmentationConfig& config = {});

// Events CSV: poke_id,start_s,end_s,sustain_start_s,sustain_end_s,mean_depth_mm
// (sustain columns empty for pokes without one).
void save_events(const std::string& path, const std::vector<PokeEvent>& events,
                 const std::vector<double>& timestamps_s);

}  // namespace palprender

#endif
