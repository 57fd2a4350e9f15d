#ifndef PALPRENDER_REFERENCE_HPP
#define PALPRENDER_REFERENCE_HPP

#include <cstdint>

#include "palprender/config.hpp"
#include "palprender/fitting.hpp"
#include "palprender/models.hpp"
#include "palprender/rendering.hpp"
#include "palprender/synth.hpp"

namespace palprender {

// The published characterization reports fit quality and spans but not
// coefficients, so the repo ships a synthetic "reference device" whose
// curves match the published spans: platform 0-9.58 N over 0-10 mm,
// bubble 0.033-1.175 N over 3-41 kPa. All defaults below are calibrated
// against this device; they are not measured hardware values.

PlatformModel reference_platform_model();
BubbleModel reference_bubble_model();
InversePlatformMap reference_inverse_map();
DeviceModels reference_models();

HertzParams reference_hertz_params();
RenderConfig reference_render_config();
SegmentationConfig reference_segmentation_config();
SimGains reference_gains();
AppConfig reference_config();

PlatformPlant reference_platform_plant(double noise_std_n = 0.0);
BubblePlant reference_bubble_plant();

// Seeded characterization datasets used by the fit-quality checks:
// 11 displacement levels (0-10 mm) and 11 pressure levels (3-41 kPa)
// with small Gaussian noise.
Samples reference_platform_dataset(std::uint64_t seed, double noise_std_n = 0.05);
Samples reference_bubble_dataset(std::uint64_t seed, double noise_std_n = 0.004);

inline constexpr std::uint64_t kReferenceSeed = 7;

// Three-poke reference pair (10 s each) and the 25 s validation session.
TrialRecording reference_trial(bool lump, std::uint64_t seed = kReferenceSeed);
TrialRecording reference_session(std::uint64_t seed = kReferenceSeed);

}  // namespace palprender

#endif
