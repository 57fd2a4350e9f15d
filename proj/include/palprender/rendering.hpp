#ifndef PALPRENDER_RENDERING_HPP
#define PALPRENDER_RENDERING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "palprender/models.hpp"
#include "palprender/segmentation.hpp"
#include "palprender/trial.hpp"

namespace palprender {

// Hertzian sphere-on-halfspace contact.
struct HertzParams {
    double e_star = 0.0671160189422247;  // effective modulus [N/mm^2]
    double radius_mm = 7.5;              // effective finger radius
};

enum class Strategy { PlatformOnly, HybridA, HybridB };
enum class HybridBMode { Preloaded, Causal };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);

struct RenderConfig {
    double x_retract_mm = -6.0;          // disengaged platform position
    double contact_force_baseline_n = 0.5;
    double attenuation = 0.7;            // in (0, 1], scales the mapped position
    double platform_x_max_mm = 10.0;     // travel ceiling for mapped targets
};

// F = (4/3) E* sqrt(R) d^1.5 for d > 0, else 0.
double hertz_force(const HertzParams& params, double depth_mm);

// Two-branch depth map: d <= 0 retracts, d > 0 maps the Hertzian target
// force through the inverse characterization, scaled by the attenuation.
// In-contact outputs are kept non-negative before attenuation so a larger
// attenuation can never lower a target.
double position_mapping(double depth_mm, const InversePlatformMap& inverse,
                        const HertzParams& params, const RenderConfig& cfg,
                        bool* clamped = nullptr);

// max(0, recorded_total - platform force at x_p); a retracted platform
// (x_p <= 0) contributes nothing.
double residual_force(double recorded_total_n, const PlatformModel& platform,
                      double platform_position_mm);

// What the per-tick targets mean for a given strategy.
enum class PlatformTargetKind { Force, Position };
enum class BubbleTargetKind { PressureKpa, ResidualForceN };

struct PlanTick {
    double t_s = 0.0;
    double platform_target = 0.0;  // N or mm, see platform_kind
    double bubble_target = 0.0;    // kPa or N, see bubble_kind
    std::int32_t poke_id = -1;     // -1 outside contact
    bool clamped = false;          // residual/pressure hit a model limit
};

struct RenderPlan {
    Strategy strategy = Strategy::PlatformOnly;
    PlatformTargetKind platform_kind = PlatformTargetKind::Force;
    BubbleTargetKind bubble_kind = BubbleTargetKind::PressureKpa;
    std::vector<PlanTick> ticks;

    std::size_t size() const { return ticks.size(); }
};

struct DeviceModels {
    PlatformModel platform;
    InversePlatformMap inverse;
    BubbleModel bubble;
};

// Per-tick desired force = summed grid force; bubble stays at 0 kPa.
RenderPlan plan_platform_only(const TrialRecording& trial);

// Platform position via position_mapping; bubble tracks the per-tick
// residual force, clamped to the bubble's force ceiling.
RenderPlan plan_hybrid_a(const TrialRecording& trial, const DeviceModels& models,
                         const HertzParams& params, const RenderConfig& cfg);

// Platform positions identical to Hybrid A; bubble pressure held constant
// over each poke's contact span, inverted from the poke's sustain-mean
// residual. Preloaded mode uses poke i's own mean (offline playback);
// causal mode uses poke i-1's (streaming), leaving the first poke at 0.
// Returns the plan and the events annotated with their sustain means.
struct HybridBPlan {
    RenderPlan plan;
    std::vector<PokeEvent> events;
};
HybridBPlan plan_hybrid_b(const TrialRecording& trial, const DeviceModels& models,
                          const HertzParams& params, const RenderConfig& cfg,
                          const std::vector<PokeEvent>& events,
                          HybridBMode mode = HybridBMode::Preloaded);

// Per-tick residual targets for a trial under the hybrid position mapping.
std::vector<double> residual_series(const TrialRecording& trial,
                                    const DeviceModels& models,
                                    const HertzParams& params,
                                    const RenderConfig& cfg);

// Least-squares E* so that hertz_force matches the recorded totals over
// the sustain samples of the given events.
double calibrate_estar(const TrialRecording& trial,
                       const std::vector<PokeEvent>& events,
                       double radius_mm = 7.5);

// Plan CSV: t_s,strategy,platform_target,target_kind,bubble_kpa_or_residual_n,poke_id,clamp_flag
void save_plan(const std::string& path, const RenderPlan& plan);
RenderPlan load_plan(const std::string& path);

}  // namespace palprender

#endif
