#ifndef PALPRENDER_SIMULATOR_HPP
#define PALPRENDER_SIMULATOR_HPP

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "palprender/control.hpp"
#include "palprender/models.hpp"
#include "palprender/rendering.hpp"

namespace palprender {

// Motorized vertical stage: rate- and travel-limited first-order motion
// toward the commanded position, static force from the fitted polynomial.
// Electromechanical delay is below one tick and treated as zero.
struct PlatformPlant {
    PlatformModel force_model;
    double position_mm = 0.0;
    double max_speed_mm_s = 50.0;
    double travel_min_mm = -8.0;
    double travel_max_mm = 11.0;
    double noise_std_n = 0.0;  // Gaussian force noise, off by default
};

// Pneumatic chamber: pure dead time (rounded to ticks) followed by a
// first-order pressure lag; static force from the fitted power law.
struct BubblePlant {
    BubbleModel force_model;
    double dead_time_s = 0.16465;
    double time_constant_s = 0.05;
    double pressure_kpa = 0.0;
    std::deque<double> command_queue;  // managed by the simulator
};

struct StepResult {
    double position_or_pressure = 0.0;
    double force_n = 0.0;
    bool clamped = false;
};

StepResult step_platform_plant(PlatformPlant& plant, double target_position_mm,
                               double dt_s, double noise_sample_n = 0.0);
StepResult step_bubble_plant(BubblePlant& plant, double commanded_kpa, double dt_s);

// Trace flag bits.
enum TraceFlag : std::uint32_t {
    kFlagPlatformRateLimited = 1u << 0,
    kFlagPlatformTravelClamp = 1u << 1,
    kFlagBubbleCommandClamp = 1u << 2,
    kFlagModelDomainClamp = 1u << 3,
    kFlagPlanClamped = 1u << 4,
};

struct TraceTick {
    double t_s = 0.0;
    double desired = 0.0;       // N (force plans) or mm (position plans)
    double platform_mm = 0.0;
    double platform_n = 0.0;
    double bubble_kpa = 0.0;
    double bubble_n = 0.0;
    double total_n = 0.0;       // always platform_n + bubble_n
    std::uint32_t flags = 0;
};

struct SimTrace {
    Strategy strategy = Strategy::PlatformOnly;
    PlatformTargetKind desired_kind = PlatformTargetKind::Force;
    double x_retract_mm = -6.0;
    std::vector<TraceTick> ticks;

    std::size_t size() const { return ticks.size(); }
};

struct SimGains {
    PdGains platform_force_pd;
    PdGains platform_pos_pd;
    PdGains bubble_fb_pd;
};

struct SimOptions {
    double dt_s = kTickSeconds;
    double contact_force_baseline_n = 0.5;  // startup preload before t = 0
    bool bubble_enabled = true;             // off for the augmentation baseline
    double plant_mismatch = 0.0;            // fractional perturbation of plant coefficients
    // measured actuation latency spread, drawn once per run from the seed;
    // off by default so traces stay reproducible tick-for-tick
    double dead_time_jitter_s = 0.0;
};

// Deterministic fixed-rate closed loop. PlatformOnly drives the stage
// with the force PD; hybrid strategies drive position while the bubble
// follows its feedforward-feedback controller (Hybrid A) or the plan's
// constant pressure schedule (Hybrid B). The platform starts at the
// position where the model renders the 0.5 N contact baseline.
SimTrace run_simulation(const RenderPlan& plan, const SimGains& gains,
                        PlatformPlant platform, BubblePlant bubble,
                        std::uint64_t seed, const SimOptions& options = {});

// Trace CSV: t_s,desired,platform_mm,platform_n,bubble_kpa,bubble_n,total_n,flags
void save_trace(const std::string& path, const SimTrace& trace);
SimTrace load_trace(const std::string& path);

}  // namespace palprender

#endif
