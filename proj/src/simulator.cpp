#include "palprender/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "palprender/csv.hpp"
#include "palprender/rng.hpp"

namespace palprender {

StepResult step_platform_plant(PlatformPlant& plant, double target_position_mm,
                               double dt_s, double noise_sample_n) {
    StepResult result;
    const double max_step = plant.max_speed_mm_s * dt_s;
    double move = target_position_mm - plant.position_mm;
    if (move > max_step) {
        move = max_step;
        result.clamped = true;
    } else if (move < -max_step) {
        move = -max_step;
        result.clamped = true;
    }
    double position = plant.position_mm + move;
    if (position < plant.travel_min_mm) {
        position = plant.travel_min_mm;
        result.clamped = true;
    } else if (position > plant.travel_max_mm) {
        position = plant.travel_max_mm;
        result.clamped = true;
    }
    plant.position_mm = position;
    result.position_or_pressure = position;
    result.force_n = eval_platform(plant.force_model, std::max(position, 0.0)) + noise_sample_n;
    return result;
}

StepResult step_bubble_plant(BubblePlant& plant, double commanded_kpa, double dt_s) {
    StepResult result;
    double command = commanded_kpa;
    if (command < 0.0) {
        command = 0.0;
        result.clamped = true;
    } else if (command > plant.force_model.p_max) {
        command = plant.force_model.p_max;
        result.clamped = true;
    }

    const auto dead_ticks =
        static_cast<std::size_t>(std::llround(plant.dead_time_s / dt_s));
    // lazily sized so a plant can be reused across dt configurations
    while (plant.command_queue.size() < dead_ticks) plant.command_queue.push_front(0.0);
    while (plant.command_queue.size() > dead_ticks) plant.command_queue.pop_front();

    double delayed = command;
    if (dead_ticks > 0) {
        plant.command_queue.push_back(command);
        delayed = plant.command_queue.front();
        plant.command_queue.pop_front();
    }

    const double alpha = 1.0 - std::exp(-dt_s / plant.time_constant_s);
    plant.pressure_kpa += (delayed - plant.pressure_kpa) * alpha;
    result.position_or_pressure = plant.pressure_kpa;
    result.force_n = eval_bubble(plant.force_model, plant.pressure_kpa);
    return result;
}

namespace {

// position where the platform statics render `force_n`, by bisection
double position_for_force(const PlatformModel& m, double force_n) {
    double lo = m.x_min;
    double hi = m.x_max;
    if (eval_platform(m, lo) >= force_n) return lo;
    if (eval_platform(m, hi) <= force_n) return hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (eval_platform(m, mid) < force_n) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-13) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

SimTrace run_simulation(const RenderPlan& plan, const SimGains& gains,
                        PlatformPlant platform, BubblePlant bubble,
                        std::uint64_t seed, const SimOptions& options) {
    if (plan.ticks.empty()) throw std::invalid_argument("empty plan");
    const double dt = options.dt_s;
    for (std::size_t i = 0; i + 1 < plan.ticks.size(); ++i) {
        if (std::abs((plan.ticks[i + 1].t_s - plan.ticks[i].t_s) - dt) > 1e-9) {
            throw std::invalid_argument("plan tick spacing does not match the simulation rate");
        }
    }
    if (options.plant_mismatch != 0.0) {
        const double scale = 1.0 + options.plant_mismatch;
        platform.force_model.k2 *= scale;
        platform.force_model.k1 *= scale;
        bubble.force_model.a *= scale;
    }

    Rng rng(seed);
    if (options.dead_time_jitter_s > 0.0) {
        bubble.dead_time_s = std::max(
            0.0, bubble.dead_time_s +
                     rng.uniform(-options.dead_time_jitter_s, options.dead_time_jitter_s));
    }

    // startup zeroing: servo to the contact baseline before playback
    platform.position_mm =
        position_for_force(platform.force_model, options.contact_force_baseline_n);
    bubble.pressure_kpa = 0.0;
    bubble.command_queue.clear();

    ControllerState platform_state;
    platform_state.reset(platform.position_mm);
    ControllerState bubble_state;
    bubble_state.reset(0.0);

    SimTrace trace;
    trace.strategy = plan.strategy;
    trace.desired_kind = plan.platform_kind;
    if (plan.platform_kind == PlatformTargetKind::Position) {
        // position plans rest at the retract level between pokes
        double retract = plan.ticks.front().platform_target;
        for (const PlanTick& tick : plan.ticks) {
            retract = std::min(retract, tick.platform_target);
        }
        trace.x_retract_mm = retract;
    }
    trace.ticks.resize(plan.ticks.size());

    // last sensor readings drive the controllers, as on hardware
    double bubble_force = 0.0;
    double platform_force =
        eval_platform(platform.force_model, std::max(platform.position_mm, 0.0));
    for (std::size_t i = 0; i < plan.ticks.size(); ++i) {
        const PlanTick& cmd = plan.ticks[i];
        TraceTick& row = trace.ticks[i];
        row.t_s = cmd.t_s;
        row.desired = cmd.platform_target;
        if (cmd.clamped) row.flags |= kFlagPlanClamped;

        // platform control
        const PdGains& pd = plan.platform_kind == PlatformTargetKind::Force
                                ? gains.platform_force_pd
                                : gains.platform_pos_pd;
        double measured = plan.platform_kind == PlatformTargetKind::Force
                              ? platform_force + bubble_force
                              : platform.position_mm;
        const PdResult pd_out =
            pd_step(pd, platform_state, cmd.platform_target - measured, dt);
        const double noise =
            platform.noise_std_n > 0.0 ? rng.normal(0.0, platform.noise_std_n) : 0.0;
        const StepResult plat = step_platform_plant(platform, pd_out.output, dt, noise);
        platform_state.previous_output = platform.position_mm;  // anti-windup at travel stops
        if (pd_out.rate_limited) row.flags |= kFlagPlatformRateLimited;
        if (plat.clamped) row.flags |= kFlagPlatformTravelClamp;

        // bubble control
        double bubble_cmd = 0.0;
        if (options.bubble_enabled) {
            switch (plan.strategy) {
                case Strategy::PlatformOnly:
                    bubble_cmd = 0.0;
                    break;
                case Strategy::HybridA:
                    bubble_cmd = bubble_ff_fb_step(bubble.force_model, gains.bubble_fb_pd,
                                                   bubble_state, cmd.bubble_target,
                                                   bubble_force, dt);
                    break;
                case Strategy::HybridB:
                    bubble_cmd = cmd.bubble_target;
                    break;
            }
        }
        const StepResult bub = step_bubble_plant(bubble, bubble_cmd, dt);
        if (bub.clamped) row.flags |= kFlagBubbleCommandClamp;
        bubble_force = options.bubble_enabled ? bub.force_n : 0.0;
        platform_force = plat.force_n;

        bool domain_clamped = false;
        eval_platform(platform.force_model, std::max(plat.position_or_pressure, 0.0),
                      &domain_clamped);
        if (domain_clamped) row.flags |= kFlagModelDomainClamp;

        row.platform_mm = plat.position_or_pressure;
        row.platform_n = plat.force_n;
        row.bubble_kpa = options.bubble_enabled ? bub.position_or_pressure : 0.0;
        row.bubble_n = bubble_force;
        row.total_n = row.platform_n + row.bubble_n;
    }
    return trace;
}

void save_trace(const std::string& path, const SimTrace& trace) {
    std::string out = "t_s,desired,platform_mm,platform_n,bubble_kpa,bubble_n,total_n,flags\n";
    for (const TraceTick& row : trace.ticks) {
        out += format_double(row.t_s);
        out += ',' + format_double(row.desired);
        out += ',' + format_double(row.platform_mm);
        out += ',' + format_double(row.platform_n);
        out += ',' + format_double(row.bubble_kpa);
        out += ',' + format_double(row.bubble_n);
        out += ',' + format_double(row.total_n);
        out += ',' + std::to_string(row.flags);
        out += '\n';
    }
    write_text_file(path, out);
}

SimTrace load_trace(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line)) throw SchemaError("empty trace file " + path);
    SimTrace trace;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 8) throw SchemaError("trace row needs 8 columns");
        TraceTick row;
        row.t_s = parse_double(fields[0]);
        row.desired = parse_double(fields[1]);
        row.platform_mm = parse_double(fields[2]);
        row.platform_n = parse_double(fields[3]);
        row.bubble_kpa = parse_double(fields[4]);
        row.bubble_n = parse_double(fields[5]);
        row.total_n = parse_double(fields[6]);
        row.flags = static_cast<std::uint32_t>(parse_double(fields[7]));
        trace.ticks.push_back(row);
    }
    if (trace.ticks.empty()) throw SchemaError("trace has no rows");
    // the CSV carries no strategy metadata; negative desired values can
    // only be retract positions, so they identify a position-mode trace
    double min_desired = trace.ticks.front().desired;
    for (const TraceTick& row : trace.ticks) min_desired = std::min(min_desired, row.desired);
    if (min_desired < 0.0) {
        trace.desired_kind = PlatformTargetKind::Position;
        trace.x_retract_mm = min_desired;
    } else {
        trace.desired_kind = PlatformTargetKind::Force;
    }
    return trace;
}

}  // namespace palprender
