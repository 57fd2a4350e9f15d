#include "palprender/rendering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "palprender/csv.hpp"

namespace palprender {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::PlatformOnly: return "platform-only";
        case Strategy::HybridA: return "hybrid-a";
        case Strategy::HybridB: return "hybrid-b";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& name) {
    if (name == "platform-only") return Strategy::PlatformOnly;
    if (name == "hybrid-a") return Strategy::HybridA;
    if (name == "hybrid-b") return Strategy::HybridB;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

double hertz_force(const HertzParams& params, double depth_mm) {
    if (depth_mm <= 0.0) return 0.0;
    return (4.0 / 3.0) * params.e_star * std::sqrt(params.radius_mm) *
           depth_mm * std::sqrt(depth_mm);
}

double position_mapping(double depth_mm, const InversePlatformMap& inverse,
                        const HertzParams& params, const RenderConfig& cfg,
                        bool* clamped) {
    if (depth_mm <= 0.0) return cfg.x_retract_mm;
    const double f_target = hertz_force(params, depth_mm);
    const double mapped = eval_inverse(inverse, f_target, clamped);
    const double x = cfg.attenuation * std::max(0.0, mapped);
    if (x > cfg.platform_x_max_mm) {
        if (clamped) *clamped = true;
        return cfg.platform_x_max_mm;
    }
    return x;
}

double residual_force(double recorded_total_n, const PlatformModel& platform,
                      double platform_position_mm) {
    const double platform_n = eval_platform(platform, std::max(platform_position_mm, 0.0));
    return std::max(0.0, recorded_total_n - platform_n);
}

namespace {

void require_resampled(const TrialRecording& trial) {
    if (trial.size() < 2) throw std::invalid_argument("trial too short to plan");
    const double t0 = trial.timestamps_s.front();
    for (std::size_t i = 0; i < trial.size(); ++i) {
        if (trial.timestamps_s[i] != t0 + static_cast<double>(i) * kTickSeconds) {
            throw std::invalid_argument("planning requires a 100 Hz resampled trial");
        }
    }
}

std::vector<std::int32_t> poke_ids_per_tick(std::size_t n,
                                            const std::vector<PokeEvent>& events) {
    std::vector<std::int32_t> ids(n, -1);
    for (std::size_t k = 0; k < events.size(); ++k) {
        for (std::size_t j = events[k].start_index; j <= events[k].end_index && j < n; ++j) {
            ids[j] = static_cast<std::int32_t>(k);
        }
    }
    return ids;
}

}  // namespace

RenderPlan plan_platform_only(const TrialRecording& trial) {
    require_resampled(trial);
    RenderPlan plan;
    plan.strategy = Strategy::PlatformOnly;
    plan.platform_kind = PlatformTargetKind::Force;
    plan.bubble_kind = BubbleTargetKind::PressureKpa;
    plan.ticks.resize(trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i) {
        plan.ticks[i].t_s = trial.timestamps_s[i];
        plan.ticks[i].platform_target = total_force(trial.force_grid_n[i]);
        plan.ticks[i].bubble_target = 0.0;
    }
    return plan;
}

std::vector<double> residual_series(const TrialRecording& trial, const DeviceModels& models,
                                    const HertzParams& params, const RenderConfig& cfg) {
    const KinematicSeries kin = indentation_depth(trial);
    std::vector<double> out(trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i) {
        const double x_p = position_mapping(kin.depth_mm[i], models.inverse, params, cfg);
        out[i] = residual_force(total_force(trial.force_grid_n[i]), models.platform, x_p);
    }
    return out;
}

RenderPlan plan_hybrid_a(const TrialRecording& trial, const DeviceModels& models,
                         const HertzParams& params, const RenderConfig& cfg) {
    require_resampled(trial);
    const KinematicSeries kin = indentation_depth(trial);
    const double capability = eval_bubble(models.bubble, models.bubble.p_max);

    RenderPlan plan;
    plan.strategy = Strategy::HybridA;
    plan.platform_kind = PlatformTargetKind::Position;
    plan.bubble_kind = BubbleTargetKind::ResidualForceN;
    plan.ticks.resize(trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i) {
        PlanTick& tick = plan.ticks[i];
        tick.t_s = trial.timestamps_s[i];
        tick.platform_target = position_mapping(kin.depth_mm[i], models.inverse, params, cfg);
        const double residual =
            residual_force(total_force(trial.force_grid_n[i]), models.platform,
                           tick.platform_target);
        if (residual > capability) {
            tick.bubble_target = capability;
            tick.clamped = true;
        } else {
            tick.bubble_target = residual;
        }
    }
    return plan;
}

HybridBPlan plan_hybrid_b(const TrialRecording& trial, const DeviceModels& models,
                          const HertzParams& params, const RenderConfig& cfg,
                          const std::vector<PokeEvent>& events, HybridBMode mode) {
    require_resampled(trial);
    const KinematicSeries kin = indentation_depth(trial);
    const std::vector<double> residuals = residual_series(trial, models, params, cfg);
    const double capability = eval_bubble(models.bubble, models.bubble.p_max);

    // per-poke sustain-mean residual
    std::vector<PokeEvent> annotated = events;
    for (PokeEvent& ev : annotated) {
        if (!ev.has_sustain) {
            ev.sustain_mean_residual_n = 0.0;
            continue;
        }
        double sum = 0.0;
        for (std::size_t j = ev.sustain_start; j <= ev.sustain_end; ++j) sum += residuals[j];
        ev.sustain_mean_residual_n =
            sum / static_cast<double>(ev.sustain_end - ev.sustain_start + 1);
    }

    const auto ids = poke_ids_per_tick(trial.size(), annotated);

    HybridBPlan result;
    result.events = annotated;
    RenderPlan& plan = result.plan;
    plan.strategy = Strategy::HybridB;
    plan.platform_kind = PlatformTargetKind::Position;
    plan.bubble_kind = BubbleTargetKind::PressureKpa;
    plan.ticks.resize(trial.size());

    // one constant pressure per poke; causal mode shifts by one poke
    std::vector<double> pressure_per_poke(annotated.size(), 0.0);
    std::vector<bool> clamp_per_poke(annotated.size(), false);
    for (std::size_t k = 0; k < annotated.size(); ++k) {
        const std::size_t source =
            mode == HybridBMode::Preloaded ? k : (k == 0 ? annotated.size() : k - 1);
        if (source >= annotated.size()) continue;  // causal first poke: no history yet
        const PokeEvent& src = annotated[source];
        if (!src.has_sustain) {
            clamp_per_poke[k] = true;  // flagged: falls back to zero pressure
            continue;
        }
        double target = src.sustain_mean_residual_n;
        if (target > capability) {
            target = capability;
            clamp_per_poke[k] = true;
        }
        bool inv_clamped = false;
        pressure_per_poke[k] = invert_bubble(models.bubble, target, &inv_clamped);
        clamp_per_poke[k] = clamp_per_poke[k] || inv_clamped;
    }

    for (std::size_t i = 0; i < trial.size(); ++i) {
        PlanTick& tick = plan.ticks[i];
        tick.t_s = trial.timestamps_s[i];
        tick.platform_target = position_mapping(kin.depth_mm[i], models.inverse, params, cfg);
        tick.poke_id = ids[i];
        if (ids[i] >= 0) {
            const auto k = static_cast<std::size_t>(ids[i]);
            tick.bubble_target = pressure_per_poke[k];
            tick.clamped = clamp_per_poke[k];
        }
    }
    return result;
}

double calibrate_estar(const TrialRecording& trial, const std::vector<PokeEvent>& events,
                       double radius_mm) {
    const KinematicSeries kin = indentation_depth(trial);
    const std::vector<double> totals = total_force_series(trial);
    // hertz_force is linear in E*: minimize sum (E* g(d) - F)^2
    double num = 0.0;
    double den = 0.0;
    for (const PokeEvent& ev : events) {
        if (!ev.has_sustain) continue;
        for (std::size_t j = ev.sustain_start; j <= ev.sustain_end; ++j) {
            const double d = kin.depth_mm[j];
            if (d <= 0.0) continue;
            const double basis = (4.0 / 3.0) * std::sqrt(radius_mm) * d * std::sqrt(d);
            num += basis * totals[j];
            den += basis * basis;
        }
    }
    if (den == 0.0) throw std::invalid_argument("no sustain samples in contact");
    return num / den;
}

void save_plan(const std::string& path, const RenderPlan& plan) {
    std::string out =
        "t_s,strategy,platform_target,target_kind,bubble_kpa_or_residual_n,poke_id,clamp_flag\n";
    const char* kind = plan.platform_kind == PlatformTargetKind::Force ? "force" : "position";
    for (const PlanTick& tick : plan.ticks) {
        out += format_double(tick.t_s);
        out += ',';
        out += to_string(plan.strategy);
        out += ',' + format_double(tick.platform_target);
        out += ',';
        out += kind;
        out += ',' + format_double(tick.bubble_target);
        out += ',' + std::to_string(tick.poke_id);
        out += ',' + std::to_string(tick.clamped ? 1 : 0);
        out += '\n';
    }
    write_text_file(path, out);
}

RenderPlan load_plan(const std::string& path) {
    const std::string text = read_text_file(path);
    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line)) throw SchemaError("empty plan file " + path);

    RenderPlan plan;
    bool first_row = true;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 7) throw SchemaError("plan row needs 7 columns");
        if (first_row) {
            plan.strategy = strategy_from_string(std::string(fields[1]));
            plan.platform_kind = fields[3] == "force" ? PlatformTargetKind::Force
                                                      : PlatformTargetKind::Position;
            plan.bubble_kind = plan.strategy == Strategy::HybridA
                                   ? BubbleTargetKind::ResidualForceN
                                   : BubbleTargetKind::PressureKpa;
            first_row = false;
        }
        PlanTick tick;
        tick.t_s = parse_double(fields[0]);
        tick.platform_target = parse_double(fields[2]);
        tick.bubble_target = parse_double(fields[4]);
        tick.poke_id = static_cast<std::int32_t>(parse_double(fields[5]));
        tick.clamped = parse_double(fields[6]) != 0.0;
        plan.ticks.push_back(tick);
    }
    if (plan.ticks.empty()) throw SchemaError("plan has no rows");
    return plan;
}

}  // namespace palprender
