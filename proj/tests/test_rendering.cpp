#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "palprender/reference.hpp"
#include "palprender/rendering.hpp"

using namespace palprender;

namespace {

InversePlatformMap identity_map(double f_max = 20.0) {
    return InversePlatformMap{0.0, 1.0, 0.0, 0.0, f_max};
}

}  // namespace

TEST_CASE("hertz force closed form") {
    const HertzParams params{0.01, 7.5};
    CHECK(hertz_force(params, 0.0) == 0.0);
    CHECK(hertz_force(params, -3.0) == 0.0);
    CHECK(hertz_force(params, 4.0) ==
          doctest::Approx(0.2921186973360886).epsilon(1e-12));
}

TEST_CASE("hertz force is 1.5-homogeneous over random depths") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> dist(1e-3, 8.0);
    const HertzParams params = reference_hertz_params();
    const double ratio = std::sqrt(8.0);  // 2^1.5
    for (int i = 0; i < 10000; ++i) {
        const double d = dist(rng);
        const double f1 = hertz_force(params, d);
        const double f2 = hertz_force(params, 2.0 * d);
        CHECK(std::abs(f2 / f1 - ratio) <= 1e-9);
    }
}

TEST_CASE("position mapping branches") {
    const RenderConfig cfg = reference_render_config();
    const HertzParams params{0.01, 7.5};
    const InversePlatformMap map = identity_map();

    CHECK(position_mapping(-1.0, map, params, cfg) == cfg.x_retract_mm);
    CHECK(position_mapping(0.0, map, params, cfg) == cfg.x_retract_mm);  // boundary retracts

    RenderConfig unit = cfg;
    unit.attenuation = 1.0;
    CHECK(position_mapping(4.0, map, params, unit) ==
          doctest::Approx(0.2921186973360886).epsilon(1e-12));
}

TEST_CASE("position mapping covers every depth with exactly one branch") {
    const RenderConfig cfg = reference_render_config();
    const HertzParams params = reference_hertz_params();
    const InversePlatformMap map = reference_inverse_map();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-8.0, 8.0);
    for (int i = 0; i < 10000; ++i) {
        const double d = dist(rng);
        const double x = position_mapping(d, map, params, cfg);
        if (d <= 0.0) {
            CHECK(x == cfg.x_retract_mm);
        } else {
            const double expected = std::min(
                cfg.platform_x_max_mm,
                cfg.attenuation * std::max(0.0, eval_inverse(map, hertz_force(params, d))));
            CHECK(x == doctest::Approx(expected).epsilon(1e-12));
            CHECK(x >= 0.0);
        }
    }
}

TEST_CASE("attenuation never lowers an in-contact target") {
    const HertzParams params = reference_hertz_params();
    const InversePlatformMap map = reference_inverse_map();
    RenderConfig low = reference_render_config();
    RenderConfig high = low;
    low.attenuation = 0.4;
    high.attenuation = 0.9;
    for (double d = 0.05; d <= 6.0; d += 0.05) {
        CHECK(position_mapping(d, map, params, high) >=
              position_mapping(d, map, params, low));
    }
}

TEST_CASE("residual force") {
    // linear unit model: platform at 1.79 mm renders exactly 1.79 N
    const PlatformModel unit{0.0, 1.0, 0.0, 0.0, 10.0};
    CHECK(residual_force(2.6, unit, 1.79) == doctest::Approx(0.81).epsilon(1e-12));
    CHECK(residual_force(0.5, unit, 1.79) == 0.0);     // clamped at zero
    CHECK(residual_force(2.6, unit, -6.0) == doctest::Approx(2.6));  // retracted platform
}

TEST_CASE("platform-only plan replays the summed grid force") {
    const TrialRecording lump = reference_trial(true);
    const TrialRecording plain = reference_trial(false);
    const RenderPlan plan_lump = plan_platform_only(lump);
    const RenderPlan plan_plain = plan_platform_only(plain);

    CHECK(plan_lump.size() == lump.size());
    CHECK(plan_lump.platform_kind == PlatformTargetKind::Force);

    double peak_lump = 0.0;
    double peak_plain = 0.0;
    for (std::size_t i = 0; i < plan_lump.size(); ++i) {
        peak_lump = std::max(peak_lump, plan_lump.ticks[i].platform_target);
        peak_plain = std::max(peak_plain, plan_plain.ticks[i].platform_target);
        CHECK(plan_lump.ticks[i].bubble_target == 0.0);
    }
    CHECK(peak_lump - peak_plain == doctest::Approx(2.66).epsilon(0.02));

    SUBCASE("all-zero trial gives an all-zero plan") {
        TrialRecording quiet;
        for (int i = 0; i < 10; ++i) {
            quiet.timestamps_s.push_back(i * kTickSeconds);
            quiet.finger_height_mm.push_back(41.0);
            quiet.force_grid_n.push_back(ForceGrid{});
        }
        const RenderPlan plan = plan_platform_only(quiet);
        for (const PlanTick& tick : plan.ticks) {
            CHECK(tick.platform_target == 0.0);
            CHECK(tick.bubble_target == 0.0);
        }
    }
}

TEST_CASE("hybrid A plan: retraction, residual bounds, reference magnitudes") {
    const TrialRecording lump = reference_trial(true);
    const DeviceModels models = reference_models();
    const HertzParams params = reference_hertz_params();
    const RenderConfig cfg = reference_render_config();
    const RenderPlan plan = plan_hybrid_a(lump, models, params, cfg);
    const KinematicSeries kin = indentation_depth(lump);

    const double capability = eval_bubble(models.bubble, models.bubble.p_max);
    double sustain_peak = 0.0;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        const PlanTick& tick = plan.ticks[i];
        CHECK(tick.bubble_target >= 0.0);
        CHECK(tick.bubble_target <= capability + 1e-12);
        if (kin.depth_mm[i] <= 0.0) {
            CHECK(tick.platform_target == cfg.x_retract_mm);
            CHECK(tick.bubble_target == 0.0);
        }
        sustain_peak = std::max(sustain_peak, tick.bubble_target);
    }
    CHECK(sustain_peak >= 0.9);  // bubble augmentation magnitude on the reference device
}

TEST_CASE("hybrid B holds one constant pressure per poke") {
    const TrialRecording lump = reference_trial(true);
    const DeviceModels models = reference_models();
    const HertzParams params = reference_hertz_params();
    const RenderConfig cfg = reference_render_config();
    const auto events = segment_pokes(lump, SegmentationConfig{});
    REQUIRE(events.size() == 3);

    const HybridBPlan result =
        plan_hybrid_b(lump, models, params, cfg, events, HybridBMode::Preloaded);
    const RenderPlan& plan = result.plan;

    // independent oracle: recompute each sustain mean from the residual
    // series and invert through the closed form
    const auto residuals = residual_series(lump, models, params, cfg);
    for (std::size_t k = 0; k < events.size(); ++k) {
        const PokeEvent& ev = result.events[k];
        REQUIRE(ev.has_sustain);
        double mean = 0.0;
        for (std::size_t j = ev.sustain_start; j <= ev.sustain_end; ++j) mean += residuals[j];
        mean /= static_cast<double>(ev.sustain_end - ev.sustain_start + 1);
        const double expected_kpa = invert_bubble(models.bubble, mean);
        CHECK(ev.sustain_mean_residual_n == doctest::Approx(mean).epsilon(1e-12));

        // exactly one distinct value over the contact span, zero variance
        const double level = plan.ticks[ev.start_index].bubble_target;
        CHECK(level == doctest::Approx(expected_kpa).epsilon(1e-9));
        for (std::size_t j = ev.start_index; j <= ev.end_index; ++j) {
            CHECK(plan.ticks[j].bubble_target == level);
            CHECK(plan.ticks[j].poke_id == static_cast<std::int32_t>(k));
        }
    }
    // zero between pokes
    for (std::size_t i = 0; i < plan.size(); ++i) {
        if (plan.ticks[i].poke_id < 0) CHECK(plan.ticks[i].bubble_target == 0.0);
    }
}

TEST_CASE("hybrid B causal mode shifts pressures by one poke") {
    const TrialRecording lump = reference_trial(true);
    const DeviceModels models = reference_models();
    const HertzParams params = reference_hertz_params();
    const RenderConfig cfg = reference_render_config();
    const auto events = segment_pokes(lump, SegmentationConfig{});

    const HybridBPlan preloaded =
        plan_hybrid_b(lump, models, params, cfg, events, HybridBMode::Preloaded);
    const HybridBPlan causal =
        plan_hybrid_b(lump, models, params, cfg, events, HybridBMode::Causal);

    auto level = [](const HybridBPlan& p, std::size_t poke) {
        return p.plan.ticks[p.events[poke].start_index].bubble_target;
    };
    CHECK(level(causal, 0) == 0.0);
    CHECK(level(causal, 1) == level(preloaded, 0));
    CHECK(level(causal, 2) == level(preloaded, 1));
}

TEST_CASE("hybrid B renders a no-lump trial at effectively zero pressure") {
    const TrialRecording plain = reference_trial(false);
    const DeviceModels models = reference_models();
    const auto events = segment_pokes(plain, SegmentationConfig{});
    const HybridBPlan result = plan_hybrid_b(plain, models, reference_hertz_params(),
                                             reference_render_config(), events);
    for (const PlanTick& tick : result.plan.ticks) {
        CHECK(tick.bubble_target < 1.0);  // kPa
    }
}

TEST_CASE("hybrid strategies share the platform position sequence") {
    const TrialRecording lump = reference_trial(true);
    const DeviceModels models = reference_models();
    const HertzParams params = reference_hertz_params();
    const RenderConfig cfg = reference_render_config();
    const auto events = segment_pokes(lump, SegmentationConfig{});

    const RenderPlan a = plan_hybrid_a(lump, models, params, cfg);
    const HybridBPlan b = plan_hybrid_b(lump, models, params, cfg, events);
    REQUIRE(a.size() == b.plan.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.ticks[i].platform_target == b.plan.ticks[i].platform_target);
    }
}

TEST_CASE("plans are blind to the lump label") {
    // same seed: identical depth profile, different grids
    const TrialRecording lump = reference_trial(true);
    const TrialRecording plain = reference_trial(false);
    const DeviceModels models = reference_models();
    const HertzParams params = reference_hertz_params();
    const RenderConfig cfg = reference_render_config();

    const RenderPlan a_lump = plan_hybrid_a(lump, models, params, cfg);
    const RenderPlan a_plain = plan_hybrid_a(plain, models, params, cfg);
    for (std::size_t i = 0; i < a_lump.size(); ++i) {
        CHECK(a_lump.ticks[i].platform_target == a_plain.ticks[i].platform_target);
    }
}

TEST_CASE("empty-sustain pokes fall back to zero pressure, flagged") {
    const TrialRecording lump = reference_trial(true);
    const DeviceModels models = reference_models();
    auto events = segment_pokes(lump, SegmentationConfig{});
    events[1].has_sustain = false;  // simulate a poke with no dwell
    const HybridBPlan result = plan_hybrid_b(lump, models, reference_hertz_params(),
                                             reference_render_config(), events);
    const PokeEvent& ev = result.events[1];
    for (std::size_t j = ev.start_index; j <= ev.end_index; ++j) {
        CHECK(result.plan.ticks[j].bubble_target == 0.0);
        CHECK(result.plan.ticks[j].clamped);
    }
}

TEST_CASE("calibrated E* reproduces the sustain force at peak depth") {
    const TrialRecording lump = reference_trial(true);
    const auto events = segment_pokes(lump, SegmentationConfig{});
    const double e_star = calibrate_estar(lump, events);

    SynthOptions opts;
    const double t_peak = opts.lead_s + opts.ramp_s + 0.5 * opts.dwell_s;
    const double sustain_force = synth_total_force_at(t_peak, true, opts);
    const HertzParams calibrated{e_star, 7.5};
    CHECK(hertz_force(calibrated, opts.depth_peak_mm) ==
          doctest::Approx(sustain_force).epsilon(0.01));
}

TEST_CASE("plan files round trip") {
    const TrialRecording lump = reference_trial(true);
    const RenderPlan plan = plan_hybrid_a(lump, reference_models(),
                                          reference_hertz_params(),
                                          reference_render_config());
    const std::string path =
        (std::filesystem::temp_directory_path() / "palprender_plan.csv").string();
    save_plan(path, plan);
    const RenderPlan loaded = load_plan(path);
    REQUIRE(loaded.size() == plan.size());
    CHECK(loaded.strategy == plan.strategy);
    CHECK(loaded.platform_kind == plan.platform_kind);
    for (std::size_t i = 0; i < plan.size(); ++i) {
        CHECK(loaded.ticks[i].platform_target == plan.ticks[i].platform_target);
        CHECK(loaded.ticks[i].bubble_target == plan.ticks[i].bubble_target);
    }
    std::filesystem::remove(path);
}
