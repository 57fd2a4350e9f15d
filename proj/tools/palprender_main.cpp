// palprender: synthesize palpation trials, fit device models, segment
// pokes, build render plans, run the closed-loop simulator, and compare
// lump/no-lump recordings.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

#include "palprender/config.hpp"
#include "palprender/csv.hpp"
#include "palprender/fitting.hpp"
#include "palprender/metrics.hpp"
#include "palprender/reference.hpp"

using namespace palprender;
using nlohmann::json;

namespace {

Samples load_samples(const std::string& path) {
    const std::string text = read_text_file(path);
    Samples samples;
    std::istringstream lines(text);
    std::string line;
    bool first = true;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (first) {  // header: x_mm,F_N or P_kpa,F_N
            first = false;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 2) throw SchemaError("sample rows need 2 columns");
        samples.emplace_back(parse_double(fields[0]), parse_double(fields[1]));
    }
    if (samples.empty()) throw SchemaError("no samples in " + path);
    return samples;
}

DeviceModels load_models_dir(const std::string& dir) {
    DeviceModels models;
    models.platform = load_platform_model(dir + "/platform.txt");
    models.bubble = load_bubble_model(dir + "/bubble.txt");
    const std::string inverse_path = dir + "/inverse.txt";
    if (std::filesystem::exists(inverse_path)) {
        models.inverse = load_inverse_map(inverse_path);
    } else {
        models.inverse = fit_inverse_map(models.platform);
    }
    return models;
}

AppConfig load_config_or_default(const std::string& path) {
    if (path.empty()) return reference_config();
    return load_config(path);
}

PlatformPlant plant_from_config(const AppConfig& cfg) {
    PlatformPlant plant;
    plant.max_speed_mm_s = cfg.platform_max_speed_mm_s;
    plant.travel_min_mm = cfg.platform_travel_min_mm;
    plant.travel_max_mm = cfg.platform_travel_max_mm;
    plant.noise_std_n = cfg.platform_noise_std_n;
    return plant;
}

BubblePlant bubble_from_config(const AppConfig& cfg) {
    BubblePlant plant;
    plant.dead_time_s = cfg.bubble_dead_time_s;
    plant.time_constant_s = cfg.bubble_time_constant_s;
    return plant;
}

RenderPlan build_plan(const TrialRecording& trial, const DeviceModels& models,
                      const AppConfig& cfg, Strategy strategy, HybridBMode mode) {
    switch (strategy) {
        case Strategy::PlatformOnly:
            return plan_platform_only(trial);
        case Strategy::HybridA:
            return plan_hybrid_a(trial, models, cfg.hertz, cfg.render);
        case Strategy::HybridB: {
            const auto events = segment_pokes(trial, cfg.segmentation);
            return plan_hybrid_b(trial, models, cfg.hertz, cfg.render, events, mode).plan;
        }
    }
    throw std::logic_error("unreachable");
}

SimTrace run_from_config(const RenderPlan& plan, const DeviceModels& models,
                         const AppConfig& cfg, std::uint64_t seed, bool bubble_enabled) {
    PlatformPlant platform = plant_from_config(cfg);
    platform.force_model = models.platform;
    BubblePlant bubble = bubble_from_config(cfg);
    bubble.force_model = models.bubble;
    SimOptions options;
    options.contact_force_baseline_n = cfg.render.contact_force_baseline_n;
    options.bubble_enabled = bubble_enabled;
    options.plant_mismatch = cfg.plant_mismatch;
    options.dead_time_jitter_s = cfg.bubble_dead_time_jitter_s;
    return run_simulation(plan, cfg.gains, platform, bubble, seed, options);
}

json strategy_report(const TrialRecording& lump, const TrialRecording& plain,
                     const DeviceModels& models, const AppConfig& cfg,
                     Strategy strategy, std::uint64_t seed) {
    json entry;
    const RenderPlan plan_lump =
        build_plan(lump, models, cfg, strategy, HybridBMode::Preloaded);
    const RenderPlan plan_plain =
        build_plan(plain, models, cfg, strategy, HybridBMode::Preloaded);
    const SimTrace trace_lump = run_from_config(plan_lump, models, cfg, seed, true);
    const SimTrace trace_plain = run_from_config(plan_plain, models, cfg, seed, true);

    const TrackingReport tracking = tracking_report(trace_lump);
    entry["tracking_rmse"] = tracking.rmse;
    entry["tracking_r"] = tracking.pearson;
    entry["peak_desired"] = tracking.max_desired;
    entry["peak_rendered"] = tracking.max_rendered;

    if (strategy != Strategy::PlatformOnly) {
        const SimTrace baseline = run_from_config(plan_lump, models, cfg, seed, false);
        const AugmentationReport aug = augmentation_report(trace_lump, baseline);
        entry["baseline_peak_n"] = aug.baseline_peak_n;
        entry["augmented_peak_n"] = aug.augmented_peak_n;
        entry["bubble_contribution_n"] = aug.bubble_contribution_n;
    }

    const LumpDecision decision = classify_lump(lump, plain, models, cfg.hertz, cfg.render,
                                                cfg.segmentation, strategy);
    entry["classified_lump_first"] = decision.winner == 0;
    entry["classification_margin"] = decision.margin;
    entry["trace_peak_margin"] = classify_lump_traces(trace_lump, trace_plain).margin;
    return entry;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid platform + pneumatic bubble palpation renderer"};
    app.require_subcommand(1);

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "Generate a synthetic palpation trial");
    int pokes = 3;
    double depth_peak = 5.0, rate = 100.0, depth_jitter = 0.0, force_noise = 0.0;
    bool lump = false, session = false;
    std::uint64_t seed = 7;
    std::string out_path;
    synth->add_option("--pokes", pokes, "Number of pokes");
    synth->add_option("--depth-peak", depth_peak, "Peak indentation depth [mm]");
    synth->add_option("--rate", rate, "Sampling rate [Hz]");
    synth->add_option("--depth-jitter", depth_jitter, "Per-poke peak jitter [mm]");
    synth->add_option("--force-noise", force_noise, "Per-cell force noise sigma [N]");
    synth->add_flag("--lump", lump, "Embed a stiff inclusion");
    synth->add_flag("--session", session,
                    "25 s validation sequence (plain pokes then lump pokes)");
    synth->add_option("--seed", seed, "Random seed");
    synth->add_option("-o,--output", out_path, "Output trial CSV")->required();

    // ---- fit ----
    auto* fit = app.add_subcommand("fit", "Fit a characterization model from samples");
    std::string fit_kind, fit_input, fit_output;
    fit->add_option("kind", fit_kind, "platform or bubble")
        ->check(CLI::IsMember({"platform", "bubble"}))
        ->required();
    fit->add_option("-i,--input", fit_input, "Sample CSV (x_mm,F_N or P_kpa,F_N)")
        ->required();
    fit->add_option("-o,--output", fit_output, "Output model file")->required();

    // ---- segment ----
    auto* segment = app.add_subcommand("segment", "Segment a trial into poke events");
    std::string seg_input, seg_output, seg_config;
    segment->add_option("-i,--input", seg_input, "Trial CSV")->required();
    segment->add_option("-o,--output", seg_output, "Events CSV")->required();
    segment->add_option("-c,--config", seg_config, "Config file");

    // ---- plan ----
    auto* plan_cmd = app.add_subcommand("plan", "Build a per-tick render plan");
    std::string plan_strategy = "hybrid-a", plan_mode = "preloaded";
    std::string plan_input, plan_models, plan_output, plan_config;
    plan_cmd->add_option("--strategy", plan_strategy, "platform-only, hybrid-a, hybrid-b")
        ->check(CLI::IsMember({"platform-only", "hybrid-a", "hybrid-b"}));
    plan_cmd->add_option("--mode", plan_mode, "hybrid-b pressure source")
        ->check(CLI::IsMember({"preloaded", "causal"}));
    plan_cmd->add_option("-i,--input", plan_input, "Trial CSV")->required();
    plan_cmd->add_option("-m,--models", plan_models, "Model directory")->required();
    plan_cmd->add_option("-c,--config", plan_config, "Config file");
    plan_cmd->add_option("-o,--output", plan_output, "Plan CSV")->required();

    // ---- simulate ----
    auto* sim_cmd = app.add_subcommand("simulate", "Run the 100 Hz closed-loop simulator");
    std::string sim_strategy = "hybrid-a", sim_mode = "preloaded";
    std::string sim_input, sim_models, sim_output, sim_config;
    std::uint64_t sim_seed = 7;
    bool sim_no_bubble = false, sim_report = false;
    sim_cmd->add_option("--strategy", sim_strategy, "platform-only, hybrid-a, hybrid-b")
        ->check(CLI::IsMember({"platform-only", "hybrid-a", "hybrid-b"}));
    sim_cmd->add_option("--mode", sim_mode, "hybrid-b pressure source")
        ->check(CLI::IsMember({"preloaded", "causal"}));
    sim_cmd->add_option("-i,--input", sim_input, "Trial CSV")->required();
    sim_cmd->add_option("-m,--models", sim_models, "Model directory")->required();
    sim_cmd->add_option("-c,--config", sim_config, "Config file");
    sim_cmd->add_option("--seed", sim_seed, "Simulation seed");
    sim_cmd->add_flag("--no-bubble", sim_no_bubble, "Disable the bubble actuator");
    sim_cmd->add_flag("--report", sim_report, "Print the tracking report");
    sim_cmd->add_option("-o,--output", sim_output, "Trace CSV")->required();

    // ---- compare ----
    auto* compare = app.add_subcommand("compare", "Compare a lump/no-lump trial pair");
    std::string cmp_strategy = "all";
    std::string cmp_lump, cmp_plain, cmp_models, cmp_output, cmp_config;
    std::uint64_t cmp_seed = 7;
    compare->add_option("--strategy", cmp_strategy,
                        "platform-only, hybrid-a, hybrid-b, or all")
        ->check(CLI::IsMember({"platform-only", "hybrid-a", "hybrid-b", "all"}));
    compare->add_option("-i,--lump", cmp_lump, "Lump trial CSV")->required();
    compare->add_option("-j,--no-lump", cmp_plain, "No-lump trial CSV")->required();
    compare->add_option("-m,--models", cmp_models, "Model directory")->required();
    compare->add_option("-c,--config", cmp_config, "Config file");
    compare->add_option("--seed", cmp_seed, "Simulation seed");
    compare->add_option("-o,--output", cmp_output, "Report JSON")->required();

    // ---- calibrate-estar ----
    auto* calib = app.add_subcommand("calibrate-estar",
                                     "Least-squares effective modulus for a trial");
    std::string calib_input, calib_config;
    calib->add_option("-i,--input", calib_input, "Trial CSV")->required();
    calib->add_option("-c,--config", calib_config, "Config file");

    // ---- gen-reference ----
    auto* genref = app.add_subcommand("gen-reference",
                                      "Write the reference models, config and datasets");
    std::string genref_dir;
    genref->add_option("-o,--output", genref_dir, "Output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*synth) {
            SynthOptions opts;
            opts.pokes = pokes;
            opts.depth_peak_mm = depth_peak;
            opts.rate_hz = rate;
            opts.depth_jitter_mm = depth_jitter;
            opts.force_noise_n = force_noise;
            const TrialRecording trial =
                session ? synth_session(seed, opts) : synth_trial(lump, opts, seed);
            save_trial(out_path, trial);
            std::printf("wrote %zu samples to %s\n", trial.size(), out_path.c_str());
        } else if (*fit) {
            const Samples samples = load_samples(fit_input);
            if (fit_kind == "platform") {
                const PlatformFit result = fit_platform_poly(samples);
                save_platform_model(fit_output, result.model);
                std::printf("platform fit: k2=%.6g k1=%.6g k0=%.6g R2=%.6f\n",
                            result.model.k2, result.model.k1, result.model.k0, result.r2);
            } else {
                const BubbleFit result = fit_bubble_powerlaw(samples);
                save_bubble_model(fit_output, result.model);
                std::printf("bubble fit: a=%.6g b=%.6g c2=%.6g R2=%.6f (%d iterations)\n",
                            result.model.a, result.model.b, result.model.c2, result.r2,
                            result.iterations);
            }
        } else if (*segment) {
            const AppConfig cfg = load_config_or_default(seg_config);
            const TrialRecording trial = resample_to_100hz(load_trial(seg_input));
            const auto events = segment_pokes(trial, cfg.segmentation);
            save_events(seg_output, events, trial.timestamps_s);
            std::printf("%zu poke events -> %s\n", events.size(), seg_output.c_str());
        } else if (*plan_cmd) {
            const AppConfig cfg = load_config_or_default(plan_config);
            const DeviceModels models = load_models_dir(plan_models);
            const TrialRecording trial = resample_to_100hz(load_trial(plan_input));
            const RenderPlan plan =
                build_plan(trial, models, cfg, strategy_from_string(plan_strategy),
                           plan_mode == "causal" ? HybridBMode::Causal
                                                 : HybridBMode::Preloaded);
            save_plan(plan_output, plan);
            std::printf("%zu ticks -> %s\n", plan.size(), plan_output.c_str());
        } else if (*sim_cmd) {
            const AppConfig cfg = load_config_or_default(sim_config);
            const DeviceModels models = load_models_dir(sim_models);
            const TrialRecording trial = resample_to_100hz(load_trial(sim_input));
            const RenderPlan plan =
                build_plan(trial, models, cfg, strategy_from_string(sim_strategy),
                           sim_mode == "causal" ? HybridBMode::Causal
                                                : HybridBMode::Preloaded);
            const SimTrace trace =
                run_from_config(plan, models, cfg, sim_seed, !sim_no_bubble);
            save_trace(sim_output, trace);
            std::printf("%zu ticks -> %s\n", trace.size(), sim_output.c_str());
            if (sim_report) {
                const TrackingReport report = tracking_report(trace);
                const char* unit =
                    trace.desired_kind == PlatformTargetKind::Force ? "N" : "mm";
                std::printf("tracking: rmse=%.4f %s, r=%.4f, peak desired=%.4f, "
                            "peak rendered=%.4f\n",
                            report.rmse, unit, report.pearson, report.max_desired,
                            report.max_rendered);
            }
        } else if (*compare) {
            const AppConfig cfg = load_config_or_default(cmp_config);
            const DeviceModels models = load_models_dir(cmp_models);
            const TrialRecording lump_trial = resample_to_100hz(load_trial(cmp_lump));
            const TrialRecording plain_trial = resample_to_100hz(load_trial(cmp_plain));

            json report;
            const auto add = [&](Strategy strategy) {
                report[to_string(strategy)] = strategy_report(
                    lump_trial, plain_trial, models, cfg, strategy, cmp_seed);
            };
            if (cmp_strategy == "all") {
                add(Strategy::PlatformOnly);
                add(Strategy::HybridA);
                add(Strategy::HybridB);
            } else {
                add(strategy_from_string(cmp_strategy));
            }
            write_text_file(cmp_output, report.dump(2) + "\n");
            std::printf("report -> %s\n", cmp_output.c_str());
        } else if (*calib) {
            const AppConfig cfg = load_config_or_default(calib_config);
            const TrialRecording trial = resample_to_100hz(load_trial(calib_input));
            const auto events = segment_pokes(trial, cfg.segmentation);
            const double e_star = calibrate_estar(trial, events, cfg.hertz.radius_mm);
            std::printf("e_star=%.10g N/mm^2 over %zu events\n", e_star, events.size());
        } else if (*genref) {
            namespace fs = std::filesystem;
            fs::create_directories(genref_dir);
            save_platform_model(genref_dir + "/platform.txt", reference_platform_model());
            save_bubble_model(genref_dir + "/bubble.txt", reference_bubble_model());
            save_inverse_map(genref_dir + "/inverse.txt", reference_inverse_map());
            save_config(genref_dir + "/config.toml", reference_config());

            std::string platform_csv = "x_mm,F_N\n";
            for (const auto& [x, f] : reference_platform_dataset(12345)) {
                platform_csv += format_double(x) + "," + format_double(f) + "\n";
            }
            write_text_file(genref_dir + "/platform_samples.csv", platform_csv);
            std::string bubble_csv = "P_kpa,F_N\n";
            for (const auto& [p, f] : reference_bubble_dataset(12345)) {
                bubble_csv += format_double(p) + "," + format_double(f) + "\n";
            }
            write_text_file(genref_dir + "/bubble_samples.csv", bubble_csv);
            std::printf("reference artifacts -> %s\n", genref_dir.c_str());
        }
    } catch (const std::exception& err) {
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
    return 0;
}
