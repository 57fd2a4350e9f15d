#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "palprender/fitting.hpp"
#include "palprender/metrics.hpp"
#include "palprender/reference.hpp"

namespace py = pybind11;
using namespace palprender;

namespace {

std::vector<double> plan_platform_targets(const RenderPlan& plan) {
    std::vector<double> out(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) out[i] = plan.ticks[i].platform_target;
    return out;
}

std::vector<double> plan_bubble_targets(const RenderPlan& plan) {
    std::vector<double> out(plan.size());
    for (std::size_t i = 0; i < plan.size(); ++i) out[i] = plan.ticks[i].bubble_target;
    return out;
}

std::vector<double> trace_column(const SimTrace& trace, double TraceTick::*member) {
    std::vector<double> out(trace.size());
    for (std::size_t i = 0; i < trace.size(); ++i) out[i] = trace.ticks[i].*member;
    return out;
}

SimTrace simulate_reference(const RenderPlan& plan, std::uint64_t seed, bool bubble_enabled) {
    SimOptions options;
    options.bubble_enabled = bubble_enabled;
    return run_simulation(plan, reference_gains(), reference_platform_plant(),
                          reference_bubble_plant(), seed, options);
}

}  // namespace

PYBIND11_MODULE(_palprender, m) {
    m.doc() = "Hybrid platform + pneumatic bubble palpation rendering and simulation";

    py::class_<TrialRecording>(m, "TrialRecording")
        .def_readonly("timestamps_s", &TrialRecording::timestamps_s)
        .def_readonly("finger_height_mm", &TrialRecording::finger_height_mm)
        .def_readonly("phantom_height_mm", &TrialRecording::phantom_height_mm)
        .def("__len__", &TrialRecording::size)
        .def("total_force", [](const TrialRecording& t) { return total_force_series(t); })
        .def("depth", [](const TrialRecording& t) { return indentation_depth(t).depth_mm; });

    py::class_<PokeEvent>(m, "PokeEvent")
        .def_readonly("start_index", &PokeEvent::start_index)
        .def_readonly("end_index", &PokeEvent::end_index)
        .def_readonly("sustain_start", &PokeEvent::sustain_start)
        .def_readonly("sustain_end", &PokeEvent::sustain_end)
        .def_readonly("has_sustain", &PokeEvent::has_sustain)
        .def_readonly("sustain_mean_depth_mm", &PokeEvent::sustain_mean_depth_mm)
        .def_readonly("sustain_mean_residual_n", &PokeEvent::sustain_mean_residual_n);

    py::enum_<Strategy>(m, "Strategy")
        .value("PLATFORM_ONLY", Strategy::PlatformOnly)
        .value("HYBRID_A", Strategy::HybridA)
        .value("HYBRID_B", Strategy::HybridB);

    py::class_<RenderPlan>(m, "RenderPlan")
        .def("__len__", &RenderPlan::size)
        .def_readonly("strategy", &RenderPlan::strategy)
        .def("platform_targets", &plan_platform_targets)
        .def("bubble_targets", &plan_bubble_targets);

    py::class_<SimTrace>(m, "SimTrace")
        .def("__len__", &SimTrace::size)
        .def("desired", [](const SimTrace& t) { return trace_column(t, &TraceTick::desired); })
        .def("platform_mm",
             [](const SimTrace& t) { return trace_column(t, &TraceTick::platform_mm); })
        .def("platform_n",
             [](const SimTrace& t) { return trace_column(t, &TraceTick::platform_n); })
        .def("bubble_kpa",
             [](const SimTrace& t) { return trace_column(t, &TraceTick::bubble_kpa); })
        .def("bubble_n", [](const SimTrace& t) { return trace_column(t, &TraceTick::bubble_n); })
        .def("total_n", [](const SimTrace& t) { return trace_column(t, &TraceTick::total_n); });

    py::class_<TrackingReport>(m, "TrackingReport")
        .def_readonly("rmse", &TrackingReport::rmse)
        .def_readonly("pearson", &TrackingReport::pearson)
        .def_readonly("max_desired", &TrackingReport::max_desired)
        .def_readonly("max_rendered", &TrackingReport::max_rendered);

    py::class_<AugmentationReport>(m, "AugmentationReport")
        .def_readonly("baseline_peak_n", &AugmentationReport::baseline_peak_n)
        .def_readonly("augmented_peak_n", &AugmentationReport::augmented_peak_n)
        .def_readonly("bubble_contribution_n", &AugmentationReport::bubble_contribution_n);

    py::class_<LumpDecision>(m, "LumpDecision")
        .def_readonly("winner", &LumpDecision::winner)
        .def_readonly("margin", &LumpDecision::margin)
        .def_readonly("score_a", &LumpDecision::score_a)
        .def_readonly("score_b", &LumpDecision::score_b);

    py::class_<PlatformModel>(m, "PlatformModel")
        .def_readonly("k2", &PlatformModel::k2)
        .def_readonly("k1", &PlatformModel::k1)
        .def_readonly("k0", &PlatformModel::k0);

    py::class_<BubbleModel>(m, "BubbleModel")
        .def_readonly("a", &BubbleModel::a)
        .def_readonly("b", &BubbleModel::b)
        .def_readonly("c2", &BubbleModel::c2)
        .def_readonly("p_max", &BubbleModel::p_max);

    // trial synthesis and IO
    m.def("synth_trial",
          [](bool lump, int pokes, double depth_peak, double rate, std::uint64_t seed) {
              return synth_trial(lump, pokes, depth_peak, rate, seed);
          },
          py::arg("lump"), py::arg("pokes") = 3, py::arg("depth_peak") = 5.0,
          py::arg("rate") = 100.0, py::arg("seed") = 7);
    m.def("synth_session", [](std::uint64_t seed) { return synth_session(seed); },
          py::arg("seed") = 7);
    m.def("load_trial", &load_trial, py::arg("path"), py::arg("phantom_height_mm") = 39.0);
    m.def("save_trial", &save_trial);
    m.def("resample_to_100hz", &resample_to_100hz);

    // segmentation
    m.def("segment_pokes",
          [](const TrialRecording& trial) { return segment_pokes(trial, {}); });

    // characterization
    m.def("hertz_force",
          [](double e_star, double radius, double depth) {
              return hertz_force(HertzParams{e_star, radius}, depth);
          },
          py::arg("e_star"), py::arg("radius_mm"), py::arg("depth_mm"));
    m.def("fit_platform_poly", [](const Samples& samples) {
        const PlatformFit fit = fit_platform_poly(samples);
        return py::make_tuple(fit.model, fit.r2);
    });
    m.def("fit_bubble_powerlaw", [](const Samples& samples) {
        const BubbleFit fit = fit_bubble_powerlaw(samples);
        return py::make_tuple(fit.model, fit.r2);
    });
    m.def("reference_platform_model", &reference_platform_model);
    m.def("reference_bubble_model", &reference_bubble_model);

    // planning against the reference device
    m.def("plan_platform_only", &plan_platform_only);
    m.def("plan_hybrid_a", [](const TrialRecording& trial) {
        return plan_hybrid_a(trial, reference_models(), reference_hertz_params(),
                             reference_render_config());
    });
    m.def("plan_hybrid_b",
          [](const TrialRecording& trial, bool causal) {
              const auto events = segment_pokes(trial, {});
              const HybridBPlan result = plan_hybrid_b(
                  trial, reference_models(), reference_hertz_params(),
                  reference_render_config(), events,
                  causal ? HybridBMode::Causal : HybridBMode::Preloaded);
              return py::make_tuple(result.plan, result.events);
          },
          py::arg("trial"), py::arg("causal") = false);

    // simulation and metrics
    m.def("simulate", &simulate_reference, py::arg("plan"), py::arg("seed") = 7,
          py::arg("bubble_enabled") = true);
    m.def("rmse", &rmse);
    m.def("pearson_r",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              return pearson_r(a, b);
          });
    m.def("tracking_report", &tracking_report);
    m.def("augmentation_report", &augmentation_report);
    m.def("classify_lump",
          [](const TrialRecording& a, const TrialRecording& b, Strategy strategy) {
              return classify_lump(a, b, reference_models(), reference_hertz_params(),
                                   reference_render_config(), {}, strategy);
          },
          py::arg("trial_a"), py::arg("trial_b"),
          py::arg("strategy") = Strategy::HybridA);
}
