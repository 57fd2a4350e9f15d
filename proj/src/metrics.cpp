#include "palprender/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace palprender {

double rmse(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rmse: length mismatch");
    if (a.empty()) throw std::invalid_argument("rmse: empty series");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(sum / static_cast<double>(a.size()));
}

double pearson_r(const std::vector<double>& a, const std::vector<double>& b, bool* degenerate) {
    if (a.size() != b.size()) throw std::invalid_argument("pearson_r: length mismatch");
    if (a.size() < 2) throw std::invalid_argument("pearson_r: need at least 2 samples");
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) {
        if (degenerate) *degenerate = true;
        return 0.0;
    }
    return cov / std::sqrt(var_a * var_b);
}

namespace {

// Retract/idle ticks are excluded from the maxima. Contact is inferred
// from the desired channel: force plans rest at 0, position plans rest at
// the retract position.
bool in_contact(const SimTrace& trace, const TraceTick& row) {
    if (trace.desired_kind == PlatformTargetKind::Force) return row.desired > 1e-9;
    return row.desired > trace.x_retract_mm + 1e-9;
}

}  // namespace

TrackingReport tracking_report(const SimTrace& trace) {
    if (trace.ticks.empty()) throw std::invalid_argument("empty trace");
    std::vector<double> desired(trace.size());
    std::vector<double> rendered(trace.size());
    const bool force_kind = trace.desired_kind == PlatformTargetKind::Force;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        desired[i] = trace.ticks[i].desired;
        rendered[i] = force_kind ? trace.ticks[i].total_n : trace.ticks[i].platform_mm;
    }
    TrackingReport report;
    report.rmse = rmse(desired, rendered);
    report.pearson = pearson_r(desired, rendered, &report.degenerate);
    bool any_contact = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (!in_contact(trace, trace.ticks[i])) continue;
        if (!any_contact) {
            report.max_desired = desired[i];
            report.max_rendered = rendered[i];
            any_contact = true;
        } else {
            report.max_desired = std::max(report.max_desired, desired[i]);
            report.max_rendered = std::max(report.max_rendered, rendered[i]);
        }
    }
    return report;
}

AugmentationReport augmentation_report(const SimTrace& with_bubble,
                                       const SimTrace& without_bubble) {
    if (with_bubble.size() != without_bubble.size()) {
        throw std::invalid_argument("augmentation_report: trace lengths differ");
    }
    for (std::size_t i = 0; i < with_bubble.size(); ++i) {
        if (with_bubble.ticks[i].t_s != without_bubble.ticks[i].t_s) {
            throw std::invalid_argument("augmentation_report: tick misalignment");
        }
    }
    AugmentationReport report;
    bool any = false;
    for (std::size_t i = 0; i < with_bubble.size(); ++i) {
        if (!in_contact(with_bubble, with_bubble.ticks[i])) continue;
        const double aug = with_bubble.ticks[i].total_n;
        const double base = without_bubble.ticks[i].total_n;
        if (!any) {
            report.augmented_peak_n = aug;
            report.baseline_peak_n = base;
            any = true;
        } else {
            report.augmented_peak_n = std::max(report.augmented_peak_n, aug);
            report.baseline_peak_n = std::max(report.baseline_peak_n, base);
        }
    }
    report.bubble_contribution_n = report.augmented_peak_n - report.baseline_peak_n;
    return report;
}

namespace {

// Hybrid A renders the per-tick residual, so its score is the mean over
// all sustain ticks; Hybrid B renders one constant level per poke, so its
// score averages the per-poke sustain means instead.
double hybrid_residual_score(const TrialRecording& trial, const DeviceModels& models,
                             const HertzParams& params, const RenderConfig& cfg,
                             const SegmentationConfig& seg, Strategy strategy,
                             bool* has_sustain) {
    const auto events = segment_pokes(trial, seg);
    const auto residuals = residual_series(trial, models, params, cfg);
    double tick_sum = 0.0;
    std::size_t tick_count = 0;
    double poke_sum = 0.0;
    std::size_t poke_count = 0;
    for (const PokeEvent& ev : events) {
        if (!ev.has_sustain) continue;
        double mean = 0.0;
        for (std::size_t j = ev.sustain_start; j <= ev.sustain_end; ++j) {
            tick_sum += residuals[j];
            ++tick_count;
            mean += residuals[j];
        }
        poke_sum += mean / static_cast<double>(ev.sustain_end - ev.sustain_start + 1);
        ++poke_count;
    }
    if (has_sustain) *has_sustain = tick_count > 0;
    if (tick_count == 0) return 0.0;
    if (strategy == Strategy::HybridB) return poke_sum / static_cast<double>(poke_count);
    return tick_sum / static_cast<double>(tick_count);
}

double peak_contact_total(const TrialRecording& trial, const SegmentationConfig& seg) {
    const KinematicSeries kin = indentation_depth(trial);
    const auto totals = total_force_series(trial);
    double peak = 0.0;
    for (std::size_t i = 0; i < trial.size(); ++i) {
        if (kin.depth_mm[i] >= seg.d_contact_mm) peak = std::max(peak, totals[i]);
    }
    return peak;
}

LumpDecision decide(double score_a, double score_b, double threshold) {
    LumpDecision decision;
    decision.score_a = score_a;
    decision.score_b = score_b;
    decision.margin = std::abs(score_a - score_b);
    if (decision.margin < threshold) {
        decision.winner = -1;
    } else {
        decision.winner = score_a > score_b ? 0 : 1;
    }
    return decision;
}

}  // namespace

LumpDecision classify_lump(const TrialRecording& trial_a, const TrialRecording& trial_b,
                           const DeviceModels& models, const HertzParams& params,
                           const RenderConfig& cfg, const SegmentationConfig& seg,
                           Strategy strategy, double threshold_n) {
    if (strategy == Strategy::PlatformOnly) {
        return decide(peak_contact_total(trial_a, seg), peak_contact_total(trial_b, seg),
                      threshold_n);
    }
    bool sustain_a = false;
    bool sustain_b = false;
    const double score_a =
        hybrid_residual_score(trial_a, models, params, cfg, seg, strategy, &sustain_a);
    const double score_b =
        hybrid_residual_score(trial_b, models, params, cfg, seg, strategy, &sustain_b);
    if (!sustain_a && !sustain_b) {
        throw std::invalid_argument("classify_lump: no sustain phase in either trial");
    }
    return decide(score_a, score_b, threshold_n);
}

LumpDecision classify_lump_traces(const SimTrace& trace_a, const SimTrace& trace_b,
                                  double threshold_n) {
    auto peak = [](const SimTrace& trace) {
        double best = 0.0;
        for (const TraceTick& row : trace.ticks) {
            if (in_contact(trace, row)) best = std::max(best, row.total_n);
        }
        return best;
    };
    return decide(peak(trace_a), peak(trace_b), threshold_n);
}

}  // namespace palprender
