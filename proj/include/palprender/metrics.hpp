#ifndef PALPRENDER_METRICS_HPP
#define PALPRENDER_METRICS_HPP

#include <vector>

#include "palprender/rendering.hpp"
#include "palprender/simulator.hpp"

namespace palprender {

double rmse(const std::vector<double>& a, const std::vector<double>& b);

// Sample Pearson correlation; defined as 0 (with degenerate flag) when
// either series is constant.
double pearson_r(const std::vector<double>& a, const std::vector<double>& b,
                 bool* degenerate = nullptr);

struct TrackingReport {
    double rmse = 0.0;
    double pearson = 0.0;
    double max_desired = 0.0;   // over contact samples only
    double max_rendered = 0.0;
    bool degenerate = false;
};

// Desired vs rendered: total force for force plans, platform position for
// position plans. Maxima are taken over contact samples so retract
// transients do not pollute them.
TrackingReport tracking_report(const SimTrace& trace);

struct AugmentationReport {
    double baseline_peak_n = 0.0;
    double augmented_peak_n = 0.0;
    double bubble_contribution_n = 0.0;  // augmented - baseline
};

// Peak totals over contact spans of two aligned traces of the same plan,
// bubble enabled vs disabled. Throws on tick misalignment.
AugmentationReport augmentation_report(const SimTrace& with_bubble,
                                       const SimTrace& without_bubble);

struct LumpDecision {
    int winner = -1;       // 0 = first input, 1 = second, -1 = undecided
    double margin = 0.0;   // |score_a - score_b|
    double score_a = 0.0;
    double score_b = 0.0;
};

// Signal-level analogue of the two-alternative choice: the member with
// the larger score wins. Hybrid strategies score the mean sustain-phase
// residual; PlatformOnly scores the contact-span peak total force. Ties
// below the threshold are undecided.
LumpDecision classify_lump(const TrialRecording& trial_a, const TrialRecording& trial_b,
                           const DeviceModels& models, const HertzParams& params,
                           const RenderConfig& cfg, const SegmentationConfig& seg,
                           Strategy strategy, double threshold_n = 0.05);

// Same decision rule applied to simulated traces (peak contact totals).
LumpDecision classify_lump_traces(const SimTrace& trace_a, const SimTrace& trace_b,
                                  double threshold_n = 0.05);

}  // namespace palprender

#endif
