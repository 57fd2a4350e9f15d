#ifndef PALPRENDER_TRIAL_HPP
#define PALPRENDER_TRIAL_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace palprender {

// Thrown when a trial file does not conform to the expected layout
// (wrong column count, non-monotone time, negative force, empty file).
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

using ForceGrid = std::array<double, 16>;  // 4x4 fingertip cells [N], row-major

// One palpation recording: synchronized finger height and force-grid
// samples. Values are immutable after construction; all operations on
// trials are pure functions.
struct TrialRecording {
    std::vector<double> timestamps_s;      // strictly increasing
    std::vector<double> finger_height_mm;  // z_finger above the table, >= 0
    std::vector<ForceGrid> force_grid_n;   // per-sample 4x4 grid, entries >= 0
    double phantom_height_mm = 39.0;
    std::optional<bool> lump_label;        // metadata only; never read by planners

    std::size_t size() const { return timestamps_s.size(); }
};

// Depth d = H_phantom - z_finger [mm] and its time derivative [mm/s].
// Depth is intentionally not clamped: out-of-contact samples are negative.
struct KinematicSeries {
    std::vector<double> depth_mm;
    std::vector<double> velocity_mm_s;
};

inline constexpr double kTickSeconds = 0.01;  // 100 Hz control/data rate

// Throws SchemaError/std::invalid_argument if any invariant fails.
void validate_trial(const TrialRecording& trial);

// Trial CSV: header `t_s,z_mm,f00,...,f33`, one row per sample, numbers
// formatted with shortest round-trip-exact notation.
TrialRecording load_trial(const std::string& path, double phantom_height_mm = 39.0);
void save_trial(const std::string& path, const TrialRecording& trial);

// Linear resampling onto the exact 10 ms grid t0 + k*dt covering [t0, tN].
// An input already on that grid is returned value-identical, so the
// operation is idempotent. Requires at least 2 samples.
TrialRecording resample_to_100hz(const TrialRecording& trial);

// Sum of all 16 cells [N].
double total_force(const ForceGrid& grid);

// Per-sample totals for a whole trial.
std::vector<double> total_force_series(const TrialRecording& trial);

// depth[i] = phantom_height - finger_height[i]; velocity left empty.
KinematicSeries indentation_depth(const TrialRecording& trial);

}  // namespace palprender

#endif
