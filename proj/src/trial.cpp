#include "palprender/trial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "palprender/csv.hpp"

namespace palprender {

void validate_trial(const TrialRecording& trial) {
    const std::size_t n = trial.size();
    if (trial.finger_height_mm.size() != n || trial.force_grid_n.size() != n) {
        throw SchemaError("trial arrays have mismatched lengths");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(trial.timestamps_s[i] < trial.timestamps_s[i + 1])) {
            throw SchemaError("timestamps not strictly increasing at row " + std::to_string(i + 1));
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(trial.finger_height_mm[i] >= 0.0)) {
            throw SchemaError("negative finger height at row " + std::to_string(i));
        }
        for (double f : trial.force_grid_n[i]) {
            if (!(f >= 0.0)) throw SchemaError("negative force at row " + std::to_string(i));
        }
    }
}

TrialRecording load_trial(const std::string& path, double phantom_height_mm) {
    const std::string text = read_text_file(path);
    TrialRecording trial;
    trial.phantom_height_mm = phantom_height_mm;

    std::istringstream lines(text);
    std::string line;
    bool saw_header = false;
    std::size_t row = 0;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line.rfind("t_s,", 0) != 0) throw SchemaError("missing trial header in " + path);
            if (split_csv_line(line).size() != 18) {
                throw SchemaError("trial header must have 18 columns");
            }
            saw_header = true;
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 18) {
            throw SchemaError("row " + std::to_string(row) + " has " +
                              std::to_string(fields.size()) + " columns, expected 18");
        }
        trial.timestamps_s.push_back(parse_double(fields[0]));
        trial.finger_height_mm.push_back(parse_double(fields[1]));
        ForceGrid grid{};
        for (int c = 0; c < 16; ++c) grid[static_cast<std::size_t>(c)] = parse_double(fields[c + 2]);
        trial.force_grid_n.push_back(grid);
        ++row;
    }
    if (!saw_header || trial.size() == 0) throw SchemaError("empty trial file " + path);
    validate_trial(trial);
    return trial;
}

void save_trial(const std::string& path, const TrialRecording& trial) {
    std::string out = "t_s,z_mm";
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out += ",f" + std::to_string(r) + std::to_string(c);
    out += '\n';
    for (std::size_t i = 0; i < trial.size(); ++i) {
        out += format_double(trial.timestamps_s[i]);
        out += ',';
        out += format_double(trial.finger_height_mm[i]);
        for (double f : trial.force_grid_n[i]) {
            out += ',';
            out += format_double(f);
        }
        out += '\n';
    }
    write_text_file(path, out);
}

namespace {

bool on_exact_grid(const std::vector<double>& t) {
    const double t0 = t.front();
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] != t0 + static_cast<double>(i) * kTickSeconds) return false;
    }
    return true;
}

// Piecewise-linear sample at time t; exact when t hits an input timestamp.
double interp_at(const std::vector<double>& ts, const std::vector<double>& vs,
                 double t, std::size_t& hint) {
    while (hint + 2 < ts.size() && ts[hint + 1] <= t) ++hint;
    if (t == ts[hint]) return vs[hint];
    const double u = (t - ts[hint]) / (ts[hint + 1] - ts[hint]);
    return vs[hint] + u * (vs[hint + 1] - vs[hint]);
}

}  // namespace

TrialRecording resample_to_100hz(const TrialRecording& trial) {
    if (trial.size() < 2) throw std::invalid_argument("resample needs at least 2 samples");
    if (on_exact_grid(trial.timestamps_s)) return trial;

    const double t0 = trial.timestamps_s.front();
    const double t_end = trial.timestamps_s.back();
    const auto count =
        static_cast<std::size_t>(std::floor((t_end - t0) / kTickSeconds + 1e-9)) + 1;

    TrialRecording out;
    out.phantom_height_mm = trial.phantom_height_mm;
    out.lump_label = trial.lump_label;
    out.timestamps_s.resize(count);
    out.finger_height_mm.resize(count);
    out.force_grid_n.resize(count);

    std::size_t hint_z = 0;
    std::vector<double> cell(trial.size());
    // interpolate height, then each grid cell with its own pass
    for (std::size_t k = 0; k < count; ++k) {
        const double t = t0 + static_cast<double>(k) * kTickSeconds;
        out.timestamps_s[k] = t;
        out.finger_height_mm[k] = interp_at(trial.timestamps_s, trial.finger_height_mm, t, hint_z);
    }
    for (std::size_t c = 0; c < 16; ++c) {
        for (std::size_t i = 0; i < trial.size(); ++i) cell[i] = trial.force_grid_n[i][c];
        std::size_t hint = 0;
        for (std::size_t k = 0; k < count; ++k) {
            const double t = t0 + static_cast<double>(k) * kTickSeconds;
            out.force_grid_n[k][c] = interp_at(trial.timestamps_s, cell, t, hint);
        }
    }
    return out;
}

double total_force(const ForceGrid& grid) {
    double sum = 0.0;
    for (double f : grid) sum += f;
    return sum;
}

std::vector<double> total_force_series(const TrialRecording& trial) {
    std::vector<double> out(trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i) out[i] = total_force(trial.force_grid_n[i]);
    return out;
}

KinematicSeries indentation_depth(const TrialRecording& trial) {
    KinematicSeries series;
    series.depth_mm.resize(trial.size());
    for (std::size_t i = 0; i < trial.size(); ++i) {
        series.depth_mm[i] = trial.phantom_height_mm - trial.finger_height_mm[i];
    }
    return series;
}

}  // namespace palprender
