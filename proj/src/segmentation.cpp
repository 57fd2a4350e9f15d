#include "palprender/segmentation.hpp"

#include <cmath>
#include <stdexcept>

#include "palprender/csv.hpp"

namespace palprender {

const char* to_string(PokePhase phase) {
    switch (phase) {
        case PokePhase::NoContact: return "no_contact";
        case PokePhase::Approach: return "approach";
        case PokePhase::Sustain: return "sustain";
        case PokePhase::Release: return "release";
    }
    return "?";
}

std::vector<double> estimate_velocity(const std::vector<double>& depth_mm,
                                      const SegmentationConfig& config) {
    const int w = config.smoothing_window;
    if (w < 1 || w % 2 == 0) throw std::invalid_argument("smoothing window must be odd and >= 1");
    const std::size_t n = depth_mm.size();
    if (n < static_cast<std::size_t>(w) + 2) throw std::invalid_argument("series too short");

    const double dt = kTickSeconds;
    std::vector<double> raw(n);
    raw[0] = (depth_mm[1] - depth_mm[0]) / dt;
    raw[n - 1] = (depth_mm[n - 1] - depth_mm[n - 2]) / dt;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        raw[i] = (depth_mm[i + 1] - depth_mm[i - 1]) / (2.0 * dt);
    }
    if (w == 1) return raw;

    // centered moving average, window shrunk symmetrically near the ends
    const int half = w / 2;
    std::vector<double> smooth(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int reach = std::min<int>({half, static_cast<int>(i),
                                         static_cast<int>(n - 1 - i)});
        double sum = 0.0;
        for (int k = -reach; k <= reach; ++k) {
            sum += raw[static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + k)];
        }
        smooth[i] = sum / static_cast<double>(2 * reach + 1);
    }
    return smooth;
}

PokePhase classify_phase(double depth_mm, double depth_velocity_mm_s,
                         const SegmentationConfig& config) {
    if (depth_mm < config.d_contact_mm) return PokePhase::NoContact;
    if (depth_velocity_mm_s > config.v_thresh_mm_s) return PokePhase::Approach;
    if (depth_velocity_mm_s < -config.v_thresh_mm_s) return PokePhase::Release;
    return PokePhase::Sustain;
}

std::vector<PokePhase> label_phases(const std::vector<double>& depth_mm,
                                    const std::vector<double>& velocity_mm_s,
                                    const SegmentationConfig& config) {
    if (depth_mm.size() != velocity_mm_s.size()) {
        throw std::invalid_argument("depth and velocity lengths differ");
    }
    std::vector<PokePhase> phases(depth_mm.size());
    for (std::size_t i = 0; i < depth_mm.size(); ++i) {
        phases[i] = classify_phase(depth_mm[i], velocity_mm_s[i], config);
    }
    return phases;
}

std::vector<PokeEvent> segment_pokes(const TrialRecording& trial,
                                     const SegmentationConfig& config) {
    const KinematicSeries kin = indentation_depth(trial);
    const std::vector<double> velocity = estimate_velocity(kin.depth_mm, config);
    const std::vector<PokePhase> phases = label_phases(kin.depth_mm, velocity, config);

    std::vector<PokeEvent> events;
    const std::size_t n = kin.depth_mm.size();
    std::size_t i = 0;
    while (i < n) {
        if (kin.depth_mm[i] < config.d_contact_mm) {
            ++i;
            continue;
        }
        PokeEvent ev;
        ev.start_index = i;
        while (i < n && kin.depth_mm[i] >= config.d_contact_mm) ++i;
        ev.end_index = i - 1;

        double depth_sum = 0.0;
        std::size_t count = 0;
        for (std::size_t j = ev.start_index; j <= ev.end_index; ++j) {
            if (phases[j] != PokePhase::Sustain) continue;
            if (!ev.has_sustain) {
                ev.has_sustain = true;
                ev.sustain_start = j;
            }
            ev.sustain_end = j;
            depth_sum += kin.depth_mm[j];
            ++count;
        }
        if (ev.has_sustain) ev.sustain_mean_depth_mm = depth_sum / static_cast<double>(count);
        events.push_back(ev);
    }
    return events;
}

void save_events(const std::string& path, const std::vector<PokeEvent>& events,
                 const std::vector<double>& timestamps_s) {
    std::string out = "poke_id,start_s,end_s,sustain_start_s,sustain_end_s,mean_depth_mm\n";
    for (std::size_t k = 0; k < events.size(); ++k) {
        const PokeEvent& ev = events[k];
        out += std::to_string(k);
        out += ',' + format_double(timestamps_s.at(ev.start_index));
        out += ',' + format_double(timestamps_s.at(ev.end_index));
        if (ev.has_sustain) {
            out += ',' + format_double(timestamps_s.at(ev.sustain_start));
            out += ',' + format_double(timestamps_s.at(ev.sustain_end));
            out += ',' + format_double(ev.sustain_mean_depth_mm);
        } else {
            out += ",,,";
        }
        out += '\n';
    }
    write_text_file(path, out);
}

}  // namespace palprender
