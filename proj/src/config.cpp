#include "palprender/config.hpp"

#include <map>
#include <sstream>

#include "palprender/csv.hpp"

namespace palprender {

namespace {

using KvMap = std::map<std::string, double>;  // "section.key" -> value

KvMap parse_sections(const std::string& text) {
    KvMap kv;
    std::istringstream lines(text);
    std::string line;
    std::string section;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        if (line[start] == '#' || line[start] == ';') continue;
        if (line[start] == '[') {
            const auto close = line.find(']', start);
            section = line.substr(start + 1, close - start - 1);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(start, eq - start);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::string value = line.substr(eq + 1);
        const auto vstart = value.find_first_not_of(" \t");
        if (vstart == std::string::npos) continue;
        const auto vend = value.find_last_not_of(" \t");
        kv[section + "." + key] = parse_double(
            std::string_view(value).substr(vstart, vend - vstart + 1));
    }
    return kv;
}

void fetch(const KvMap& kv, const std::string& name, double& into) {
    const auto it = kv.find(name);
    if (it != kv.end()) into = it->second;
}

void fetch_gains(const KvMap& kv, const std::string& section, PdGains& gains) {
    fetch(kv, section + ".kp", gains.kp);
    fetch(kv, section + ".kd", gains.kd);
    fetch(kv, section + ".out_min", gains.out_min);
    fetch(kv, section + ".out_max", gains.out_max);
    fetch(kv, section + ".rate_limit", gains.rate_limit);
}

void emit_gains(std::string& out, const std::string& section, const PdGains& gains) {
    out += "[" + section + "]\n";
    out += "kp=" + format_double(gains.kp) + "\n";
    out += "kd=" + format_double(gains.kd) + "\n";
    out += "out_min=" + format_double(gains.out_min) + "\n";
    out += "out_max=" + format_double(gains.out_max) + "\n";
    out += "rate_limit=" + format_double(gains.rate_limit) + "\n\n";
}

}  // namespace

AppConfig load_config(const std::string& path) {
    AppConfig config;
    const KvMap kv = parse_sections(read_text_file(path));

    fetch(kv, "render.x_retract_mm", config.render.x_retract_mm);
    fetch(kv, "render.contact_force_baseline_n", config.render.contact_force_baseline_n);
    fetch(kv, "render.attenuation", config.render.attenuation);
    fetch(kv, "render.platform_x_max_mm", config.render.platform_x_max_mm);
    fetch(kv, "hertz.e_star", config.hertz.e_star);
    fetch(kv, "hertz.radius_mm", config.hertz.radius_mm);
    fetch(kv, "segmentation.d_contact_mm", config.segmentation.d_contact_mm);
    fetch(kv, "segmentation.v_thresh_mm_s", config.segmentation.v_thresh_mm_s);
    double window = config.segmentation.smoothing_window;
    fetch(kv, "segmentation.smoothing_window", window);
    config.segmentation.smoothing_window = static_cast<int>(window);
    fetch_gains(kv, "platform_force_pd", config.gains.platform_force_pd);
    fetch_gains(kv, "platform_pos_pd", config.gains.platform_pos_pd);
    fetch_gains(kv, "bubble_fb_pd", config.gains.bubble_fb_pd);
    fetch(kv, "platform_plant.max_speed_mm_s", config.platform_max_speed_mm_s);
    fetch(kv, "platform_plant.travel_min_mm", config.platform_travel_min_mm);
    fetch(kv, "platform_plant.travel_max_mm", config.platform_travel_max_mm);
    fetch(kv, "platform_plant.noise_std_n", config.platform_noise_std_n);
    fetch(kv, "bubble_plant.dead_time_s", config.bubble_dead_time_s);
    fetch(kv, "bubble_plant.time_constant_s", config.bubble_time_constant_s);
    fetch(kv, "bubble_plant.dead_time_jitter_s", config.bubble_dead_time_jitter_s);
    fetch(kv, "sim.plant_mismatch", config.plant_mismatch);
    return config;
}

void save_config(const std::string& path, const AppConfig& config) {
    std::string out;
    out += "[render]\n";
    out += "x_retract_mm=" + format_double(config.render.x_retract_mm) + "\n";
    out += "contact_force_baseline_n=" +
           format_double(config.render.contact_force_baseline_n) + "\n";
    out += "attenuation=" + format_double(config.render.attenuation) + "\n";
    out += "platform_x_max_mm=" + format_double(config.render.platform_x_max_mm) + "\n\n";
    out += "[hertz]\n";
    out += "e_star=" + format_double(config.hertz.e_star) + "\n";
    out += "radius_mm=" + format_double(config.hertz.radius_mm) + "\n\n";
    out += "[segmentation]\n";
    out += "d_contact_mm=" + format_double(config.segmentation.d_contact_mm) + "\n";
    out += "v_thresh_mm_s=" + format_double(config.segmentation.v_thresh_mm_s) + "\n";
    out += "smoothing_window=" + std::to_string(config.segmentation.smoothing_window) + "\n\n";
    emit_gains(out, "platform_force_pd", config.gains.platform_force_pd);
    emit_gains(out, "platform_pos_pd", config.gains.platform_pos_pd);
    emit_gains(out, "bubble_fb_pd", config.gains.bubble_fb_pd);
    out += "[platform_plant]\n";
    out += "max_speed_mm_s=" + format_double(config.platform_max_speed_mm_s) + "\n";
    out += "travel_min_mm=" + format_double(config.platform_travel_min_mm) + "\n";
    out += "travel_max_mm=" + format_double(config.platform_travel_max_mm) + "\n";
    out += "noise_std_n=" + format_double(config.platform_noise_std_n) + "\n\n";
    out += "[bubble_plant]\n";
    out += "dead_time_s=" + format_double(config.bubble_dead_time_s) + "\n";
    out += "time_constant_s=" + format_double(config.bubble_time_constant_s) + "\n";
    out += "dead_time_jitter_s=" + format_double(config.bubble_dead_time_jitter_s) + "\n\n";
    out += "[sim]\n";
    out += "plant_mismatch=" + format_double(config.plant_mismatch) + "\n";
    write_text_file(path, out);
}

}  // namespace palprender
