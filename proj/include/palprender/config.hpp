#ifndef PALPRENDER_CONFIG_HPP
#define PALPRENDER_CONFIG_HPP

#include <string>

#include "palprender/control.hpp"
#include "palprender/rendering.hpp"
#include "palprender/segmentation.hpp"
#include "palprender/simulator.hpp"

namespace palprender {

// Everything tunable in one flat, sectioned key-value file.
struct AppConfig {
    RenderConfig render;
    HertzParams hertz;
    SegmentationConfig segmentation;
    SimGains gains;
    double platform_max_speed_mm_s = 50.0;
    double platform_travel_min_mm = -8.0;
    double platform_travel_max_mm = 11.0;
    double platform_noise_std_n = 0.0;
    double bubble_dead_time_s = 0.16465;
    double bubble_time_constant_s = 0.05;
    double bubble_dead_time_jitter_s = 0.0;
    double plant_mismatch = 0.0;
};

AppConfig load_config(const std::string& path);
void save_config(const std::string& path, const AppConfig& config);

}  // namespace palprender

#endif
