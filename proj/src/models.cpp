#include "palprender/models.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "palprender/csv.hpp"
#include "palprender/trial.hpp"

namespace palprender {

namespace {

double clamp_flagged(double v, double lo, double hi, bool* clamped) {
    if (v < lo) {
        if (clamped) *clamped = true;
        return lo;
    }
    if (v > hi) {
        if (clamped) *clamped = true;
        return hi;
    }
    return v;
}

}  // namespace

bool platform_model_valid(const PlatformModel& m) {
    if (!(m.x_min < m.x_max)) return false;
    // derivative 2 k2 x + k1 is linear; checking the ends covers the domain
    const double slope_lo = 2.0 * m.k2 * m.x_min + m.k1;
    const double slope_hi = 2.0 * m.k2 * m.x_max + m.k1;
    if (slope_lo < 0.0 || slope_hi < 0.0) return false;
    return eval_platform(m, m.x_min) >= 0.0;
}

bool bubble_model_valid(const BubbleModel& m) {
    return m.a > 0.0 && m.b > 0.0 && m.p_max > 0.0;
}

bool bubble_span_within(const BubbleModel& m, double f_lo, double f_hi, double tol) {
    if (!bubble_model_valid(m)) return false;
    const double low = eval_bubble(m, 0.0);
    const double high = eval_bubble(m, m.p_max);
    return low >= f_lo - tol && high <= f_hi + tol;
}

double eval_platform(const PlatformModel& m, double x_mm, bool* clamped) {
    const double x = clamp_flagged(x_mm, m.x_min, m.x_max, clamped);
    return m.k2 * x * x + m.k1 * x + m.k0;
}

double eval_inverse(const InversePlatformMap& m, double force_n, bool* clamped) {
    const double f = clamp_flagged(force_n, m.f_min, m.f_max, clamped);
    return m.alpha * f * f + m.beta * f + m.gamma;
}

double eval_bubble(const BubbleModel& m, double pressure_kpa, bool* clamped) {
    const double p = clamp_flagged(pressure_kpa, 0.0, m.p_max, clamped);
    return m.a * std::pow(p, m.b) + m.c2;
}

double invert_bubble(const BubbleModel& m, double force_n, bool* clamped) {
    if (force_n < m.c2) {
        if (clamped) *clamped = true;
        return 0.0;
    }
    const double ceiling = eval_bubble(m, m.p_max);
    const double f = clamp_flagged(force_n, m.c2, ceiling, clamped);
    return std::pow((f - m.c2) / m.a, 1.0 / m.b);
}

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return kv;
}

double kv_num(const std::map<std::string, std::string>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw IoError("model file missing key " + key);
    return parse_double(it->second);
}

void expect_type(const std::map<std::string, std::string>& kv, const std::string& want) {
    const auto it = kv.find("model_type");
    if (it == kv.end() || it->second != want) {
        throw IoError("expected model_type=" + want);
    }
}

}  // namespace

void save_platform_model(const std::string& path, const PlatformModel& m) {
    std::string out = "model_type=platform\n";
    out += "k2=" + format_double(m.k2) + "\n";
    out += "k1=" + format_double(m.k1) + "\n";
    out += "k0=" + format_double(m.k0) + "\n";
    out += "x_min=" + format_double(m.x_min) + "\n";
    out += "x_max=" + format_double(m.x_max) + "\n";
    write_text_file(path, out);
}

void save_inverse_map(const std::string& path, const InversePlatformMap& m) {
    std::string out = "model_type=inverse_platform\n";
    out += "alpha=" + format_double(m.alpha) + "\n";
    out += "beta=" + format_double(m.beta) + "\n";
    out += "gamma=" + format_double(m.gamma) + "\n";
    out += "f_min=" + format_double(m.f_min) + "\n";
    out += "f_max=" + format_double(m.f_max) + "\n";
    write_text_file(path, out);
}

void save_bubble_model(const std::string& path, const BubbleModel& m) {
    std::string out = "model_type=bubble\n";
    out += "a=" + format_double(m.a) + "\n";
    out += "b=" + format_double(m.b) + "\n";
    out += "c2=" + format_double(m.c2) + "\n";
    out += "p_max=" + format_double(m.p_max) + "\n";
    write_text_file(path, out);
}

PlatformModel load_platform_model(const std::string& path) {
    const auto kv = parse_kv(read_text_file(path));
    expect_type(kv, "platform");
    PlatformModel m;
    m.k2 = kv_num(kv, "k2");
    m.k1 = kv_num(kv, "k1");
    m.k0 = kv_num(kv, "k0");
    m.x_min = kv_num(kv, "x_min");
    m.x_max = kv_num(kv, "x_max");
    return m;
}

InversePlatformMap load_inverse_map(const std::string& path) {
    const auto kv = parse_kv(read_text_file(path));
    expect_type(kv, "inverse_platform");
    InversePlatformMap m;
    m.alpha = kv_num(kv, "alpha");
    m.beta = kv_num(kv, "beta");
    m.gamma = kv_num(kv, "gamma");
    m.f_min = kv_num(kv, "f_min");
    m.f_max = kv_num(kv, "f_max");
    return m;
}

BubbleModel load_bubble_model(const std::string& path) {
    const auto kv = parse_kv(read_text_file(path));
    expect_type(kv, "bubble");
    BubbleModel m;
    m.a = kv_num(kv, "a");
    m.b = kv_num(kv, "b");
    m.c2 = kv_num(kv, "c2");
    m.p_max = kv_num(kv, "p_max");
    return m;
}

}  // namespace palprender
