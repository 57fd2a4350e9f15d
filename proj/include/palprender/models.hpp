#ifndef PALPRENDER_MODELS_HPP
#define PALPRENDER_MODELS_HPP

#include <string>

namespace palprender {

// Rigid platform statics: F = k2 x^2 + k1 x + k0, x in mm, F in N.
// Valid (non-decreasing, F(x_min) >= 0) on [x_min, x_max].
struct PlatformModel {
    double k2 = 0.0;  // N/mm^2
    double k1 = 0.0;  // N/mm
    double k0 = 0.0;  // N
    double x_min = 0.0;
    double x_max = 10.0;
};

// Quadratic force->position map: x = alpha F^2 + beta F + gamma,
// fitted against a forward platform model; domain is that model's
// force range.
struct InversePlatformMap {
    double alpha = 0.0;  // mm/N^2
    double beta = 0.0;   // mm/N
    double gamma = 0.0;  // mm
    double f_min = 0.0;
    double f_max = 0.0;
};

// Pneumatic bubble statics: F = a P^b + c2, P in kPa, F in N,
// valid on [0, p_max].
struct BubbleModel {
    double a = 0.0;   // N/kPa^b
    double b = 1.0;   // dimensionless
    double c2 = 0.0;  // N
    double p_max = 41.0;
};

// true if 2 k2 x + k1 >= 0 across the domain and F(x_min) >= 0.
bool platform_model_valid(const PlatformModel& m);
bool bubble_model_valid(const BubbleModel& m);

// Force-span check over [0, p_max]: a monotone power law spans
// [eval(0), eval(p_max)], which must fall inside [f_lo - tol, f_hi + tol].
bool bubble_span_within(const BubbleModel& m, double f_lo, double f_hi, double tol);

// Evaluations clamp out-of-domain arguments instead of throwing: a
// controller must never crash mid-loop. `clamped`, when non-null, is set
// to true if clamping occurred (left untouched otherwise).
double eval_platform(const PlatformModel& m, double x_mm, bool* clamped = nullptr);
double eval_inverse(const InversePlatformMap& m, double force_n, bool* clamped = nullptr);
double eval_bubble(const BubbleModel& m, double pressure_kpa, bool* clamped = nullptr);

// P = ((F - c2)/a)^(1/b); F below c2 clamps to 0 kPa, F above the model
// ceiling clamps to p_max.
double invert_bubble(const BubbleModel& m, double force_n, bool* clamped = nullptr);

// Flat key-value model files with a model_type discriminator.
void save_platform_model(const std::string& path, const PlatformModel& m);
void save_inverse_map(const std::string& path, const InversePlatformMap& m);
void save_bubble_model(const std::string& path, const BubbleModel& m);
PlatformModel load_platform_model(const std::string& path);
InversePlatformMap load_inverse_map(const std::string& path);
BubbleModel load_bubble_model(const std::string& path);

}  // namespace palprender

#endif
