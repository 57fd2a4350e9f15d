#ifndef PALPRENDER_FITTING_HPP
#define PALPRENDER_FITTING_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "palprender/models.hpp"

namespace palprender {

struct FitError : std::runtime_error {
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

// (x, y) observation pairs: (displacement mm, force N) for the platform,
// (pressure kPa, force N) for the bubble.
using Samples = std::vector<std::pair<double, double>>;

// Coefficient of determination, 1 - SS_res/SS_tot. A zero-variance
// target is defined as R^2 = 1 when residuals vanish, 0 otherwise.
double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted);

struct PlatformFit {
    PlatformModel model;
    double r2 = 0.0;
};

struct BubbleFit {
    BubbleModel model;
    double r2 = 0.0;
    int iterations = 0;
};

// Ordinary least squares quadratic. Needs >= 3 samples over >= 3 distinct
// displacements; throws FitError on rank deficiency.
PlatformFit fit_platform_poly(const Samples& samples,
                              double x_min = 0.0, double x_max = 10.0);

// Least-squares quadratic of x against F over a dense forward-model grid
// (grid_points >= 101). The returned map's domain is the model's force
// range. Throws FitError for non-monotone or degenerate models.
InversePlatformMap fit_inverse_map(const PlatformModel& model, int grid_points = 101);

// Nonlinear least squares for F = a P^b + c2 via damped Gauss-Newton,
// initialized from a log-log linear fit of (P, F - min F). Needs >= 4
// samples with >= 3 distinct positive pressures. Relative step tolerance
// 1e-10, max 100 iterations; throws FitError on non-convergence.
BubbleFit fit_bubble_powerlaw(const Samples& samples, double p_max = 41.0,
                              int max_iterations = 100);

}  // namespace palprender

#endif
