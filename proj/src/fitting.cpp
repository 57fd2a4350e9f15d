#include "palprender/fitting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace palprender {

double r_squared(const std::vector<double>& observed, const std::vector<double>& predicted) {
    if (observed.size() != predicted.size() || observed.empty()) {
        throw std::invalid_argument("r_squared needs equal-length non-empty series");
    }
    double mean = 0.0;
    for (double y : observed) mean += y;
    mean /= static_cast<double>(observed.size());
    double ss_res = 0.0;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
        ss_tot += (observed[i] - mean) * (observed[i] - mean);
    }
    if (ss_tot == 0.0) return ss_res == 0.0 ? 1.0 : 0.0;
    return 1.0 - ss_res / ss_tot;
}

namespace {

// Solve A x = b for a symmetric 3x3 system by Gaussian elimination with
// partial pivoting. Small enough that a library would be overkill.
std::array<double, 3> solve3(std::array<std::array<double, 4>, 3> m) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-12) throw FitError("singular normal equations");
        std::swap(m[col], m[pivot]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double factor = m[r][col] / m[col][col];
            for (int c = col; c < 4; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    return {m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
}

// Least-squares quadratic y = c2 x^2 + c1 x + c0.
std::array<double, 3> quad_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::array<std::array<double, 4>, 3> m{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xi = x[i];
        const std::array<double, 3> basis{xi * xi, xi, 1.0};
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) m[r][c] += basis[r] * basis[c];
            m[r][3] += basis[r] * y[i];
        }
    }
    return solve3(m);
}

}  // namespace

PlatformFit fit_platform_poly(const Samples& samples, double x_min, double x_max) {
    if (samples.size() < 3) throw FitError("need at least 3 samples");
    std::set<double> distinct;
    for (const auto& [x, f] : samples) distinct.insert(x);
    if (distinct.size() < 3) throw FitError("need at least 3 distinct displacements");

    std::vector<double> xs, fs;
    xs.reserve(samples.size());
    fs.reserve(samples.size());
    for (const auto& [x, f] : samples) {
        xs.push_back(x);
        fs.push_back(f);
    }
    const auto coef = quad_fit(xs, fs);

    PlatformFit fit;
    fit.model.k2 = coef[0];
    fit.model.k1 = coef[1];
    fit.model.k0 = coef[2];
    fit.model.x_min = x_min;
    fit.model.x_max = x_max;

    std::vector<double> predicted(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        predicted[i] = coef[0] * xs[i] * xs[i] + coef[1] * xs[i] + coef[2];
    }
    fit.r2 = r_squared(fs, predicted);
    return fit;
}

InversePlatformMap fit_inverse_map(const PlatformModel& model, int grid_points) {
    if (!platform_model_valid(model)) {
        throw FitError("inverse map requires a non-decreasing platform model");
    }
    if (grid_points < 101) grid_points = 101;

    const double f_lo = eval_platform(model, model.x_min);
    const double f_hi = eval_platform(model, model.x_max);
    if (!(f_hi > f_lo + 1e-9)) throw FitError("degenerate model: constant force over domain");

    std::vector<double> forces(static_cast<std::size_t>(grid_points));
    std::vector<double> positions(static_cast<std::size_t>(grid_points));
    const double step = (model.x_max - model.x_min) / static_cast<double>(grid_points - 1);
    for (int i = 0; i < grid_points; ++i) {
        const double x = model.x_min + step * static_cast<double>(i);
        positions[static_cast<std::size_t>(i)] = x;
        forces[static_cast<std::size_t>(i)] = eval_platform(model, x);
    }
    const auto coef = quad_fit(forces, positions);

    InversePlatformMap map;
    map.alpha = coef[0];
    map.beta = coef[1];
    map.gamma = coef[2];
    map.f_min = f_lo;
    map.f_max = f_hi;
    return map;
}

namespace {

struct PowerLawDesign {
    std::vector<double> p;
    std::vector<double> f;
};

// Initial (a, b, c2) from a log-log line through (P, F - min F), skipping
// the non-positive shifted points.
std::array<double, 3> powerlaw_init(const PowerLawDesign& d) {
    const double f_min = *std::min_element(d.f.begin(), d.f.end());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (std::size_t i = 0; i < d.p.size(); ++i) {
        const double shifted = d.f[i] - f_min;
        if (d.p[i] <= 0.0 || shifted <= 0.0) continue;
        const double lx = std::log(d.p[i]);
        const double ly = std::log(shifted);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw FitError("not enough positive samples for log-log initialization");
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    if (std::abs(denom) < 1e-12) throw FitError("rank-deficient log-log initialization");
    const double b0 = (static_cast<double>(n) * sxy - sx * sy) / denom;
    const double log_a0 = (sy - b0 * sx) / static_cast<double>(n);
    return {std::exp(log_a0), std::max(b0, 1e-3), f_min};
}

}  // namespace

BubbleFit fit_bubble_powerlaw(const Samples& samples, double p_max, int max_iterations) {
    if (samples.size() < 4) throw FitError("need at least 4 samples");
    std::set<double> positive;
    for (const auto& [p, f] : samples) {
        if (p < 0.0) throw FitError("negative pressure sample");
        if (p > 0.0) positive.insert(p);
    }
    if (positive.size() < 3) throw FitError("need at least 3 distinct positive pressures");

    PowerLawDesign d;
    for (const auto& [p, f] : samples) {
        d.p.push_back(p);
        d.f.push_back(f);
    }

    auto theta = powerlaw_init(d);  // (a, b, c2)
    const std::size_t n = d.p.size();
    std::vector<double> residuals(n);

    auto sum_sq_residuals = [&](const std::array<double, 3>& th) {
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double model = th[0] * std::pow(d.p[i], th[1]) + th[2];
            residuals[i] = d.f[i] - model;
            ss += residuals[i] * residuals[i];
        }
        return ss;
    };

    // Damped Gauss-Newton: J^T J scaled by (1 + lambda) on the diagonal.
    double lambda = 1e-3;
    double ss = sum_sq_residuals(theta);
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        std::array<std::array<double, 4>, 3> normal{};
        for (std::size_t i = 0; i < n; ++i) {
            const double pb = std::pow(d.p[i], theta[1]);
            // d model / d b -> a p^b ln p, with the p = 0 limit of 0 for b > 0
            const double dlog = d.p[i] > 0.0 ? theta[0] * pb * std::log(d.p[i]) : 0.0;
            const std::array<double, 3> jac{pb, dlog, 1.0};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) normal[r][c] += jac[r] * jac[c];
                normal[r][3] += jac[r] * residuals[i];
            }
        }
        for (int r = 0; r < 3; ++r) normal[r][r] *= 1.0 + lambda;

        std::array<double, 3> step{};
        try {
            step = solve3(normal);
        } catch (const FitError&) {
            lambda *= 10.0;
            if (lambda > 1e12) throw FitError("power-law fit: singular system");
            continue;
        }

        std::array<double, 3> candidate{theta[0] + step[0], theta[1] + step[1],
                                        theta[2] + step[2]};
        if (candidate[0] <= 0.0 || candidate[1] <= 0.0) {
            lambda *= 10.0;
            if (lambda > 1e12) throw FitError("power-law fit left the valid parameter region");
            continue;
        }
        const double candidate_ss = sum_sq_residuals(candidate);
        if (candidate_ss <= ss) {
            const double rel_step =
                std::sqrt(step[0] * step[0] + step[1] * step[1] + step[2] * step[2]) /
                (1.0 + std::sqrt(theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2]));
            theta = candidate;
            ss = candidate_ss;
            lambda = std::max(lambda * 0.5, 1e-12);
            if (rel_step < 1e-10) break;
        } else {
            sum_sq_residuals(theta);  // restore residuals for the next Jacobian
            lambda *= 10.0;
            if (lambda > 1e12) throw FitError("power-law fit failed to converge");
        }
    }
    if (iter == max_iterations) throw FitError("power-law fit: iteration limit reached");

    BubbleFit fit;
    fit.model.a = theta[0];
    fit.model.b = theta[1];
    fit.model.c2 = theta[2];
    fit.model.p_max = p_max;
    fit.iterations = iter;

    std::vector<double> predicted(n);
    for (std::size_t i = 0; i < n; ++i) {
        predicted[i] = theta[0] * std::pow(d.p[i], theta[1]) + theta[2];
    }
    fit.r2 = r_squared(d.f, predicted);
    return fit;
}

}  // namespace palprender
