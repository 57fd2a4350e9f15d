#ifndef PALPRENDER_RNG_HPP
#define PALPRENDER_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace palprender {

// Deterministic draws built directly on mt19937_64 output. The standard
// distributions are implementation-defined, which would break the
// byte-identical trace contract, so uniforms and normals are derived by
// fixed formulas here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // in [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Box-Muller; one spare kept between calls.
    double normal(double mean = 0.0, double std_dev = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mean + std_dev * spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.141592653589793238462643383279502884 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return mean + std_dev * radius * std::cos(angle);
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace palprender

#endif
