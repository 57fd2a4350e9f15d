#ifndef PALPRENDER_CONTROL_HPP
#define PALPRENDER_CONTROL_HPP

#include "palprender/models.hpp"

namespace palprender {

struct PdGains {
    double kp = 0.0;          // output units per error unit
    double kd = 0.0;          // output units per (error unit / s)
    double out_min = -1e9;
    double out_max = 1e9;
    double rate_limit = 1e9;  // output units per second, > 0
};

// Single-owner mutable state; one instance per control loop.
struct ControllerState {
    double previous_error = 0.0;
    double previous_output = 0.0;
    bool initialized = false;

    void reset(double initial_output = 0.0) {
        previous_error = 0.0;
        previous_output = initial_output;
        initialized = false;
    }
};

struct PdResult {
    double delta = 0.0;   // applied output change after limits
    double output = 0.0;  // accumulated output after clamping
    bool rate_limited = false;
    bool output_clamped = false;
};

// Incremental PD: delta = kp e + kd (e - e_prev)/dt, rate-limited to
// rate_limit*dt, then accumulated into an output clamped to
// [out_min, out_max]. The derivative acts on the error and is suppressed
// on the first step after reset.
PdResult pd_step(const PdGains& gains, ControllerState& state, double error, double dt_s);

// Feedforward model inversion plus a PD correction on the residual-force
// error, clamped to [0, p_max]. The gains' kp/kd act in kPa per N.
double bubble_ff_fb_step(const BubbleModel& model, const PdGains& gains,
                         ControllerState& state, double residual_target_n,
                         double residual_measured_n, double dt_s);

}  // namespace palprender

#endif
