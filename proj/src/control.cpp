#include "palprender/control.hpp"

#include <algorithm>
#include <stdexcept>

namespace palprender {

PdResult pd_step(const PdGains& gains, ControllerState& state, double error, double dt_s) {
    if (!(dt_s > 0.0)) throw std::invalid_argument("dt must be positive");

    double delta = gains.kp * error;
    if (state.initialized) {
        delta += gains.kd * (error - state.previous_error) / dt_s;
    }

    PdResult result;
    const double max_delta = gains.rate_limit * dt_s;
    if (delta > max_delta) {
        delta = max_delta;
        result.rate_limited = true;
    } else if (delta < -max_delta) {
        delta = -max_delta;
        result.rate_limited = true;
    }

    double output = state.previous_output + delta;
    if (output > gains.out_max) {
        output = gains.out_max;
        result.output_clamped = true;
    } else if (output < gains.out_min) {
        output = gains.out_min;
        result.output_clamped = true;
    }

    result.delta = output - state.previous_output;
    result.output = output;
    state.previous_error = error;
    state.previous_output = output;
    state.initialized = true;
    return result;
}

double bubble_ff_fb_step(const BubbleModel& model, const PdGains& gains,
                         ControllerState& state, double residual_target_n,
                         double residual_measured_n, double dt_s) {
    if (!(dt_s > 0.0)) throw std::invalid_argument("dt must be positive");
    const double feedforward = invert_bubble(model, residual_target_n);
    const double error = residual_target_n - residual_measured_n;
    double correction = gains.kp * error;
    if (state.initialized) {
        correction += gains.kd * (error - state.previous_error) / dt_s;
    }
    state.previous_error = error;
    state.initialized = true;
    const double command = std::clamp(feedforward + correction, 0.0, model.p_max);
    state.previous_output = command;
    return command;
}

}  // namespace palprender
