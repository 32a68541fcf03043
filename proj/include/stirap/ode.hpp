#pragma once

// Explicit Runge-Kutta drivers for fixed-size Eigen states (complex vectors or
// matrices). Both drivers land exactly on every requested sample time.

#include <algorithm>
#include <cmath>
#include <span>
#include <sstream>

#include "stirap/errors.hpp"

namespace stirap::ode {

struct AdaptiveOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double max_step = 1e-3;
    double initial_step = 1e-4;
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
    long rhs_evaluations = 0;
};

/// Scaled max-norm error estimate used by the adaptive controller.
template <class State>
double error_norm(const State& err, const State& y0, const State& y1, double atol, double rtol) {
    const auto scale = (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array());
    return (err.cwiseAbs().array() / scale).maxCoeff();
}

template <class State>
bool all_finite(const State& y) {
    return y.allFinite();
}

/// Dormand-Prince 5(4) with FSAL and a standard I-controller.
///
/// `rhs(t, y, dydt)` evaluates the derivative, `observe(index, t, y)` is
/// called once per sample time (samples must be increasing, the first equal to
/// the start time), and `post_step(y)` may project the state after each
/// accepted step.
template <class State, class Rhs, class Observe, class PostStep>
StepStats dormand_prince(Rhs&& rhs, State& y, std::span<const double> samples,
                         const AdaptiveOptions& opt, Observe&& observe, PostStep&& post_step) {
    // Butcher tableau.
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b_hat
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    constexpr double safety = 0.9, min_factor = 0.2, max_factor = 5.0;

    StepStats stats;
    if (samples.empty()) return stats;

    double t = samples.front();
    observe(std::size_t{0}, t, y);

    State k1, k2, k3, k4, k5, k6, k7, y_new, err;
    rhs(t, y, k1);
    ++stats.rhs_evaluations;

    double h = std::min(opt.initial_step, opt.max_step);
    for (std::size_t next = 1; next < samples.size(); ++next) {
        const double target = samples[next];
        while (t < target) {
            const double remaining = target - t;
            const double eps = 1e-12 * std::max(1.0, std::abs(t));
            if (h <= 1e-2 * eps) {
                std::ostringstream msg;
                msg << "step size underflow (h = " << h << ") at t = " << t;
                throw IntegrationError(msg.str(), t);
            }
            // Never leave a sliver shorter than eps before the sample time.
            const bool clipped = h >= remaining - eps;
            const double step = clipped ? remaining : h;

            rhs(t + c2 * step, y + step * (a21 * k1), k2);
            rhs(t + c3 * step, y + step * (a31 * k1 + a32 * k2), k3);
            rhs(t + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3), k4);
            rhs(t + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5);
            rhs(t + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
            y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            rhs(t + step, y_new, k7);
            stats.rhs_evaluations += 6;

            err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double en = error_norm(err, y, y_new, opt.abs_tol, opt.rel_tol);
            if (!std::isfinite(en) || !all_finite(y_new)) {
                ++stats.rejected;
                h = step * min_factor;
                continue;
            }

            const double factor =
                en == 0.0 ? max_factor : std::clamp(safety * std::pow(en, -0.2), min_factor, max_factor);
            if (en <= 1.0) {
                t = clipped ? target : t + step;
                y = y_new;
                post_step(y);
                k1 = k7;
                ++stats.accepted;
                // A step shortened to land on a sample says nothing about the
                // natural step size; keep the previous proposal in that case.
                if (!clipped) h = std::min(step * factor, opt.max_step);
            } else {
                ++stats.rejected;
                h = step * std::min(1.0, factor);
            }
        }
        observe(next, t, y);
    }
    return stats;
}

/// Classical fourth-order Runge-Kutta. Each sample interval is split into
/// ceil(interval / max_step) equal steps.
template <class State, class Rhs, class Observe, class PostStep>
StepStats rk4(Rhs&& rhs, State& y, std::span<const double> samples, double max_step,
              Observe&& observe, PostStep&& post_step) {
    StepStats stats;
    if (samples.empty()) return stats;
    double t = samples.front();
    observe(std::size_t{0}, t, y);

    State k1, k2, k3, k4;
    for (std::size_t next = 1; next < samples.size(); ++next) {
        const double t_begin = samples[next - 1];
        const double interval = samples[next] - t_begin;
        const auto n = static_cast<long>(std::ceil(interval / max_step - 1e-9));
        const double h = interval / static_cast<double>(std::max(1L, n));
        for (long i = 0; i < std::max(1L, n); ++i) {
            t = t_begin + static_cast<double>(i) * h;
            rhs(t, y, k1);
            rhs(t + 0.5 * h, y + (0.5 * h) * k1, k2);
            rhs(t + 0.5 * h, y + (0.5 * h) * k2, k3);
            rhs(t + h, y + h * k3, k4);
            y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            post_step(y);
            stats.rhs_evaluations += 4;
            ++stats.accepted;
            if (!all_finite(y)) throw IntegrationError("non-finite state in fixed-step integration", t);
        }
        t = samples[next];
        observe(next, t, y);
    }
    return stats;
}

}  // namespace stirap::ode
