#pragma once

// Adaptive Dormand-Prince 5(4) integrator for Eigen dense states.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "coop/errors.hpp"

namespace coop {

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-11;
    double h0 = 0.0; // 0 picks from the first interval
    double h_min = 1e-14;
    long max_steps = 20000000;
};

template <class State>
double dp_error_norm(const State& err, const State& y0, const State& y1, const OdeOptions& o) {
    auto scale = (y0.array().abs().max(y1.array().abs()) * o.rtol + o.atol);
    return (err.array().abs() / scale).maxCoeff();
}

// Integrates y' = f(t, y) and records y at each requested time (times[0] is the start).
// The observer is called as obs(index, t, y).
template <class State, class Rhs, class Observer>
void integrate_dopri5(Rhs&& f, State y, const std::vector<double>& times, Observer&& obs,
                      const OdeOptions& opt = {}) {
    if (times.empty()) return;
    for (std::size_t i = 1; i < times.size(); ++i)
        require(times[i] >= times[i - 1], "output times must be non-decreasing");

    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = times.front();
    obs(std::size_t{0}, t, y);
    const double span = times.back() - t;
    if (span <= 0.0) {
        for (std::size_t i = 1; i < times.size(); ++i) obs(i, times[i], y);
        return;
    }
    double h = opt.h0 > 0.0 ? opt.h0 : std::max(span * 1e-4, opt.h_min * 10);
    State k1 = f(t, y);
    long steps = 0;
    for (std::size_t idx = 1; idx < times.size(); ++idx) {
        const double target = times[idx];
        while (t < target) {
            if (++steps > opt.max_steps)
                fail(ErrorKind::Stiffness, "step budget exhausted; problem looks stiff");
            bool last = false;
            double hs = h;
            if (t + hs >= target) {
                hs = target - t;
                last = true;
            }
            State k2 = f(t + c2 * hs, State(y + hs * a21 * k1));
            State k3 = f(t + c3 * hs, State(y + hs * (a31 * k1 + a32 * k2)));
            State k4 = f(t + c4 * hs, State(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
            State k5 = f(t + c5 * hs, State(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
            State k6 = f(t + hs,
                         State(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
            State ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            State k7 = f(t + hs, ynew);
            State err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            double en = dp_error_norm(err, y, ynew, opt);
            if (!std::isfinite(en))
                fail(ErrorKind::Numerical, "non-finite value during integration");
            if (en <= 1.0) {
                t = last ? target : t + hs;
                y = std::move(ynew);
                k1 = std::move(k7);
                double fac = en == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(en, -0.2));
                if (!last || fac < 1.0) h = hs * std::max(fac, 0.2);
            } else {
                h = hs * std::max(0.2, 0.9 * std::pow(en, -0.2));
                if (h < opt.h_min)
                    fail(ErrorKind::Stiffness,
                         "step size underflow; reduce the Hilbert dimension or use a steady-state solve");
            }
        }
        obs(idx, t, y);
    }
}

template <class State, class Rhs>
std::vector<State> integrate_dopri5(Rhs&& f, const State& y0, const std::vector<double>& times,
                                    const OdeOptions& opt = {}) {
    std::vector<State> out(times.size());
    integrate_dopri5<State>(std::forward<Rhs>(f), y0, times,
                            [&](std::size_t i, double, const State& y) { out[i] = y; }, opt);
    return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

} // namespace coop
