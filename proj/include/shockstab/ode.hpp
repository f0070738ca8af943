#pragma once

// Dormand-Prince 5(4) with FSAL and standard step-size control.  Works on any
// fixed or dynamic Eigen column vector (real or complex entries).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "shockstab/error.hpp"

namespace shockstab {

struct OdeOptions {
    double abs_tol = 1e-6;
    double rel_tol = 1e-8;
    double initial_step = 0.0;  // 0: automatic
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 200000;
    // Measure abs_tol relative to the max-norm of the state.  Natural for
    // linear problems, whose solutions may be rescaled freely.
    bool scale_invariant = false;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

namespace detail {

template <class V>
double scaled_error(const V& err, const V& y0, const V& y1, const OdeOptions& o) {
    using std::abs;
    double atol = o.abs_tol;
    if (o.scale_invariant) {
        double n = 0;
        for (Eigen::Index i = 0; i < y0.size(); ++i) n = std::max({n, abs(y0[i]), abs(y1[i])});
        atol *= n > 0 ? n : 1.0;
    }
    double e = 0.0;
    for (Eigen::Index i = 0; i < err.size(); ++i) {
        const double sc = atol + o.rel_tol * std::max(abs(y0[i]), abs(y1[i]));
        const double r = abs(err[i]) / sc;
        if (!(r <= e)) e = r;  // also propagates NaN
    }
    return e;
}

}  // namespace detail

// Integrates y' = f(x, y) from x0 to x1 (either direction).  After every
// accepted step observer(x, y) is called; it may modify y in place (e.g. to
// re-orthonormalize) and returns false to stop early.  Returns the final x.
template <class V, class F, class Obs>
double integrate_dopri5(F&& f, double x0, double x1, V& y, const OdeOptions& o, OdeStats* stats,
                        Obs&& observer) {
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
    // b - b_hat
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    OdeStats local;
    OdeStats& st = stats ? *stats : local;
    const double span = x1 - x0;
    if (span == 0.0) return x0;
    const double dir = span > 0 ? 1.0 : -1.0;

    V k1 = f(x0, y);
    ++st.evaluations;

    double h = o.initial_step;
    if (h <= 0.0) {
        // Hairer-Wanner starting step heuristic
        double d0 = 0, d1 = 0;
        using std::abs;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc = o.abs_tol + o.rel_tol * abs(y[i]);
            d0 = std::max(d0, abs(y[i]) / sc);
            d1 = std::max(d1, abs(k1[i]) / sc);
        }
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::min(h, std::abs(span));
    }
    h = std::min({h, o.max_step, std::abs(span)});

    double x = x0;
    std::size_t steps = 0;
    double err_prev = 1e-4;
    bool last_rejected = false;
    while (dir * (x1 - x) > 0.0) {
        if (++steps > o.max_steps) {
            std::ostringstream os;
            os << "integrator exceeded " << o.max_steps << " steps at x=" << x << " (h=" << h << ", "
               << st.rejected << " rejections)";
            fail(ErrorKind::numerical, os.str(), {os.str()});
        }
        const double rem = std::abs(x1 - x);
        bool final_step = false;
        if (h >= rem) {
            h = rem;
            final_step = true;
        }
        const double hs = dir * h;
        V k2 = f(x + c2 * hs, V(y + hs * (a21 * k1)));
        V k3 = f(x + c3 * hs, V(y + hs * (a31 * k1 + a32 * k2)));
        V k4 = f(x + c4 * hs, V(y + hs * (a41 * k1 + a42 * k2 + a43 * k3)));
        V k5 = f(x + c5 * hs, V(y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)));
        V k6 = f(x + hs, V(y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)));
        V y1 = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        V k7 = f(x + hs, y1);
        st.evaluations += 6;
        V errv = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = detail::scaled_error(errv, y, y1, o);
        if (!std::isfinite(err)) {
            h *= 0.25;
            ++st.rejected;
            last_rejected = true;
            if (h < 1e-14 * std::max(1.0, std::abs(x)))
                fail(ErrorKind::numerical, "integrator produced non-finite values near x=" + std::to_string(x));
            continue;
        }
        if (err <= 1.0) {
            x = final_step ? x1 : x + hs;
            y = y1;
            k1 = k7;
            ++st.accepted;
            if (!observer(x, y)) return x;
            if (!(y.array() == y1.array()).all()) {  // observer changed the state
                k1 = f(x, y);
                ++st.evaluations;
            }
            // PI controller (beta = 0.04)
            double fac = 0.9 * std::pow(err, -0.17) * std::pow(err_prev, 0.04);
            if (err == 0.0) fac = 5.0;
            fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
            h = std::min(h * fac, o.max_step);
            err_prev = std::max(err, 1e-4);
            last_rejected = false;
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            ++st.rejected;
            last_rejected = true;
            if (h < 1e-14 * std::max(1.0, std::abs(x)))
                fail(ErrorKind::numerical, "step size underflow at x=" + std::to_string(x));
        }
    }
    return x;
}

template <class V, class F>
double integrate_dopri5(F&& f, double x0, double x1, V& y, const OdeOptions& o, OdeStats* stats = nullptr) {
    return integrate_dopri5(std::forward<F>(f), x0, x1, y, o, stats, [](double, V&) { return true; });
}

}  // namespace shockstab
