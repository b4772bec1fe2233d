#pragma once

#include "nlrd/errors.hpp"

#include <cmath>
#include <string>

namespace nlrd {

/// Bisection on [lo, hi]; f(lo) and f(hi) must have opposite signs.
/// Converges to |hi-lo| <= tol and returns the midpoint.
template <class Func>
double bisect(const Func& f, double lo, double hi, double tol = 1e-12,
              int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw NumericalError("bisect: no sign change on bracket [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "], f = " + std::to_string(flo) + " / " +
                             std::to_string(fhi));
    }
    for (int i = 0; i < max_iter && hi - lo > tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (std::signbit(fm) == std::signbit(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Newton iteration safeguarded by a bracketing interval: any step that
/// leaves [lo, hi] falls back to bisection. f(lo), f(hi) must bracket a
/// root. Converges on the step size |du| <= tol.
template <class Func, class Deriv>
double newton_bisect(const Func& f, const Deriv& df, double lo, double hi,
                     double x0, double tol = 1e-14, int max_iter = 100) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw NumericalError("newton_bisect: no sign change on bracket [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    double x = std::fmin(std::fmax(x0, lo), hi);
    for (int i = 0; i < max_iter; ++i) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (std::signbit(fx) == std::signbit(flo)) {
            lo = x;
        } else {
            hi = x;
        }
        const double dfx = df(x);
        double step = (dfx != 0.0) ? -fx / dfx : 0.0;
        double xn = x + step;
        if (!(xn > lo && xn < hi) || step == 0.0) {
            xn = 0.5 * (lo + hi);
            step = xn - x;
        }
        x = xn;
        if (std::fabs(step) <= tol || hi - lo <= tol) return x;
    }
    return x;
}

/// Golden-section maximization of a unimodal function on [lo, hi].
/// Returns the abscissa of the maximum to within xtol.
template <class Func>
double golden_max(const Func& f, double lo, double hi, double xtol = 1e-10) {
    constexpr double inv_phi = 0.6180339887498949; // (sqrt(5)-1)/2
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    while (hi - lo > xtol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    return 0.5 * (lo + hi);
}

/// Coarse scan followed by golden-section refinement; for maxima that are
/// unimodal only locally. Returns the argmax.
template <class Func>
double scan_golden_max(const Func& f, double lo, double hi, int scan_points,
                       double xtol = 1e-10) {
    double best_x = lo;
    double best_f = f(lo);
    for (int i = 1; i <= scan_points; ++i) {
        const double x = lo + (hi - lo) * i / scan_points;
        const double fx = f(x);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    const double h = (hi - lo) / scan_points;
    return golden_max(f, std::fmax(lo, best_x - h), std::fmin(hi, best_x + h), xtol);
}

} // namespace nlrd
