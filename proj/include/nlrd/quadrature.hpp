#pragma once

#include "nlrd/errors.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace nlrd {

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre recurrence (good to ~1e-15).
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n) : nodes(n), weights(n) {
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::fabs(dx) < 1e-16) break;
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }
};

/// Fixed-order Gauss-Legendre integral of f over [a, b].
template <class Func>
double integrate_gl(const Func& f, double a, double b, const GaussLegendre& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * sum;
}

namespace detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.0000000000000000, 0.2077849550078985, 0.4058451513773972,
    0.5860872354676911, 0.7415311855993944, 0.8648644233597691,
    0.9491079123427585, 0.9914553711208126};
inline constexpr double kKronrodW[8] = {
    0.2094821410847278, 0.2044329400752989, 0.1903505780647854,
    0.1690047266392679, 0.1406532597155259, 0.1047900103222502,
    0.0630920926299786, 0.0229353220105292};
inline constexpr double kGaussW[4] = {
    0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
    0.1294849661688697};

template <class Func>
std::pair<double, double> gk15(const Func& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double kron = kKronrodW[0] * f0;
    double gauss = kGaussW[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * kGK15Nodes[i];
        const double fsum = f(mid + dx) + f(mid - dx);
        kron += kKronrodW[i] * fsum;
        if (i % 2 == 0) gauss += kGaussW[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::fabs(kron - gauss)};
}

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to absolute
/// tolerance tol (plus matching relative tolerance). Interval splitting
/// is depth-limited; exceeding the subdivision budget throws.
template <class Func>
double integrate_adaptive(const Func& f, double a, double b, double tol = 1e-10,
                          int max_intervals = 4000) {
    if (a == b) return 0.0;
    struct Seg {
        double a, b, val, err;
    };
    std::vector<Seg> stack;
    auto [v0, e0] = detail::gk15(f, a, b);
    stack.push_back({a, b, v0, e0});
    double sum = 0.0;
    double budget = tol;
    int used = 1;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.err <= budget * std::fabs(s.b - s.a) / std::fabs(b - a) ||
            s.err <= 1e-16 * std::fabs(s.val) || std::fabs(s.b - s.a) < 1e-15) {
            sum += s.val;
            continue;
        }
        if (used + 2 > max_intervals) {
            throw NumericalError("integrate_adaptive: subdivision budget exhausted on [" +
                                 std::to_string(s.a) + ", " + std::to_string(s.b) + "]");
        }
        const double mid = 0.5 * (s.a + s.b);
        auto [vl, el] = detail::gk15(f, s.a, mid);
        auto [vr, er] = detail::gk15(f, mid, s.b);
        stack.push_back({s.a, mid, vl, el});
        stack.push_back({mid, s.b, vr, er});
        used += 2;
    }
    return sum;
}

/// Integral of f over [a, b] where f has an inverse-square-root
/// singularity at b: substitutes x = b - s^2, which removes it.
template <class Func>
double integrate_sqrt_endpoint(const Func& f, double a, double b,
                               double tol = 1e-10) {
    const double smax = std::sqrt(b - a);
    auto g = [&](double s) { return 2.0 * s * f(b - s * s); };
    return integrate_adaptive(g, 0.0, smax, tol);
}

} // namespace nlrd
