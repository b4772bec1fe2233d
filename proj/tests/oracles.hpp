// Test-only oracles, kept independent of the library's implementation
// paths: tanh-sinh quadrature for singular integrals, direct-quadrature
// convolution against sampled profiles, and high-order finite differences.
#pragma once

#include "nlrd/quadrature.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Tanh-sinh (double-exponential) quadrature on (a, b); handles
/// integrable endpoint singularities such as inverse square roots.
template <class Func>
double tanh_sinh(const Func& f, double a, double b, double tol = 1e-10) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double h = 1.0;
    auto level_sum = [&](double step, bool odd_only) {
        double sum = 0.0;
        for (int k = odd_only ? 1 : 0;; k += odd_only ? 2 : 1) {
            const double t = k * step;
            const double w = 0.5 * M_PI * std::sinh(t);
            const double x = std::tanh(w);
            const double dxdt = 0.5 * M_PI * std::cosh(t) / std::pow(std::cosh(w), 2);
            if (dxdt < 1e-17 && k > 4) break;
            const double xa = mid - half * x;
            const double xb = mid + half * x;
            double term = f(xb) * dxdt;
            if (k > 0) term += f(xa) * dxdt;
            if (std::isfinite(term)) sum += term;
            if (k > 6.0 / step) break;
        }
        return sum;
    };
    double total = level_sum(h, false);
    double prev_estimate = half * h * total;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        total += level_sum(h, true);
        const double estimate = half * h * total;
        if (level > 2 && std::fabs(estimate - prev_estimate) <
                             tol * std::max(1.0, std::fabs(estimate)))
            return estimate;
        prev_estimate = estimate;
    }
    return prev_estimate;
}

/// Convolution (K*u)(x) of a piecewise-linear sampled profile with break
/// points, by adaptive quadrature split at the kernel kink and the
/// profile's discontinuities.
class SampledConvolution {
  public:
    SampledConvolution(std::vector<double> xs, std::vector<double> us,
                       std::function<double(double)> kernel,
                       std::vector<double> breaks)
        : xs_(std::move(xs)), us_(std::move(us)), kernel_(std::move(kernel)),
          breaks_(std::move(breaks)) {}

    double profile(double x) const {
        if (x <= xs_.front() || x >= xs_.back()) return 0.0;
        const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
        const std::size_t i = it - xs_.begin() - 1;
        const double s = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
        return (1.0 - s) * us_[i] + s * us_[i + 1];
    }

    double operator()(double x, double tol = 1e-8) const {
        std::vector<double> cuts{xs_.front(), xs_.back(), x};
        for (const double b : breaks_) cuts.push_back(b);
        std::sort(cuts.begin(), cuts.end());
        double sum = 0.0;
        auto integrand = [&](double y) { return kernel_(x - y) * profile(y); };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] - cuts[i] < 1e-14) continue;
            sum += nlrd::integrate_adaptive(integrand, cuts[i], cuts[i + 1], tol, 20000);
        }
        return sum;
    }

  private:
    std::vector<double> xs_, us_;
    std::function<double(double)> kernel_;
    std::vector<double> breaks_;
};

/// Fourth-order central difference on a uniform grid.
inline double diff4(const std::vector<double>& f, std::size_t i, double h) {
    return (-f[i + 2] + 8 * f[i + 1] - 8 * f[i - 1] + f[i - 2]) / (12.0 * h);
}

} // namespace oracle
