#include "nlrd/model.hpp"

#include "nlrd/quadrature.hpp"
#include "nlrd/rootfind.hpp"

#include <cmath>
#include <vector>

namespace nlrd {

double BistableNonlinearity::f(double u) const {
    if (kind == Kind::Cubic) return u * (1.0 - u) * (u - a);
    return f_fn(u);
}

double BistableNonlinearity::fp(double u) const {
    if (kind == Kind::Cubic) return -3.0 * u * u + 2.0 * (1.0 + a) * u - a;
    return fp_fn(u);
}

double BistableNonlinearity::F(double u) const {
    if (kind == Kind::Cubic) {
        const double u2 = u * u;
        return 0.25 * u2 * u2 - (1.0 + a) * u2 * u / 3.0 + 0.5 * a * u2;
    }
    auto neg_f = [&](double v) { return -f_fn(v); };
    return integrate_adaptive(neg_f, 0.0, u, 1e-12);
}

BistableNonlinearity BistableNonlinearity::cubic(double a) {
    if (!(a > 0.0 && a < 0.5)) {
        throw ParameterError("cubic nonlinearity requires 0 < a < 1/2, got a = " +
                             std::to_string(a));
    }
    BistableNonlinearity nl;
    nl.kind = Kind::Cubic;
    nl.a = a;
    return nl;
}

BistableNonlinearity BistableNonlinearity::custom(std::function<double(double)> f,
                                                  std::function<double(double)> fp,
                                                  double a) {
    BistableNonlinearity nl;
    nl.kind = Kind::Custom;
    nl.a = a;
    nl.f_fn = std::move(f);
    nl.fp_fn = std::move(fp);
    validate(nl);
    return nl;
}

void validate(const BistableNonlinearity& nl) {
    const double a = nl.a;
    if (!(a > 0.0 && a < 1.0))
        throw ParameterError("middle zero must satisfy 0 < a < 1");
    const double tol = 1e-12;
    if (std::fabs(nl.f(0.0)) > tol || std::fabs(nl.f(a)) > tol ||
        std::fabs(nl.f(1.0)) > tol)
        throw ParameterError("nonlinearity must vanish at 0, a, 1");
    for (int i = 1; i < 100; ++i) {
        const double u = a * i / 100.0;
        if (nl.f(u) >= 0.0)
            throw ParameterError("nonlinearity must be negative on (0,a); violated at u = " +
                                 std::to_string(u));
    }
    for (int i = 1; i < 100; ++i) {
        const double u = a + (1.0 - a) * i / 100.0;
        if (u < 1.0 && nl.f(u) <= 0.0)
            throw ParameterError("nonlinearity must be positive on (a,1); violated at u = " +
                                 std::to_string(u));
    }
    if (!(nl.fp(0.0) < 0.0)) throw ParameterError("f'(0) must be negative");
    if (!(nl.fp(1.0) < 0.0)) throw ParameterError("f'(1) must be negative");
    if (!(nl.fp(a) > 0.0)) throw ParameterError("f'(a) must be positive");
    const double mass = integrate_adaptive([&](double u) { return nl.f(u); }, 0.0, 1.0, 1e-12);
    if (!(mass > 0.0))
        throw ParameterError("int_0^1 f must be positive, got " + std::to_string(mass));
}

double Kernel::symbol(double xi) const {
    switch (kind) {
        case Kind::Exponential: return 1.0 / (1.0 + xi * xi);
        case Kind::Gaussian: return std::exp(-xi * xi);
        case Kind::Custom: return symbol_fn(xi);
    }
    return 0.0;
}

bool Kernel::has_pointwise() const {
    return kind != Kind::Custom || static_cast<bool>(pointwise_fn);
}

double Kernel::pointwise(double x) const {
    switch (kind) {
        case Kind::Exponential: return 0.5 * std::exp(-std::fabs(x));
        case Kind::Gaussian: return std::exp(-0.25 * x * x) / std::sqrt(4.0 * M_PI);
        case Kind::Custom:
            if (!pointwise_fn)
                throw CaseError("custom kernel has no pointwise form");
            return pointwise_fn(x);
    }
    return 0.0;
}

Kernel Kernel::exponential() {
    Kernel k;
    k.kind = Kind::Exponential;
    return k;
}

Kernel Kernel::gaussian() {
    Kernel k;
    k.kind = Kind::Gaussian;
    return k;
}

Kernel Kernel::custom(std::function<double(double)> symbol,
                      std::function<double(double)> pointwise, double second_moment) {
    Kernel k;
    k.kind = Kind::Custom;
    k.symbol_fn = std::move(symbol);
    k.pointwise_fn = std::move(pointwise);
    k.second_moment = second_moment;
    validate(k);
    return k;
}

void validate(const Kernel& k) {
    if (std::fabs(k.symbol(0.0) - 1.0) > 1e-12)
        throw ParameterError("kernel symbol must have K^(0) = 1 (unit mass)");
    for (int i = 1; i <= 32; ++i) {
        const double xi = 0.5 * i;
        if (std::fabs(k.symbol(xi) - k.symbol(-xi)) > 1e-12)
            throw ParameterError("kernel symbol must be even");
    }
    if (k.has_pointwise()) {
        for (int i = 0; i <= 32; ++i) {
            const double x = 1.25 * i;
            const double kp = k.pointwise(x);
            if (kp < 0.0 || std::fabs(kp - k.pointwise(-x)) > 1e-12)
                throw ParameterError("kernel must be even and nonnegative");
        }
    }
}

void validate(const Problem& p) {
    if (!(p.d > 0.0))
        throw ParameterError("diffusion coefficient d must be positive, got " +
                             std::to_string(p.d));
    validate(p.f);
    validate(p.K);
}

double kappa(const BistableNonlinearity& nl) {
    if (nl.kind == BistableNonlinearity::Kind::Cubic) {
        const double oma = 1.0 - nl.a;
        return 0.25 * oma * oma;
    }
    return kappa_numeric(nl);
}

double kappa_numeric(const BistableNonlinearity& nl) {
    auto ratio = [&](double u) { return nl.f(u) / u; };
    const double arg = scan_golden_max(ratio, nl.a, 1.0, 1000, 1e-12);
    return ratio(arg);
}

double d_ext(double a) {
    if (!(a > 0.0 && a < 0.5))
        throw ParameterError("d_ext requires 0 < a < 1/2, got a = " + std::to_string(a));
    return 0.25 * (1.0 - a) * (1.0 - a);
}

double d_pin(double a) {
    if (!(a > 0.0 && a < 0.5))
        throw ParameterError("d_pin requires 0 < a < 1/2, got a = " + std::to_string(a));
    return (1.0 - a + a * a - std::sqrt(1.0 - 2.0 * a)) / 3.0;
}

double critical_a() {
    auto gap = [](double a) { return d_pin(a) - d_ext(a); };
    return bisect(gap, 1e-6, 0.5 - 1e-6, 1e-13);
}

GBranches critical_points(const Problem& p) {
    GBranches br;
    if (p.f.kind == BistableNonlinearity::Kind::Cubic) {
        // g'(u) = 0 reduces to 3u^2 - 2(1+a)u + (a+d) = 0.
        const double a = p.f.a;
        const double disc = (1.0 + a) * (1.0 + a) - 3.0 * (a + p.d);
        if (disc < 1e-14) {
            if (disc < -1e-14) {
                br.monotone = true;
                return br;
            }
            const double u = (1.0 + a) / 3.0;
            br.beta = br.gamma = u;
            return br;
        }
        const double root = std::sqrt(disc);
        br.beta = ((1.0 + a) - root) / 3.0;
        br.gamma = ((1.0 + a) + root) / 3.0;
        return br;
    }
    // Generic path: locate sign changes of g' on (0,1) and bisect each.
    const int n = 2000;
    std::vector<double> zeros;
    double prev_u = 0.0;
    double prev_gp = p.gp(prev_u);
    for (int i = 1; i <= n; ++i) {
        const double u = static_cast<double>(i) / n;
        const double gpu = p.gp(u);
        if (std::signbit(gpu) != std::signbit(prev_gp)) {
            zeros.push_back(bisect([&](double v) { return p.gp(v); }, prev_u, u, 1e-13));
        }
        prev_u = u;
        prev_gp = gpu;
    }
    if (zeros.empty()) {
        br.monotone = true;
        return br;
    }
    if (zeros.size() != 2)
        throw CaseError("fold hypothesis violated: g' has " + std::to_string(zeros.size()) +
                        " sign changes on (0,1), expected at most 2");
    br.beta = zeros[0];
    br.gamma = zeros[1];
    return br;
}

double branch_inverse(const Problem& p, const GBranches& br, double v, Branch branch) {
    double lo, hi;
    if (br.monotone) {
        lo = 0.0;
        hi = 1.0;
    } else if (branch == Branch::Minus) {
        lo = 0.0;
        hi = *br.beta;
    } else {
        lo = *br.gamma;
        hi = 1.0;
    }
    const double vlo = p.g(lo);
    const double vhi = p.g(hi);
    const double slack = 1e-12;
    if (v < vlo - slack || v > vhi + slack) {
        throw CaseError("branch_inverse: v = " + std::to_string(v) +
                        " outside branch range [" + std::to_string(vlo) + ", " +
                        std::to_string(vhi) + "]");
    }
    if (v <= vlo) return lo;
    if (v >= vhi) return hi;
    auto h = [&](double u) { return p.g(u) - v; };
    auto dh = [&](double u) { return p.gp(u); };
    return newton_bisect(h, dh, lo, hi, 0.5 * (lo + hi), 1e-15);
}

} // namespace nlrd
