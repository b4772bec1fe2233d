#pragma once

#include "nlrd/errors.hpp"

#include <functional>
#include <optional>
#include <string>

namespace nlrd {

/// Bistable reaction term: stable zeros at 0 and 1, unstable zero at a.
/// The built-in cubic is u(1-u)(u-a); custom terms supply f and f' as
/// callables together with the declared middle zero.
struct BistableNonlinearity {
    enum class Kind { Cubic, Custom };

    Kind kind = Kind::Cubic;
    double a = 0.3;
    std::function<double(double)> f_fn;
    std::function<double(double)> fp_fn;

    double f(double u) const;
    double fp(double u) const;
    /// F(u) = -int_0^u f; for the cubic, u^4/4 - (1+a)u^3/3 + a u^2/2.
    double F(double u) const;

    static BistableNonlinearity cubic(double a);
    /// Validated against the bistability hypotheses (zeros, sign pattern,
    /// derivative signs, positive integral of f over [0,1]).
    static BistableNonlinearity custom(std::function<double(double)> f,
                                       std::function<double(double)> fp,
                                       double a);
};

/// Checks a nonlinearity against the bistability hypotheses; throws
/// ParameterError with the violated condition.
void validate(const BistableNonlinearity& nl);

/// Dispersal kernel, carried as its Fourier symbol (the solver's source
/// of truth) plus a pointwise form when available for direct quadrature.
struct Kernel {
    enum class Kind { Exponential, Gaussian, Custom };

    Kind kind = Kind::Exponential;
    std::function<double(double)> symbol_fn;
    std::function<double(double)> pointwise_fn;
    double second_moment = 1.0; // (1/2) int x^2 K

    double symbol(double xi) const;
    bool has_pointwise() const;
    double pointwise(double x) const;

    static Kernel exponential(); // K(x) = e^{-|x|}/2, symbol 1/(1+xi^2)
    static Kernel gaussian();    // K(x) = e^{-x^2/4}/sqrt(4 pi), symbol e^{-xi^2}
    static Kernel custom(std::function<double(double)> symbol,
                         std::function<double(double)> pointwise = {},
                         double second_moment = 1.0);
};

void validate(const Kernel& k);

/// The full model instance of du/dt = d(-u + K*u) + f(u).
struct Problem {
    BistableNonlinearity f;
    Kernel K;
    double d = 0.2;

    /// g(u) = u - f(u)/d, the branch map of the stationary problem.
    double g(double u) const { return u - f.f(u) / d; }
    double gp(double u) const { return 1.0 - f.fp(u) / d; }
};

/// Validates d > 0 and both components.
void validate(const Problem& p);

/// Critical points of g on (0,1): fold points beta <= gamma where g'
/// vanishes, or monotone when g' > 0 on all of [0,1].
struct GBranches {
    bool monotone = false;
    std::optional<double> beta;
    std::optional<double> gamma;
};

/// sup over (a,1) of f(u)/u; (1-a)^2/4 for the cubic.
double kappa(const BistableNonlinearity& nl);
/// Generic maximization path (coarse scan + golden section), exposed for
/// cross-checks and used for custom nonlinearities.
double kappa_numeric(const BistableNonlinearity& nl);

/// Extinction threshold (1-a)^2/4 on 0 < a < 1/2.
double d_ext(double a);
/// Pinning boundary (1 - a + a^2 - sqrt(1-2a))/3 on 0 < a < 1/2.
double d_pin(double a);
/// The unique a in (0,1/2) with d_pin(a) = d_ext(a), by bisection.
double critical_a();

GBranches critical_points(const Problem& p);

enum class Branch { Minus, Plus };

/// Inverse of g on the requested monotone branch: Minus is [0, beta],
/// Plus is [gamma, 1]; for monotone g the full inverse on [0, 1].
/// Throws CaseError when v lies outside the branch range.
double branch_inverse(const Problem& p, const GBranches& br, double v, Branch branch);

} // namespace nlrd
