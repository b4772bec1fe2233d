#include "nlrd/phaseplane.hpp"

#include "nlrd/quadrature.hpp"
#include "nlrd/rootfind.hpp"

#include <algorithm>
#include <cmath>

namespace nlrd {

namespace {

constexpr double kSignTol = 1e-10;   // boundary band for case sign tests
constexpr double kTailLevel = 1e-10; // outer-branch truncation level
constexpr double kV0Floor = 1e-8;    // evaluation floor when the family is open at 0

const GaussLegendre& gl8() {
    static const GaussLegendre rule(8);
    return rule;
}

const GaussLegendre& gl64() {
    static const GaussLegendre rule(64);
    return rule;
}

} // namespace

GluedPotentials::GluedPotentials(const Problem& p) : prob_(p) {
    if (p.K.kind != Kernel::Kind::Exponential)
        throw CaseError("phase-plane reduction requires K(x) = e^{-|x|}/2");
    branches_ = critical_points(p);
    cubic_ = (p.f.kind == BistableNonlinearity::Kind::Cubic);
    if (branches_.monotone) {
        g_beta_ = 1.0;
        g_gamma_ = 0.0;
    } else {
        g_beta_ = p.g(*branches_.beta);
        g_gamma_ = p.g(*branches_.gamma);
    }
    if (!cubic_) {
        // Tabulate int_0^u w g'(w) dw once; Hermite evaluation below uses
        // the exact slope u g'(u).
        const int n = 4000;
        tab_u_.resize(n + 1);
        tab_phi_.resize(n + 1);
        tab_u_[0] = 0.0;
        tab_phi_[0] = 0.0;
        auto w_gp = [&](double w) { return w * prob_.gp(w); };
        for (int i = 1; i <= n; ++i) {
            tab_u_[i] = static_cast<double>(i) / n;
            tab_phi_[i] = tab_phi_[i - 1] +
                          integrate_gl(w_gp, tab_u_[i - 1], tab_u_[i], gl8());
        }
    }
    plus_offset_ = accumulated(1.0);
}

double GluedPotentials::accumulated(double u) const {
    if (cubic_) {
        const double a = prob_.f.a;
        const double u2 = u * u;
        return 0.5 * u2 +
               (0.75 * u2 * u2 - (2.0 / 3.0) * (1.0 + a) * u2 * u + 0.5 * a * u2) /
                   prob_.d;
    }
    const double pos = std::clamp(u, 0.0, 1.0);
    const int n = static_cast<int>(tab_u_.size()) - 1;
    const int i = std::min(static_cast<int>(pos * n), n - 1);
    const double h = tab_u_[i + 1] - tab_u_[i];
    const double s = (pos - tab_u_[i]) / h;
    const double m0 = tab_u_[i] * prob_.gp(tab_u_[i]) * h;
    const double m1 = tab_u_[i + 1] * prob_.gp(tab_u_[i + 1]) * h;
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * tab_phi_[i] + (s3 - 2 * s2 + s) * m0 +
           (-2 * s3 + 3 * s2) * tab_phi_[i + 1] + (s3 - s2) * m1;
}

double GluedPotentials::inverse_minus(double v) const {
    return branch_inverse(prob_, branches_, v, Branch::Minus);
}

double GluedPotentials::inverse_plus(double v) const {
    if (branches_.monotone) return branch_inverse(prob_, branches_, v, Branch::Minus);
    return branch_inverse(prob_, branches_, v, Branch::Plus);
}

double GluedPotentials::potential_minus(double v) const {
    return -0.5 * v * v + accumulated(inverse_minus(v));
}

double GluedPotentials::potential_plus(double v) const {
    return -0.5 * v * v + accumulated(inverse_plus(v)) - plus_offset_;
}

GluedPotentials build_potentials(const Problem& p) { return GluedPotentials(p); }

std::string CaseLabel::describe() const {
    std::string s;
    switch (kind) {
        case CaseKind::Monotone: s = "monotone g: unique smooth ground state"; break;
        case CaseKind::TwoJumpFamily: s = "one-parameter family of two-jump ground states"; break;
        case CaseKind::SmoothPlusMaybeJumps:
            s = (subcase == 1)
                    ? "smooth ground state only (no discontinuous family)"
                    : "smooth ground state plus a discontinuous family";
            break;
        case CaseKind::HomoclinicBoundary:
            s = "homoclinic boundary: family plus a continuous-at-origin state";
            break;
        case CaseKind::Degenerate:
            s = "degenerate fold (beta = gamma), sub-case " + std::to_string(subcase);
            break;
    }
    if (pinned) s += " [pinned]";
    if (boundary) s += " [boundary case]";
    return s;
}

CaseLabel classify_case(const GluedPotentials& gp) {
    CaseLabel label;
    if (gp.monotone()) {
        label.kind = CaseKind::Monotone;
        return label;
    }
    const GBranches& br = gp.branches();
    const double gb = gp.upper_minus();
    const double gm_at_top = gp.potential_minus(gb);
    const double vh = std::min(gb, 1.0);
    const double pin_margin = gp.potential_plus(vh) - gp.potential_minus(vh) + 0.5;
    label.pinned = pin_margin >= 0.0;
    if (std::fabs(pin_margin) <= kSignTol) label.boundary = true;

    if (*br.gamma - *br.beta <= kSignTol) {
        label.kind = CaseKind::Degenerate;
        label.subcase = (gm_at_top > kSignTol) ? 1 : (gm_at_top < -kSignTol ? 3 : 2);
        return label;
    }
    if (std::fabs(gm_at_top) <= kSignTol) {
        label.kind = CaseKind::HomoclinicBoundary;
        label.boundary = true;
        return label;
    }
    if (gm_at_top < 0.0) {
        label.kind = CaseKind::TwoJumpFamily;
        return label;
    }
    label.kind = CaseKind::SmoothPlusMaybeJumps;
    const double gg = gp.lower_plus();
    if (gg > 0.0) {
        const double gm_at_gg = gp.potential_minus(gg);
        if (std::fabs(gm_at_gg) <= kSignTol) label.boundary = true;
        label.subcase = (gm_at_gg >= 0.0) ? 1 : 2;
    } else {
        label.subcase = 2;
    }
    return label;
}

double v_m_root(const GluedPotentials& gp) {
    const double top = gp.upper_minus();
    if (!gp.monotone() && !(gp.potential_minus(top) > 0.0))
        throw CaseError("v_m_root: G_- has no positive root (G_-(g(beta)) <= 0)");
    double lo = top;
    double glo;
    do {
        lo *= 0.5;
        glo = gp.potential_minus(lo);
        if (lo < 1e-14)
            throw NumericalError("v_m_root: no negative value of G_- found above 0");
    } while (glo >= 0.0);
    return bisect([&](double v) { return gp.potential_minus(v); }, lo, top, 1e-13);
}

double v_c_root(const GluedPotentials& gp) {
    auto level_gap = [&](double v) {
        return gp.potential_plus(v) - gp.potential_minus(v) + 0.5;
    };
    const double hi = std::min(gp.upper_minus(), 1.0);
    const double margin = level_gap(hi);
    if (margin < -kSignTol)
        throw CaseError("v_c_root: parameters are outside the pinning region");
    if (margin <= 0.0) return hi; // boundary case: contact at the extremal point
    double lo = std::max(gp.lower_plus(), 1e-12);
    if (level_gap(lo) >= 0.0)
        throw CaseError("v_c_root: contact level lies below g(gamma); family is empty");
    return bisect(level_gap, lo, hi, 1e-13);
}

double v_star(const GluedPotentials& gp, double v0) {
    if (!(v0 > 0.0) || v0 < gp.lower_plus() - 1e-12 || v0 > gp.upper_minus() + 1e-12)
        throw CaseError("v_star: v0 = " + std::to_string(v0) +
                        " outside the glued domain");
    const double depth = -gp.potential_minus(v0);
    if (depth <= 1e-15) return v0;
    const double level = gp.potential_plus(v0) + depth;
    auto h = [&](double v) { return level - gp.potential_plus(v); };
    const double h1 = h(1.0);
    if (h1 > 1e-14)
        throw CaseError("v_star: v0 outside admissible family (orbit level exceeds "
                        "the saddle; occurs for v0 >= v_c in the pinned case)");
    if (h1 >= 0.0) return 1.0;
    return bisect(h, v0, 1.0, 1e-13);
}

namespace {

// Inner orbit of the plus branch at the level set through (v0, sqrt(-2 G_-(v0))):
// arclength element in the cosine substitution that absorbs the
// turning-point singularity at v*.
struct InnerOrbit {
    const GluedPotentials& gp;
    double v0;
    double t_star;    // sqrt(-2 G_-(v0)), speed at the gluing point
    double vstar;     // turning point of the orbit
    double base;      // G_+(v0)

    InnerOrbit(const GluedPotentials& g, double v) : gp(g), v0(v) {
        const double depth = -gp.potential_minus(v0);
        t_star = depth > 0.0 ? std::sqrt(2.0 * depth) : 0.0;
        vstar = v_star(gp, v0);
        base = gp.potential_plus(v0);
    }

    double psi(double t) const {
        const double target = base + 0.5 * t * t;
        if (vstar <= v0) return v0;
        if (gp.potential_plus(vstar) <= target) return vstar;
        if (target <= base) return v0;
        auto h = [&](double v) { return gp.potential_plus(v) - target; };
        auto dh = [&](double v) { return gp.inverse_plus(v) - v; };
        return newton_bisect(h, dh, v0, vstar, 0.5 * (v0 + vstar), 1e-14);
    }

    double integrand(double theta) const {
        const double t = t_star * std::cos(theta);
        const double p = psi(t);
        return t / (gp.inverse_plus(p) - p);
    }
};

// Composite Gauss-Legendre over [0, pi/2], panels refined by bisection
// until each panel's halving defect meets the relative tolerance. Orbits
// close to the saddle level develop a sharp peak at theta = 0, so panel
// refinement has to be local.
double integrate_theta(const InnerOrbit& orbit, double tol) {
    auto f = [&](double th) { return orbit.integrand(th); };
    const double whole = integrate_gl(f, 0.0, 0.5 * M_PI, gl64());
    const double scale = std::max(std::fabs(whole), 1e-14);
    double sum = 0.0;
    struct Seg {
        double a, b, val;
        int depth;
    };
    std::vector<Seg> stack{{0.0, 0.5 * M_PI, whole, 0}};
    while (!stack.empty()) {
        const Seg s = stack.back();
        stack.pop_back();
        const double mid = 0.5 * (s.a + s.b);
        const double left = integrate_gl(f, s.a, mid, gl64());
        const double right = integrate_gl(f, mid, s.b, gl64());
        const double refined = left + right;
        const double budget = std::max(tol * scale * (s.b - s.a) / (0.5 * M_PI),
                                       1e-3 * tol * scale);
        if (std::fabs(refined - s.val) <= budget) {
            sum += refined;
            continue;
        }
        if (s.depth >= 48)
            throw NumericalError("x0 quadrature did not converge (v0 = " +
                                 std::to_string(orbit.v0) + ")");
        stack.push_back({s.a, mid, left, s.depth + 1});
        stack.push_back({mid, s.b, right, s.depth + 1});
    }
    return sum;
}

} // namespace

bool GroundStateFamily::admissible(double v0) const {
    if (empty || !(v0 > 0.0)) return false;
    if (lo_open) {
        if (v0 < kV0Floor) return false;
    } else if (v0 < v0_lo - 1e-12) {
        return false;
    }
    if (hi_open) return v0 < v0_hi;
    return v0 <= v0_hi + 1e-12;
}

GroundStateFamily ground_state_family(const GluedPotentials& gp) {
    GroundStateFamily fam;
    fam.label = classify_case(gp);
    const double gb = gp.upper_minus();
    const double gg = gp.lower_plus();
    auto open_interval = [&](double hi, bool hi_open) {
        fam.v0_lo = std::max(gg, 0.0);
        fam.lo_open = gg <= 0.0;
        fam.v0_hi = hi;
        fam.hi_open = hi_open;
        fam.empty = hi_open ? !(fam.v0_lo < hi) : !(fam.v0_lo <= hi + 1e-15);
    };
    switch (fam.label.kind) {
        case CaseKind::Monotone:
            fam.v_m = v_m_root(gp);
            break;
        case CaseKind::TwoJumpFamily:
            if (fam.label.pinned) {
                fam.v_c = v_c_root(gp);
                open_interval(*fam.v_c, true);
            } else {
                open_interval(gb, false);
            }
            break;
        case CaseKind::HomoclinicBoundary:
            fam.v_m = gb;
            open_interval(gb, false);
            break;
        case CaseKind::SmoothPlusMaybeJumps:
            fam.v_m = v_m_root(gp);
            if (fam.label.subcase == 2) open_interval(*fam.v_m, false);
            break;
        case CaseKind::Degenerate:
            if (fam.label.subcase == 3 && !fam.label.pinned) {
                fam.v0_lo = fam.v0_hi = gb;
                fam.empty = false;
            } else if (fam.label.subcase != 3) {
                fam.v_m = gb;
            }
            break;
    }
    return fam;
}

double x0_of_v0(const GluedPotentials& gp, double v0) {
    const GroundStateFamily fam = ground_state_family(gp);
    if (!fam.admissible(v0))
        throw CaseError("x0_of_v0: v0 = " + std::to_string(v0) +
                        " is not in the admissible family (" + fam.label.describe() + ")");
    InnerOrbit orbit(gp, v0);
    if (orbit.t_star <= 1e-14) return 0.0;
    return integrate_theta(orbit, 1e-8);
}

std::pair<double, double> x0_star(const GluedPotentials& gp) {
    const GroundStateFamily fam = ground_state_family(gp);
    if (fam.empty)
        throw CaseError("x0_star: no discontinuous family (" + fam.label.describe() + ")");
    if (fam.hi_open)
        throw CaseError("x0_star: x0 is unbounded (pinned case: x0 -> infinity as "
                        "v0 -> v_c)");
    const double lo = fam.lo_open ? std::max(kV0Floor, fam.v0_lo) : fam.v0_lo;
    const double hi = fam.v0_hi;
    const double a = gp.problem().f.a;
    if (a >= lo - 1e-12 && a <= hi + 1e-12) {
        return {a, x0_of_v0(gp, std::clamp(a, lo, hi))};
    }
    if (!(lo < hi)) return {hi, x0_of_v0(gp, hi)};
    auto obj = [&](double v) { return x0_of_v0(gp, v); };
    const double vbest = scan_golden_max(obj, lo, hi, 200, 1e-10);
    return {vbest, obj(vbest)};
}

namespace {

// Piecewise cubic Hermite table of a monotone map x -> V with exact slopes.
struct HermiteTable {
    std::vector<double> x, v, dvdx;

    double eval(double xq) const {
        const auto it = std::upper_bound(x.begin(), x.end(), xq);
        std::size_t i = (it == x.begin()) ? 0 : (it - x.begin() - 1);
        if (i + 1 >= x.size()) i = x.size() - 2;
        const double h = x[i + 1] - x[i];
        const double s = (xq - x[i]) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * v[i] + (s3 - 2 * s2 + s) * h * dvdx[i] +
               (-2 * s3 + 3 * s2) * v[i + 1] + (s3 - s2) * h * dvdx[i + 1];
    }
};

// Outer tail x(v) = x_start + int_v^{v_from} dw / sqrt(-2 G_-(w)): a
// linear block where the orbit still bends, then log-spaced nodes down to
// the truncation level (x grows like -log v there).
void append_tail(const GluedPotentials& gp, double v_from, double x_start,
                 HermiteTable& tab) {
    auto speed = [&](double w) { return 1.0 / std::sqrt(-2.0 * gp.potential_minus(w)); };
    double x = x_start;
    double v_prev = v_from;
    tab.x.push_back(x);
    tab.v.push_back(v_from);
    tab.dvdx.push_back(-std::sqrt(-2.0 * gp.potential_minus(v_from)));
    auto push = [&](double v_next) {
        x += integrate_gl(speed, v_next, v_prev, gl8());
        tab.x.push_back(x);
        tab.v.push_back(v_next);
        tab.dvdx.push_back(-std::sqrt(-2.0 * gp.potential_minus(v_next)));
        v_prev = v_next;
    };
    const int n_lin = 800, n_log = 1200;
    const double v_mid = 0.3 * v_from;
    for (int j = 1; j <= n_lin; ++j) push(v_from + (v_mid - v_from) * j / n_lin);
    const double ratio = std::pow(kTailLevel / v_mid, 1.0 / n_log);
    for (int j = 1; j <= n_log; ++j) push(v_mid * std::pow(ratio, j));
}

GroundStateProfile sample_profile(const GluedPotentials& gp, double v0, double x0,
                                  double vstar, const HermiteTable& inner,
                                  const HermiteTable& outer,
                                  std::span<const double> xs) {
    GroundStateProfile prof;
    prof.v0 = v0;
    prof.x0 = x0;
    prof.v_star = vstar;
    prof.tail_cutoff_x = outer.x.back();
    prof.x.assign(xs.begin(), xs.end());
    prof.U.reserve(xs.size());
    prof.V.reserve(xs.size());
    prof.branch.reserve(xs.size());
    for (const double xq : xs) {
        const double ax = std::fabs(xq);
        double v, u;
        std::int8_t side;
        if (ax < x0 && !inner.x.empty()) {
            v = std::clamp(inner.eval(ax), v0, vstar);
            u = gp.inverse_plus(v);
            side = +1;
        } else {
            side = -1;
            if (ax >= prof.tail_cutoff_x) {
                v = 0.0;
                u = 0.0;
            } else {
                v = std::clamp(outer.eval(ax), 0.0, v0);
                u = gp.inverse_minus(v);
            }
        }
        prof.V.push_back(v);
        prof.U.push_back(u);
        prof.branch.push_back(side);
    }
    return prof;
}

} // namespace

GroundStateProfile ground_state_profile(const GluedPotentials& gp, double v0,
                                        std::span<const double> xs) {
    const GroundStateFamily fam = ground_state_family(gp);
    if (!fam.admissible(v0))
        throw CaseError("ground_state_profile: v0 = " + std::to_string(v0) +
                        " is not in the admissible family (" + fam.label.describe() + ")");
    InnerOrbit orbit(gp, v0);

    // Inner plateau, parametrized by the substitution angle; the grid is
    // graded toward theta = 0 where near-saddle orbits develop a spike.
    HermiteTable inner;
    const int m = 1600;
    inner.x.resize(m + 1);
    inner.v.resize(m + 1);
    inner.dvdx.resize(m + 1);
    double x_acc = 0.0;
    double theta_prev = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double frac = static_cast<double>(i) / m;
        const double theta = 0.5 * M_PI * frac * frac;
        if (i > 0) {
            x_acc += integrate_gl([&](double th) { return orbit.integrand(th); },
                                  theta_prev, theta, gl8());
        }
        const double t = orbit.t_star * std::cos(theta);
        inner.x[i] = x_acc;
        inner.v[i] = (i == 0) ? orbit.vstar : (i == m ? v0 : orbit.psi(t));
        inner.dvdx[i] = -orbit.t_star * std::sin(theta);
        theta_prev = theta;
    }
    const double x0 = x_acc;

    HermiteTable outer;
    append_tail(gp, v0, x0, outer);

    return sample_profile(gp, v0, x0, orbit.vstar, inner, outer, xs);
}

GroundStateProfile smooth_ground_state(const GluedPotentials& gp,
                                       std::span<const double> xs) {
    const GroundStateFamily fam = ground_state_family(gp);
    if (!fam.v_m)
        throw CaseError("smooth_ground_state: no smooth state in this case (" +
                        fam.label.describe() + ")");
    const double vm = *fam.v_m;

    // Apex half: substitute v = v_m - s^2 to absorb the square-root
    // turning point, down to v_m/2; then the usual log-spaced tail.
    HermiteTable tab;
    const double v_half = 0.5 * vm;
    const double s_max = std::sqrt(vm - v_half);
    auto speed_s = [&](double s) {
        return 2.0 * s / std::sqrt(-2.0 * gp.potential_minus(vm - s * s));
    };
    const int m = 800;
    double x_acc = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double s = s_max * i / m;
        if (i > 0) x_acc += integrate_gl(speed_s, s_max * (i - 1) / m, s, gl8());
        const double v = vm - s * s;
        tab.x.push_back(x_acc);
        tab.v.push_back(v);
        const double depth = -2.0 * gp.potential_minus(v);
        tab.dvdx.push_back(depth > 0.0 ? -std::sqrt(depth) : 0.0);
    }
    HermiteTable tail;
    append_tail(gp, v_half, x_acc, tail);
    for (std::size_t j = 1; j < tail.x.size(); ++j) {
        tab.x.push_back(tail.x[j]);
        tab.v.push_back(tail.v[j]);
        tab.dvdx.push_back(tail.dvdx[j]);
    }

    GroundStateProfile prof;
    prof.v0 = vm;
    prof.x0 = 0.0;
    prof.v_star = vm;
    prof.tail_cutoff_x = tab.x.back();
    prof.x.assign(xs.begin(), xs.end());
    for (const double xq : xs) {
        const double ax = std::fabs(xq);
        double v = 0.0;
        if (ax < prof.tail_cutoff_x) v = std::clamp(tab.eval(ax), 0.0, vm);
        prof.V.push_back(v);
        prof.U.push_back(v > 0.0 ? gp.inverse_minus(v) : 0.0);
        prof.branch.push_back(-1);
    }
    return prof;
}

double pinning_residual(const Problem& p) {
    const GBranches br = critical_points(p);
    if (br.monotone || !br.beta)
        throw CaseError("pinning_residual: fold points beta < gamma required");
    const double beta = *br.beta;
    const double gamma = *br.gamma;
    if (gamma - beta <= 1e-12)
        throw CaseError("pinning_residual: degenerate fold (beta = gamma)");
    const double gb = p.g(beta);
    if (gb > 1.0 + 1e-12)
        throw CaseError("pinning_residual: g(beta) = " + std::to_string(gb) +
                        " exceeds the plus-branch range");
    const double beta_tilde = branch_inverse(p, br, std::min(gb, 1.0), Branch::Plus);
    auto g = [&](double u) { return p.g(u); };
    const double lhs = integrate_adaptive(g, 0.0, beta, 1e-12) +
                       integrate_adaptive(g, beta_tilde, 1.0, 1e-12) +
                       (beta_tilde - beta) * gb;
    return lhs - 0.5;
}

} // namespace nlrd
