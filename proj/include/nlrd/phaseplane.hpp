#pragma once

#include "nlrd/model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace nlrd {

/// Glued Hamiltonian potentials of the stationary problem for the
/// exponential kernel: the minus branch drives the decaying tail, the
/// plus branch the inner plateau. Evaluation uses the cubic closed form
/// when available and a tabulated quadrature of the branch inverses
/// otherwise.
class GluedPotentials {
  public:
    explicit GluedPotentials(const Problem& p);

    const Problem& problem() const { return prob_; }
    const GBranches& branches() const { return branches_; }

    bool monotone() const { return branches_.monotone; }
    /// Upper edge of the minus-branch domain: g(beta), or 1 when monotone.
    double upper_minus() const { return g_beta_; }
    /// Lower edge of the plus-branch domain: g(gamma), or 0 when monotone.
    double lower_plus() const { return g_gamma_; }

    /// G_-(v) = -v^2/2 + int_0^v ginv_-, defined on [0, upper_minus()].
    double potential_minus(double v) const;
    /// G_+(v) = -v^2/2 - int_v^1 ginv_+, defined on [lower_plus(), 1].
    double potential_plus(double v) const;

    double inverse_minus(double v) const;
    double inverse_plus(double v) const;

  private:
    double accumulated(double u) const; // int_0^u w g'(w) dw, closed form or table
    Problem prob_;
    GBranches branches_;
    double g_beta_ = 1.0;
    double g_gamma_ = 0.0;
    double plus_offset_ = 0.0; // pins G_+(1) = -1/2
    bool cubic_ = true;
    // Tables for custom nonlinearities: accumulated() sampled with exact slopes.
    std::vector<double> tab_u_, tab_phi_;
};

GluedPotentials build_potentials(const Problem& p);

enum class CaseKind : std::uint8_t {
    Monotone,            // g' > 0 on [0,1]; unique smooth ground state
    TwoJumpFamily,       // beta < gamma, G_-(g(beta)) < 0
    SmoothPlusMaybeJumps,// beta < gamma, G_-(g(beta)) > 0; sub-case 1 or 2
    HomoclinicBoundary,  // beta < gamma, G_-(g(beta)) = 0 (within tolerance)
    Degenerate           // beta = gamma; sub-case by sign of G_-(g(beta))
};

struct CaseLabel {
    CaseKind kind = CaseKind::Monotone;
    int subcase = 0;      // SmoothPlusMaybeJumps: 1 or 2; Degenerate: 1, 2, 3
    bool pinned = false;  // -G_-(g(beta)) >= G_+(1) - G_+(g(beta))
    bool boundary = false;// a sign test fell inside the 1e-10 tolerance band
    std::string describe() const;
};

CaseLabel classify_case(const GluedPotentials& gp);

/// Admissible gluing parameters of the discontinuous family plus the
/// distinguished levels v_m (positive root of G_-) and v_c (contact with
/// the level set through (1,0)) when they exist.
struct GroundStateFamily {
    CaseLabel label;
    double v0_lo = 0.0;
    double v0_hi = 0.0;
    bool lo_open = false;  // interval open at the lower end (g(gamma) <= 0)
    bool hi_open = false;  // open at v_c in the pinned case
    bool empty = true;
    std::optional<double> v_m;
    std::optional<double> v_c;

    bool admissible(double v0) const;
};

GroundStateFamily ground_state_family(const GluedPotentials& gp);

/// Positive root of G_- in (0, g(beta)); requires G_-(g(beta)) > 0 or a
/// monotone g.
double v_m_root(const GluedPotentials& gp);
/// The contact level with the saddle set: G_+(v_c) - G_-(v_c) = G_+(1).
/// Requires the pinned case.
double v_c_root(const GluedPotentials& gp);

/// Turning point v* > v0 of the inner orbit at level G_+(v0) - G_-(v0).
double v_star(const GluedPotentials& gp, double v0);

/// Right discontinuity point of the glued ground state: the arclength of
/// the inner orbit, computed through the cosine substitution that removes
/// the turning-point singularity, refined to 1e-8 relative accuracy.
double x0_of_v0(const GluedPotentials& gp, double v0);

/// (v0*, x0*): maximizer of x0 over the admissible family. Returns v0* = a
/// when a is admissible (where sqrt(-2 G_-) peaks); golden-section search
/// otherwise. Throws CaseError when the family is empty or x0 is unbounded
/// (pinned case).
std::pair<double, double> x0_star(const GluedPotentials& gp);

/// Sampled ground state: U jumps at +-x0, V = K*U is continuous.
struct GroundStateProfile {
    double v0 = 0.0;
    double x0 = 0.0;
    double v_star = 0.0;
    double tail_cutoff_x = 0.0; // |x| beyond which V fell under 1e-10
    std::vector<double> x, U, V;
    std::vector<std::int8_t> branch; // +1 inner plateau, -1 outer tail
};

GroundStateProfile ground_state_profile(const GluedPotentials& gp, double v0,
                                        std::span<const double> xs);

/// The smooth ground state (monotone case, or the homoclinic of the minus
/// branch when G_-(g(beta)) > 0): no jump, apex v_m at the origin.
GroundStateProfile smooth_ground_state(const GluedPotentials& gp,
                                       std::span<const double> xs);

/// Left side of the pinning-boundary identity minus 1/2: zero exactly on
/// the boundary d = d_pin(a) for the cubic, positive inside the pinning
/// region and negative outside it.
double pinning_residual(const Problem& p);

} // namespace nlrd
