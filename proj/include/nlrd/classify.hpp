#pragma once

#include "nlrd/phaseplane.hpp"
#include "nlrd/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nlrd {

struct ClassifyParams {
    double T_f = 500.0;         // hard cap on the run time
    double check_window = 20.0; // trailing window for the steady/mass tests
    double eps_zero = 1e-3;     // extinction margin under a
    double eps_one = 1e-2;      // proximity to 1 for propagation
    double eps_steady = 1e-5;   // sup-norm stall level for stagnation
    double prop_interval_halfwidth = 5.0;
    int cadence = 10; // diagnostics every this many steps
};

void validate(const ClassifyParams& cp, const Problem& p);

enum class Fate { Extinction, Propagation, Stagnation, Undecided };

std::string to_string(Fate f);

struct Verdict {
    Fate fate = Fate::Undecided;
    double t_decided = 0.0;
    double final_mass = 0.0;
    double final_max = 0.0;
    double final_min = 0.0;
    double final_energy = 0.0;
    double steady_residual = 0.0; // sup-norm change over the trailing window
    bool boundary_warning = false;
};

/// Runs the Cauchy problem from the indicator datum and applies the
/// early-stop rules: extinction once max u falls under a - eps_zero,
/// propagation once mass is strictly increasing across the window and the
/// central interval sits above 1 - eps_one, stagnation once the field
/// stalls in sup norm strictly between the trivial states.
Verdict classify_run(const Problem& p, const Grid& grid, const SchemeParams& sp,
                     double ell, const ClassifyParams& cp);

enum class BracketStatus { Bracketed, OpenBelow, OpenAbove };

struct ThresholdResult {
    BracketStatus status = BracketStatus::Bracketed;
    double lo = 0.0;
    double hi = 0.0;
    double tol = 0.0;
    Fate fate_lo = Fate::Undecided;
    Fate fate_hi = Fate::Undecided;
    int runs = 0;

    double value() const { return 0.5 * (lo + hi); }
};

/// Bisection of the largest ell below which extinction holds. OpenBelow
/// when no extinction occurs even at the smallest probed ell, OpenAbove
/// when extinction persists to the boundary margin.
ThresholdResult threshold_ell0(const Problem& p, const Grid& grid, const SchemeParams& sp,
                               const ClassifyParams& cp, double tol);
/// Bisection of the smallest ell above which propagation holds.
ThresholdResult threshold_ell1(const Problem& p, const Grid& grid, const SchemeParams& sp,
                               const ClassifyParams& cp, double tol);

struct RegionLabel {
    int region = 0;   // 1..5
    char sub = ' ';   // '<', '=', '>' relative to a_c where it applies
    bool boundary = false;

    std::string name() const;
};

/// Partition of the (a,d) quadrant by d = 1/4, d_pin(a), d_ext(a).
RegionLabel region_label(double a, double d);

struct SweepTask {
    double a = 0.3;
    double d = 0.2;
    double ell = 1.0;
};

struct SweepRow {
    SweepTask task;
    std::optional<Verdict> verdict;
    std::string error; // empty on success
};

/// Runs classify_run over the task list on a small worker pool; rows come
/// back in task order regardless of scheduling.
std::vector<SweepRow> sweep(const std::vector<SweepTask>& tasks, const Grid& grid,
                            const SchemeParams& sp, const ClassifyParams& cp,
                            int jobs);

struct ConjectureReport {
    ThresholdResult ell1;
    double v0_star = 0.0;
    double x0_star = 0.0;
    double gap = 0.0;
    double grid_dx = 0.0;
    double tol = 0.0;
};

/// Compares the bisected propagation threshold against the right
/// discontinuity point of the extremal ground state. Requires (a,d) in
/// R2 or R3.
ConjectureReport conjecture_check(const Problem& p, const Grid& grid,
                                  const SchemeParams& sp, const ClassifyParams& cp,
                                  double tol);

struct SandwichReport {
    double v0_lower = 0.0, x0_lower = 0.0;
    double v0_upper = 0.0, x0_upper = 0.0; // unset when lower-only
    bool upper_checked = false;
    double worst_below = 0.0; // max of (lower - u) over checked nodes
    double worst_above = 0.0; // max of (u - upper) over checked nodes
    bool ok_lower = false;
    bool ok_upper = false;
    Verdict verdict;
};

/// Checks the ground-state sandwich at final time: a lower profile with
/// x0 <= ell and, in the pinned case, an upper profile with x0 >= ell.
/// Nodes within two grid cells of a discontinuity are excluded. With
/// require_upper = false only the lower bound (valid outside the pinning
/// region as well) is checked.
SandwichReport sandwich_check(const Problem& p, const Grid& grid, const SchemeParams& sp,
                              const ClassifyParams& cp, double ell,
                              bool require_upper = true, double slack = 1e-3);

} // namespace nlrd
