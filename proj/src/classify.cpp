#include "nlrd/classify.hpp"

#include "nlrd/rootfind.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <map>
#include <thread>

namespace nlrd {

void validate(const ClassifyParams& cp, const Problem& p) {
    if (!(cp.T_f > 0.0 && cp.check_window > 0.0 && cp.eps_zero > 0.0 &&
          cp.eps_one > 0.0 && cp.eps_steady > 0.0 && cp.prop_interval_halfwidth > 0.0))
        throw ParameterError("classification parameters must be positive");
    if (!(cp.eps_zero < p.f.a))
        throw ParameterError("eps_zero must stay below the unstable zero a");
    if (cp.cadence < 1) throw ParameterError("diagnostics cadence must be >= 1");
}

std::string to_string(Fate f) {
    switch (f) {
        case Fate::Extinction: return "extinction";
        case Fate::Propagation: return "propagation";
        case Fate::Stagnation: return "stagnation";
        case Fate::Undecided: return "undecided";
    }
    return "?";
}

Verdict classify_run(const Problem& p, const Grid& grid, const SchemeParams& sp,
                     double ell, const ClassifyParams& cp) {
    validate(cp, p);
    if (!(ell < 0.8 * grid.half_width))
        throw ParameterError("ell = " + std::to_string(ell) +
                             " too close to the domain edge (need ell < 0.8 L)");
    const double a = p.f.a;

    struct Snapshot {
        double t;
        std::vector<double> u;
        double mass;
    };
    std::deque<Snapshot> window;
    Verdict verdict;
    verdict.fate = Fate::Undecided;

    std::vector<int> central;
    for (int j = 0; j < grid.n; ++j)
        if (std::fabs(grid.node(j)) <= cp.prop_interval_halfwidth) central.push_back(j);

    Observer observer = [&](const SimState& s, const DiagnosticsRow& row) -> bool {
        verdict.final_mass = row.mass;
        verdict.final_max = row.max;
        verdict.final_min = row.min;
        verdict.final_energy = row.energy;
        verdict.boundary_warning = row.boundary_warning;

        if (row.max < a - cp.eps_zero) {
            verdict.fate = Fate::Extinction;
            verdict.t_decided = s.t;
            return true;
        }

        window.push_back({s.t, s.u, row.mass});
        while (window.size() > 2 &&
               window.front().t < s.t - cp.check_window - 1e-9)
            window.pop_front();
        if (window.front().t > s.t - cp.check_window + 1e-9) return false;

        // Propagation: strictly increasing mass across the whole window
        // and the central interval within eps_one of 1. The increase must
        // also be sustained (the late half-window carries its share): a
        // wide pinned plateau gains mass monotonically too while its tails
        // equilibrate, but that gain decays geometrically, whereas an
        // advancing front adds mass linearly.
        bool mass_up = true;
        for (std::size_t i = 1; i < window.size() && mass_up; ++i)
            mass_up = window[i].mass > window[i - 1].mass;
        if (mass_up) {
            const double gain_total = row.mass - window.front().mass;
            const double gain_late = row.mass - window[window.size() / 2].mass;
            if (gain_total > 1e-6 && gain_late >= 0.25 * gain_total) {
                double central_min = 1.0;
                for (int j : central) central_min = std::min(central_min, s.u[j]);
                if (central_min > 1.0 - cp.eps_one) {
                    verdict.fate = Fate::Propagation;
                    verdict.t_decided = s.t;
                    return true;
                }
            }
        }

        // Stagnation: the field stalls in sup norm strictly between the
        // trivial states.
        double stall = 0.0;
        const Snapshot& past = window.front();
        for (int j = 0; j < grid.n; ++j)
            stall = std::max(stall, std::fabs(s.u[j] - past.u[j]));
        verdict.steady_residual = stall;
        if (stall < cp.eps_steady && row.max > a && row.max < 1.0 - cp.eps_one) {
            verdict.fate = Fate::Stagnation;
            verdict.t_decided = s.t;
            return true;
        }
        return false;
    };

    EvolveOptions opt;
    opt.cadence = cp.cadence;
    opt.track_energy = true;
    SimState s0 = indicator_ic(grid, ell);
    EvolveResult res = evolve(p, std::move(s0), cp.T_f, sp, opt, observer);
    if (verdict.fate == Fate::Undecided) verdict.t_decided = res.state.t;
    return verdict;
}

namespace {

struct Prober {
    const Problem& p;
    const Grid& grid;
    const SchemeParams& sp;
    const ClassifyParams& cp;
    int runs = 0;
    std::map<double, Fate> cache;

    Fate operator()(double ell) {
        const auto it = cache.find(ell);
        if (it != cache.end()) return it->second;
        ++runs;
        const Fate fate = classify_run(p, grid, sp, ell, cp).fate;
        cache.emplace(ell, fate);
        return fate;
    }
};

ThresholdResult threshold_bisect(Prober& probe, double tol, double ell_cap,
                                 bool target_below, Fate target) {
    // target_below: the target verdict holds below the threshold
    // (extinction); otherwise above it (propagation).
    ThresholdResult res;
    res.tol = tol;
    auto is_target = [&](double ell) { return probe(ell) == target; };

    double ell = std::min(1.0, 0.5 * ell_cap);
    bool hit = is_target(ell);
    double lo = ell, hi = ell;
    if (target_below == hit) {
        // Walk up toward the far edge of the target side.
        for (;;) {
            const double next = hi * 2.0;
            if (next > ell_cap) {
                res.status = BracketStatus::OpenAbove;
                res.lo = hi;
                res.hi = ell_cap;
                res.runs = probe.runs;
                return res;
            }
            hi = next;
            if (is_target(hi) != hit) break;
            lo = hi;
        }
    } else {
        // Walk down toward zero.
        for (;;) {
            const double next = lo * 0.5;
            if (next < tol) {
                res.status = BracketStatus::OpenBelow;
                res.lo = 0.0;
                res.hi = lo;
                res.runs = probe.runs;
                return res;
            }
            lo = next;
            if (is_target(lo) == target_below) break;
            hi = lo;
        }
    }
    // Invariant: verdict differs between lo and hi.
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (is_target(mid) == target_below)
            lo = mid;
        else
            hi = mid;
    }
    res.status = BracketStatus::Bracketed;
    res.lo = lo;
    res.hi = hi;
    res.fate_lo = probe(lo);
    res.fate_hi = probe(hi);
    res.runs = probe.runs;
    return res;
}

} // namespace

ThresholdResult threshold_ell0(const Problem& p, const Grid& grid, const SchemeParams& sp,
                               const ClassifyParams& cp, double tol) {
    Prober probe{p, grid, sp, cp, 0, {}};
    return threshold_bisect(probe, tol, 0.8 * grid.half_width, true, Fate::Extinction);
}

ThresholdResult threshold_ell1(const Problem& p, const Grid& grid, const SchemeParams& sp,
                               const ClassifyParams& cp, double tol) {
    Prober probe{p, grid, sp, cp, 0, {}};
    return threshold_bisect(probe, tol, 0.8 * grid.half_width, false, Fate::Propagation);
}

std::string RegionLabel::name() const {
    std::string s = "R" + std::to_string(region);
    if (sub != ' ') s += sub;
    if (boundary) s += " (boundary)";
    return s;
}

RegionLabel region_label(double a, double d) {
    if (!(a > 0.0 && a < 0.5)) throw ParameterError("region_label requires 0 < a < 1/2");
    if (!(d > 0.0)) throw ParameterError("region_label requires d > 0");
    const double tol = 1e-10;
    const double ac = critical_a();
    const double dp = d_pin(a);
    const double de = d_ext(a);
    RegionLabel lab;
    lab.boundary = std::fabs(d - 0.25) <= tol || std::fabs(d - dp) <= tol ||
                   std::fabs(d - de) <= tol || std::fabs(a - ac) <= tol;
    lab.sub = std::fabs(a - ac) <= tol ? '=' : (a < ac ? '<' : '>');
    if (d > 0.25) {
        lab.region = 1;
        lab.sub = ' ';
        return lab;
    }
    const double hi = std::max(dp, de); // d_ext for a < a_c, d_pin for a > a_c
    const double lo = std::min(dp, de);
    if (d > hi)
        lab.region = 2;
    else if (d > lo)
        lab.region = (a < ac) ? 3 : 4;
    else
        lab.region = 5;
    if (lab.region == 3 || lab.region == 4) lab.sub = ' ';
    return lab;
}

std::vector<SweepRow> sweep(const std::vector<SweepTask>& tasks, const Grid& grid,
                            const SchemeParams& sp, const ClassifyParams& cp,
                            int jobs) {
    std::vector<SweepRow> rows(tasks.size());
    if (tasks.empty()) return rows;
    jobs = std::max(1, jobs);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            SweepRow& row = rows[i];
            row.task = tasks[i];
            try {
                Problem p{BistableNonlinearity::cubic(tasks[i].a), Kernel::exponential(),
                          tasks[i].d};
                validate(p);
                row.verdict = classify_run(p, grid, sp, tasks[i].ell, cp);
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

ConjectureReport conjecture_check(const Problem& p, const Grid& grid,
                                  const SchemeParams& sp, const ClassifyParams& cp,
                                  double tol) {
    const RegionLabel lab = region_label(p.f.a, p.d);
    if (lab.region != 2 && lab.region != 3)
        throw CaseError("conjecture_check requires (a,d) in R2 or R3, got " + lab.name());
    ConjectureReport rep;
    GluedPotentials gp(p);
    const auto star = x0_star(gp);
    rep.v0_star = star.first;
    rep.x0_star = star.second;
    rep.ell1 = threshold_ell1(p, grid, sp, cp, tol);
    if (rep.ell1.status != BracketStatus::Bracketed)
        throw NumericalError("conjecture_check: propagation threshold did not bracket");
    rep.gap = std::fabs(rep.ell1.value() - rep.x0_star);
    rep.grid_dx = grid.dx();
    rep.tol = tol;
    return rep;
}

SandwichReport sandwich_check(const Problem& p, const Grid& grid, const SchemeParams& sp,
                              const ClassifyParams& cp, double ell, bool require_upper,
                              double slack) {
    GluedPotentials gp(p);
    const CaseLabel label = classify_case(gp);
    if (gp.monotone() || label.kind == CaseKind::Degenerate)
        throw CaseError("sandwich_check: fold points beta < gamma required");
    if (label.kind == CaseKind::SmoothPlusMaybeJumps)
        throw CaseError("sandwich_check: G_-(g(beta)) < 0 required (got > 0)");

    // Zeros of f' on either side of the hump, then the sign conditions on g.
    const double a = p.f.a;
    const double u_minus = bisect([&](double u) { return p.f.fp(u); }, 0.0, a, 1e-13);
    const double u_plus = bisect([&](double u) { return p.f.fp(u); }, a, 1.0, 1e-13);
    if (!(p.g(u_plus) < 0.0))
        throw CaseError("sandwich_check: hypothesis g(u+) < 0 fails (g(u+) = " +
                        std::to_string(p.g(u_plus)) + ")");
    SandwichReport rep;

    const GroundStateFamily fam = ground_state_family(gp);
    // Walk the family from the small-v0 end; return the first v0 whose
    // discontinuity reaches the target, or the best one seen (must_reach
    // = false allows settling for x0 < target, as the lower bound does).
    auto solve_x0 = [&](double target, bool must_reach) {
        const double lo = fam.lo_open ? 1e-7 : fam.v0_lo + 1e-12;
        const double hi = fam.hi_open ? fam.v0_hi - 1e-9 : fam.v0_hi;
        const int steps = 64;
        double prev = lo;
        double best_v = lo, best_x = 0.0;
        for (int i = 1; i <= steps; ++i) {
            const double v = lo + (hi - lo) * i / steps;
            const double x = x0_of_v0(gp, v);
            if (x >= target)
                return bisect([&](double w) { return x0_of_v0(gp, w) - target; }, prev,
                              v, 1e-12);
            if (x > best_x) {
                best_x = x;
                best_v = v;
            }
            prev = v;
        }
        if (must_reach)
            throw CaseError("sandwich_check: no ground state with x0 >= " +
                            std::to_string(target) + " in the admissible family");
        return best_v;
    };

    rep.v0_lower = solve_x0(ell, false);
    rep.x0_lower = x0_of_v0(gp, rep.v0_lower);

    if (require_upper) {
        if (!label.pinned)
            throw CaseError("sandwich_check: upper bound requires the pinned case");
        const double v_c = v_c_root(gp);
        if (!(p.g(u_plus) < v_c))
            throw CaseError("sandwich_check: hypothesis g(u+) < v_c fails");
        if (!(v_c < p.g(u_minus)))
            throw CaseError("sandwich_check: hypothesis v_c < g(u-) fails");
        rep.v0_upper = solve_x0(std::max(1.5 * ell, rep.x0_lower + 0.5), true);
        rep.x0_upper = x0_of_v0(gp, rep.v0_upper);
        rep.upper_checked = true;
    }

    std::vector<double> xs(grid.n);
    for (int j = 0; j < grid.n; ++j) xs[j] = grid.node(j);
    const GroundStateProfile lower = ground_state_profile(gp, rep.v0_lower, xs);
    GroundStateProfile upper;
    if (require_upper) upper = ground_state_profile(gp, rep.v0_upper, xs);

    // Full-horizon run (no early stop) compared pointwise at T_f.
    EvolveOptions opt;
    opt.cadence = cp.cadence;
    opt.track_energy = false;
    EvolveResult res = evolve(p, indicator_ic(grid, ell), cp.T_f, sp, opt);
    rep.verdict.final_mass = mass(res.state);
    rep.verdict.final_max = max_u(res.state);
    rep.verdict.final_min = min_u(res.state);
    rep.verdict.t_decided = res.state.t;

    const double guard = 2.0 * grid.dx();
    rep.worst_below = 0.0;
    rep.worst_above = 0.0;
    for (int j = 0; j < grid.n; ++j) {
        const double x = grid.node(j);
        if (std::fabs(std::fabs(x) - rep.x0_lower) >= guard) {
            rep.worst_below = std::max(rep.worst_below, lower.U[j] - res.state.u[j]);
        }
        if (require_upper && std::fabs(std::fabs(x) - rep.x0_upper) >= guard) {
            rep.worst_above = std::max(rep.worst_above, res.state.u[j] - upper.U[j]);
        }
    }
    rep.ok_lower = rep.worst_below <= slack;
    rep.ok_upper = !require_upper || rep.worst_above <= slack;
    return rep;
}

} // namespace nlrd
