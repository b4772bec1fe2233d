#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nlrd/classify.hpp"

#include <cmath>

using namespace nlrd;

namespace {

Problem cubic_problem(double a, double d) {
    return Problem{BistableNonlinearity::cubic(a), Kernel::exponential(), d};
}

// Unit-test scale: coarser grid and shorter horizon than the reference
// setup; the acceptance suite runs the full-size configuration.
const Grid kGrid = Grid::make(1 << 11, 10.0 * M_PI);
const SchemeParams kScheme{0.01, Scheme::Richardson4, 1};

ClassifyParams quick_params() {
    ClassifyParams cp;
    cp.T_f = 150.0;
    return cp;
}

} // namespace

TEST_CASE("region labels from the closed-form boundaries") {
    CHECK(region_label(0.1, 0.3).region == 1);
    CHECK(region_label(0.3, 0.3).region == 1);
    CHECK(region_label(0.3, 0.2).region == 2);
    CHECK(region_label(0.3, 0.2).sub == '<');
    CHECK(region_label(0.45, 0.2).region == 2);
    CHECK(region_label(0.45, 0.2).sub == '>');
    CHECK(region_label(0.2, 0.1).region == 3);
    CHECK(region_label(0.45, 0.1).region == 4);
    CHECK(region_label(0.35, 0.05).region == 5);
    CHECK(region_label(0.35, 0.05).sub == '<');
    CHECK(region_label(0.45, 0.05).region == 5);
    CHECK(region_label(0.45, 0.05).sub == '>');
    CHECK(region_label(0.3, 0.25).boundary);
    CHECK(region_label(0.3, d_pin(0.3)).boundary);
    CHECK_THROWS_AS(region_label(0.6, 0.1), ParameterError);
    CHECK_THROWS_AS(region_label(0.3, -0.1), ParameterError);
}

TEST_CASE("critical a reproduces the reported crossing") {
    const double ac = critical_a();
    CHECK(std::fabs(ac - 0.3850) < 5e-4);
    // And the crossing height stays below 1/4 (the reported 0.9455 is a
    // typo in the source material; the consistent value is ~0.0946).
    CHECK(d_pin(ac) < 0.25);
    CHECK(d_pin(ac) == doctest::Approx(d_ext(ac)).epsilon(1e-9));
    CHECK(d_pin(ac) == doctest::Approx(0.0946).epsilon(2e-3));
}

TEST_CASE("classification parameter validation") {
    ClassifyParams cp;
    cp.eps_zero = 0.5; // above a
    CHECK_THROWS_AS(validate(cp, cubic_problem(0.3, 0.2)), ParameterError);
    ClassifyParams ok;
    CHECK_NOTHROW(validate(ok, cubic_problem(0.3, 0.2)));
    CHECK_THROWS_AS(
        classify_run(cubic_problem(0.3, 0.2), kGrid, kScheme, 0.9 * kGrid.half_width,
                     ok),
        ParameterError);
}

TEST_CASE("verdicts at the three reference points") {
    const ClassifyParams cp = quick_params();
    SUBCASE("small indicator above kappa: extinction") {
        const Verdict v = classify_run(cubic_problem(0.3, 0.4), kGrid, kScheme, 0.05, cp);
        CHECK(v.fate == Fate::Extinction);
        CHECK(v.final_max < 0.3);
    }
    SUBCASE("wide indicator outside pinning: propagation") {
        const Verdict v = classify_run(cubic_problem(0.3, 0.4), kGrid, kScheme, 6.0, cp);
        CHECK(v.fate == Fate::Propagation);
        CHECK(v.final_min > -1e-6);
    }
    SUBCASE("deep pinning region: stagnation") {
        const Verdict v = classify_run(cubic_problem(0.35, 0.05), kGrid, kScheme, 2.0, cp);
        CHECK(v.fate == Fate::Stagnation);
        CHECK(v.final_max > 0.35);
        CHECK(v.final_max < 1.0);
        CHECK(v.steady_residual < 1e-5);
    }
}

TEST_CASE("extinction early stop is sound") {
    // Once the field passes under a - eps_zero the verdict is final:
    // continuing to the horizon drives the maximum to zero.
    const ClassifyParams cp = quick_params();
    for (double ell : {0.05, 0.2, 0.4}) {
        const Problem p = cubic_problem(0.3, 0.4);
        const Verdict v = classify_run(p, kGrid, kScheme, ell, cp);
        REQUIRE(v.fate == Fate::Extinction);
        EvolveOptions opt;
        opt.cadence = 1 << 28;
        opt.track_energy = false;
        const EvolveResult full = evolve(p, indicator_ic(kGrid, ell), cp.T_f, kScheme, opt);
        CHECK(max_u(full.state) < cp.eps_zero);
    }
}

TEST_CASE("thresholds report open ends in the stagnation-only region") {
    const ClassifyParams cp = quick_params();
    const Problem p = cubic_problem(0.35, 0.05);
    const double tol = 1e-3 * kGrid.half_width;
    const ThresholdResult r0 = threshold_ell0(p, kGrid, kScheme, cp, tol);
    CHECK(r0.status == BracketStatus::OpenBelow);
    const ThresholdResult r1 = threshold_ell1(p, kGrid, kScheme, cp, tol);
    CHECK(r1.status == BracketStatus::OpenAbove);
}

TEST_CASE("sweep: determinism, error rows, verdict banding") {
    const ClassifyParams cp = quick_params();
    SUBCASE("empty task list") {
        CHECK(sweep({}, kGrid, kScheme, cp, 2).empty());
    }
    SUBCASE("duplicate tasks give identical rows") {
        const std::vector<SweepTask> tasks{{0.3, 0.4, 0.05}, {0.3, 0.4, 0.05}};
        const auto rows = sweep(tasks, kGrid, kScheme, cp, 2);
        REQUIRE(rows.size() == 2);
        REQUIRE(rows[0].verdict.has_value());
        REQUIRE(rows[1].verdict.has_value());
        CHECK(rows[0].verdict->fate == rows[1].verdict->fate);
        CHECK(rows[0].verdict->t_decided == rows[1].verdict->t_decided);
        CHECK(rows[0].verdict->final_mass == rows[1].verdict->final_mass);
    }
    SUBCASE("invalid task is reported in its row without aborting") {
        const std::vector<SweepTask> tasks{{0.3, -1.0, 0.5}, {0.3, 0.4, 0.05}};
        const auto rows = sweep(tasks, kGrid, kScheme, cp, 2);
        CHECK(!rows[0].verdict.has_value());
        CHECK(!rows[0].error.empty());
        CHECK(rows[1].verdict.has_value());
    }
    SUBCASE("mini-sweep reproduces the qualitative banding in ell") {
        const std::vector<double> ds{0.1, 0.2, 0.28, 0.35};
        const std::vector<double> ells{0.25, 1.0, 2.5, 6.0};
        std::vector<SweepTask> tasks;
        for (double d : ds)
            for (double ell : ells) tasks.push_back({0.3, d, ell});
        const auto rows = sweep(tasks, kGrid, kScheme, cp, 2);
        bool any_stagnation_below_quarter = false;
        for (std::size_t r = 0; r < ds.size(); ++r) {
            // Along increasing ell: extinction block, then a stagnation /
            // undecided band, then propagation; no inversions.
            int stage = 0;
            for (std::size_t c = 0; c < ells.size(); ++c) {
                REQUIRE(rows[r * ells.size() + c].verdict.has_value());
                const Fate f = rows[r * ells.size() + c].verdict->fate;
                int s = 0;
                if (f == Fate::Stagnation || f == Fate::Undecided) s = 1;
                if (f == Fate::Propagation) s = 2;
                CHECK(s >= stage);
                stage = std::max(stage, s);
                if (ds[r] < 0.25 && f == Fate::Stagnation)
                    any_stagnation_below_quarter = true;
            }
            // Large ell propagates for every d above the pinning boundary.
            CHECK(rows[r * ells.size() + ells.size() - 1].verdict->fate ==
                  Fate::Propagation);
        }
        CHECK(any_stagnation_below_quarter);
    }
}

TEST_CASE("conjecture check rejects parameters outside R2 and R3") {
    const ClassifyParams cp = quick_params();
    CHECK_THROWS_AS(
        conjecture_check(cubic_problem(0.3, 0.3), kGrid, kScheme, cp, 0.03),
        CaseError);
}

TEST_CASE("propagation threshold tracks the extremal discontinuity in R2") {
    // Near-threshold transients hover, so give the run the full horizon.
    ClassifyParams cp;
    cp.T_f = 500.0;
    const Grid g = Grid::make(1 << 12, 10.0 * M_PI);
    const ConjectureReport rep =
        conjecture_check(cubic_problem(0.3, 0.24), g, kScheme, cp,
                         1e-3 * g.half_width);
    CHECK(rep.gap <= 0.05);
    CHECK(rep.v0_star == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("threshold boundaries: extinction onset at d_ext, propagation onset at d_pin") {
    const ClassifyParams cp = quick_params();
    const double tol = 1e-3 * kGrid.half_width;
    // d_ext(0.3) = 0.1225: below it extinction never occurs.
    CHECK(threshold_ell0(cubic_problem(0.3, 0.10), kGrid, kScheme, cp, tol).status ==
          BracketStatus::OpenBelow);
    CHECK(threshold_ell0(cubic_problem(0.3, 0.20), kGrid, kScheme, cp, tol).status ==
          BracketStatus::Bracketed);
    // d_pin(0.3) = 0.0525: below it propagation never occurs.
    CHECK(threshold_ell1(cubic_problem(0.3, 0.04), kGrid, kScheme, cp, tol).status ==
          BracketStatus::OpenAbove);
    CHECK(threshold_ell1(cubic_problem(0.3, 0.08), kGrid, kScheme, cp, tol).status ==
          BracketStatus::Bracketed);
}

TEST_CASE("sandwich preconditions") {
    const ClassifyParams cp = quick_params();
    // Monotone g: no fold points at all.
    CHECK_THROWS_AS(
        sandwich_check(cubic_problem(0.3, 0.3), kGrid, kScheme, cp, 1.0), CaseError);
    // Outside the pinning region the upper bound is not available.
    CHECK_THROWS_AS(
        sandwich_check(cubic_problem(0.3, 0.08), kGrid, kScheme, cp, 1.0, true),
        CaseError);
}

TEST_CASE("lower ground-state bound holds outside the pinning region") {
    ClassifyParams cp = quick_params();
    cp.T_f = 120.0;
    const SandwichReport rep =
        sandwich_check(cubic_problem(0.3, 0.08), kGrid, kScheme, cp, 1.0, false);
    CHECK(rep.ok_lower);
    CHECK(!rep.upper_checked);
    CHECK(rep.x0_lower <= 1.0 + 1e-9);
}
