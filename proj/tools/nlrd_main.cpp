// Command-line front end: single runs, ground-state construction,
// threshold bisection, region maps, parameter sweeps and a self-check
// suite. Outputs are plain CSV/JSON/SVG under the chosen directory.

#include "nlrd/classify.hpp"
#include "nlrd/config.hpp"
#include "nlrd/csvio.hpp"
#include "nlrd/errors.hpp"
#include "nlrd/quadrature.hpp"
#include "nlrd/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlrd;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCase = 4;

// "min:max:count" or a comma-separated list.
std::vector<double> parse_grid_spec(const std::string& spec) {
    std::vector<double> vals;
    if (spec.find(':') != std::string::npos) {
        double lo, hi;
        int count;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
            throw ParameterError("bad range spec '" + spec + "' (want min:max:count)");
        for (int i = 0; i < count; ++i)
            vals.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return vals;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) vals.push_back(std::stod(item));
    if (vals.empty()) throw ParameterError("empty list spec '" + spec + "'");
    return vals;
}

struct CommonOpts {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    int jobs = -1;
    double a = -1, d = -1, dt = -1, L = -1, Tf = -1;
    int N = -1;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--preset", o.preset, "parameter preset: paper or desk");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--jobs", o.jobs, "worker threads for sweeps (0 = hardware)");
    cmd->add_option("--a", o.a, "unstable zero of the cubic");
    cmd->add_option("--d", o.d, "diffusion coefficient");
    cmd->add_option("--dt", o.dt, "time step");
    cmd->add_option("--N", o.N, "grid size (power of two)");
    cmd->add_option("--L", o.L, "domain half-width");
    cmd->add_option("--Tf", o.Tf, "final-time cap");
}

RunConfig resolve_config(const CommonOpts& o) {
    RunConfig cfg;
    if (!o.config_path.empty()) cfg = load_config(o.config_path);
    if (!o.preset.empty()) apply_preset(cfg, o.preset);
    if (o.a >= 0) cfg.a = o.a;
    if (o.d >= 0) cfg.d = o.d;
    if (o.dt >= 0) cfg.scheme.dt = o.dt;
    if (o.N >= 0) cfg.grid.n = o.N;
    if (o.L >= 0) cfg.grid.half_width = o.L;
    if (o.Tf >= 0) cfg.classify.T_f = o.Tf;
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.jobs >= 0) cfg.jobs = o.jobs;
    validate(cfg);
    return cfg;
}

int effective_jobs(const RunConfig& cfg) {
    if (cfg.jobs > 0) return cfg.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 2;
}

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot open for writing: " + path.string());
    out << text;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const RunConfig& cfg, double ell, const std::string& snapshot_spec) {
    const Problem p = cfg.problem();
    if (!(ell > 0.0 && ell < cfg.grid.half_width))
        throw ParameterError("--ell must satisfy 0 < ell < L");
    std::vector<double> snapshot_times;
    if (!snapshot_spec.empty()) snapshot_times = parse_grid_spec(snapshot_spec);
    std::sort(snapshot_times.begin(), snapshot_times.end());

    const fs::path out(cfg.out_dir);
    CsvWriter diag(out / "diagnostics.csv", {"t", "mass", "max", "min", "energy"});
    std::vector<double> trace_t, trace_mass;

    std::size_t next_snap = 0;
    auto snapshot = [&](const SimState& s, double label) {
        CsvWriter w(out / ("snapshot_" + format_double(label) + ".csv"), {"x", "u"});
        for (int j = 0; j < s.grid.n; ++j) {
            w.cell(s.grid.node(j));
            w.cell(s.u[j]);
            w.end_row();
        }
    };

    SimState s0 = indicator_ic(cfg.grid, ell);
    if (next_snap < snapshot_times.size() && snapshot_times[next_snap] <= 0.0) {
        snapshot(s0, snapshot_times[next_snap]);
        ++next_snap;
    }
    Observer obs = [&](const SimState& s, const DiagnosticsRow& row) {
        diag.cell(row.t);
        diag.cell(row.mass);
        diag.cell(row.max);
        diag.cell(row.min);
        diag.cell(row.energy);
        diag.end_row();
        trace_t.push_back(row.t);
        trace_mass.push_back(row.mass);
        while (next_snap < snapshot_times.size() &&
               snapshot_times[next_snap] <= s.t + 1e-9) {
            snapshot(s, snapshot_times[next_snap]);
            ++next_snap;
        }
        if (row.boundary_warning)
            std::cerr << "warning: field exceeds 1e-6 within 5 units of the domain edge "
                         "(t = "
                      << row.t << "); periodic truncation is no longer trustworthy\n";
        return false;
    };
    EvolveOptions opt;
    opt.cadence = cfg.classify.cadence;
    EvolveResult res = evolve(p, std::move(s0), cfg.classify.T_f, cfg.scheme, opt, obs);

    CsvWriter final_csv(out / "final.csv", {"x", "u"});
    std::vector<double> xs(cfg.grid.n), us = res.state.u;
    for (int j = 0; j < cfg.grid.n; ++j) {
        xs[j] = cfg.grid.node(j);
        final_csv.cell(xs[j]);
        final_csv.cell(us[j]);
        final_csv.end_row();
    }

    SvgPlot field("u(T, x) at T = " + format_double(res.state.t), "x", "u");
    field.polyline(xs, us, "#1f77b4");
    field.write(out / "field.svg");
    SvgPlot mass_plot("mass(t)", "t", "mass");
    mass_plot.polyline(trace_t, trace_mass, "#d62728");
    mass_plot.write(out / "mass.svg");
    std::cout << "simulate: T = " << res.state.t << ", final max = " << max_u(res.state)
              << ", outputs in " << out.string() << "\n";
    return 0;
}

// -------------------------------------------------------------- groundstate

int cmd_groundstate(const RunConfig& cfg, double v0_opt, bool star) {
    const Problem p = cfg.problem();
    GluedPotentials gp(p);
    const CaseLabel label = classify_case(gp);
    const GroundStateFamily fam = ground_state_family(gp);
    const fs::path out(cfg.out_dir);
    std::cout << "case: " << label.describe() << "\n";

    const int half_count = static_cast<int>(cfg.grid.half_width / 0.01);
    std::vector<double> xs(2 * half_count + 1);
    for (int i = 0; i <= 2 * half_count; ++i) xs[i] = (i - half_count) * 0.01;

    // Family curve v0 -> (x0, v*), when a discontinuous family exists.
    if (!fam.empty) {
        CsvWriter wf(out / "family.csv", {"v0", "x0", "v_star"});
        const double lo = fam.lo_open ? std::max(1e-6, fam.v0_lo) : fam.v0_lo + 1e-12;
        const double hi = fam.hi_open ? fam.v0_hi - 1e-6 : fam.v0_hi;
        const int samples = 60;
        for (int i = 0; i <= samples; ++i) {
            const double v0 = lo + (hi - lo) * i / samples;
            wf.cell(v0);
            wf.cell(x0_of_v0(gp, v0));
            wf.cell(v_star(gp, v0));
            wf.end_row();
        }
    }

    GroundStateProfile prof;
    std::string mode;
    if (star) {
        const auto s = x0_star(gp);
        std::cout << "v0* = " << format_double(s.first) << ", x0* = "
                  << format_double(s.second) << "\n";
        json j{{"v0_star", s.first}, {"x0_star", s.second}};
        write_text(out / "star.json", j.dump(2));
        prof = ground_state_profile(gp, s.first, xs);
        mode = "extremal ground state (v0 = v0*)";
    } else if (v0_opt >= 0.0) {
        prof = ground_state_profile(gp, v0_opt, xs);
        mode = "ground state at v0 = " + format_double(v0_opt);
    } else {
        prof = smooth_ground_state(gp, xs);
        mode = "smooth ground state";
    }

    CsvWriter wp(out / "profile.csv", {"x", "U", "V", "branch"});
    for (std::size_t i = 0; i < prof.x.size(); ++i) {
        wp.cell(prof.x[i]);
        wp.cell(prof.U[i]);
        wp.cell(prof.V[i]);
        wp.cell(static_cast<long>(prof.branch[i]));
        wp.end_row();
    }
    SvgPlot plot(mode, "x", "U, V");
    plot.note(label.describe());
    plot.polyline(prof.x, prof.U, "#1f77b4", 1.8);
    plot.polyline(prof.x, prof.V, "#2ca02c", 1.2, true);
    if (prof.x0 > 0.0) {
        plot.vline(prof.x0, "#d62728");
        plot.vline(-prof.x0, "#d62728");
    }
    plot.write(out / "profile.svg");
    std::cout << "x0 = " << format_double(prof.x0) << ", U(0) = "
              << format_double(prof.U[prof.U.size() / 2]) << ", outputs in "
              << out.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- threshold

json threshold_to_json(const ThresholdResult& r) {
    json j;
    j["status"] = r.status == BracketStatus::Bracketed
                      ? "bracketed"
                      : (r.status == BracketStatus::OpenBelow ? "open_below" : "open_above");
    j["lo"] = r.lo;
    j["hi"] = r.hi;
    j["tol"] = r.tol;
    j["runs"] = r.runs;
    if (r.status == BracketStatus::Bracketed) j["value"] = r.value();
    return j;
}

void threshold_cells(CsvWriter& w, const ThresholdResult& r) {
    if (r.status == BracketStatus::OpenBelow) {
        w.cell(0.0);
        w.cell(0.0);
    } else if (r.status == BracketStatus::OpenAbove) {
        w.cell(std::numeric_limits<double>::infinity());
        w.cell(std::numeric_limits<double>::infinity());
    } else {
        w.cell(r.lo);
        w.cell(r.hi);
    }
}

int cmd_threshold(const RunConfig& cfg, const std::string& d_spec) {
    std::vector<double> d_values{cfg.d};
    if (!d_spec.empty()) d_values = parse_grid_spec(d_spec);
    const fs::path out(cfg.out_dir);
    CsvWriter w(out / "threshold.csv",
                {"a", "d", "ell0_lo", "ell0_hi", "ell1_lo", "ell1_hi", "region"});
    json rows = json::array();
    std::vector<double> ds, ell0s, ell1s, x0s;
    for (const double d : d_values) {
        RunConfig local = cfg;
        local.d = d;
        const Problem p = local.problem();
        const RegionLabel region = region_label(cfg.a, d);
        const ThresholdResult r0 =
            threshold_ell0(p, cfg.grid, cfg.scheme, cfg.classify, cfg.ell_tol());
        const ThresholdResult r1 =
            threshold_ell1(p, cfg.grid, cfg.scheme, cfg.classify, cfg.ell_tol());
        w.cell(cfg.a);
        w.cell(d);
        threshold_cells(w, r0);
        threshold_cells(w, r1);
        w.cell(region.name());
        w.end_row();
        json row{{"a", cfg.a},
                 {"d", d},
                 {"region", region.name()},
                 {"ell0", threshold_to_json(r0)},
                 {"ell1", threshold_to_json(r1)}};
        // Conjectured propagation threshold where the family exists.
        try {
            Problem pe = p;
            GluedPotentials gp(pe);
            const auto star = x0_star(gp);
            row["x0_star"] = star.second;
            x0s.push_back(star.second);
        } catch (const CaseError&) {
            x0s.push_back(std::numeric_limits<double>::quiet_NaN());
        }
        rows.push_back(row);
        ds.push_back(d);
        ell0s.push_back(r0.status == BracketStatus::Bracketed
                            ? r0.value()
                            : std::numeric_limits<double>::quiet_NaN());
        ell1s.push_back(r1.status == BracketStatus::Bracketed
                            ? r1.value()
                            : std::numeric_limits<double>::quiet_NaN());
        std::cout << "d = " << format_double(d) << "  [" << region.name() << "]  ell0 "
                  << threshold_to_json(r0).dump() << "  ell1 "
                  << threshold_to_json(r1).dump() << "\n";
    }
    write_text(out / "threshold.json", rows.dump(2));
    if (ds.size() > 1) {
        SvgPlot plot("propagation / extinction thresholds, a = " + format_double(cfg.a),
                     "d", "ell");
        plot.note("blue circles: ell0*; red: ell1*; dark blue: x0* overlay; verticals: "
                  "d_pin (pink), d_ext (magenta), 1/4 (black)");
        plot.scatter(ds, ell0s, "#1f77b4", 4.0);
        plot.scatter(ds, ell1s, "#d62728", 4.0);
        plot.polyline(ds, x0s, "#00008b", 1.8);
        plot.vline(d_pin(cfg.a), "#ff69b4");
        plot.vline(d_ext(cfg.a), "#ff00ff");
        plot.vline(0.25, "#000000");
        plot.write(out / "threshold.svg");
    }
    return 0;
}

// ------------------------------------------------------------------ regions

int cmd_regions(const RunConfig& cfg, const std::string& a_spec, const std::string& d_spec) {
    const std::vector<double> as = parse_grid_spec(a_spec);
    const std::vector<double> ds = parse_grid_spec(d_spec);
    const fs::path out(cfg.out_dir);
    CsvWriter w(out / "regions.csv", {"a", "d", "region", "sub", "boundary"});
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> buckets;
    for (const double a : as)
        for (const double d : ds) {
            const RegionLabel lab = region_label(a, d);
            w.cell(a);
            w.cell(d);
            w.cell(static_cast<long>(lab.region));
            w.cell(std::string(1, lab.sub));
            w.cell(std::string(lab.boundary ? "1" : "0"));
            w.end_row();
            auto& b = buckets["R" + std::to_string(lab.region)];
            b.first.push_back(a);
            b.second.push_back(d);
        }
    const char* colors[5] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd"};
    SvgPlot plot("regions of long-time behavior", "a", "d");
    plot.note("R1 blue, R2 orange, R3 green, R4 red, R5 purple; curves: d_pin, d_ext, 1/4");
    for (int r = 1; r <= 5; ++r) {
        const auto it = buckets.find("R" + std::to_string(r));
        if (it != buckets.end())
            plot.scatter(it->second.first, it->second.second, colors[r - 1], 3.5);
    }
    std::vector<double> ax, dpin, dext, quarter;
    for (double a = 0.01; a < 0.5; a += 0.005) {
        ax.push_back(a);
        dpin.push_back(d_pin(a));
        dext.push_back(d_ext(a));
        quarter.push_back(0.25);
    }
    plot.polyline(ax, dpin, "#ff69b4", 1.5);
    plot.polyline(ax, dext, "#ff00ff", 1.5);
    plot.polyline(ax, quarter, "#000000", 1.0, true);
    plot.write(out / "regions.svg");
    std::cout << "regions: " << as.size() * ds.size() << " points, outputs in "
              << out.string() << "\n";
    return 0;
}

// -------------------------------------------------------------------- sweep

int cmd_sweep(const RunConfig& cfg, const std::string& d_spec, const std::string& ell_spec) {
    const std::vector<double> ds =
        d_spec.empty() ? std::vector<double>{cfg.d} : parse_grid_spec(d_spec);
    const std::vector<double> ells = parse_grid_spec(ell_spec);
    std::vector<SweepTask> tasks;
    for (const double d : ds)
        for (const double ell : ells) tasks.push_back({cfg.a, d, ell});
    const std::vector<SweepRow> rows =
        sweep(tasks, cfg.grid, cfg.scheme, cfg.classify, effective_jobs(cfg));

    const fs::path out(cfg.out_dir);
    CsvWriter w(out / "sweep.csv",
                {"a", "d", "ell", "verdict", "t_decided", "final_mass", "final_max"});
    json jrows = json::array();
    for (const auto& row : rows) {
        w.cell(row.task.a);
        w.cell(row.task.d);
        w.cell(row.task.ell);
        if (row.verdict) {
            w.cell(to_string(row.verdict->fate));
            w.cell(row.verdict->t_decided);
            w.cell(row.verdict->final_mass);
            w.cell(row.verdict->final_max);
        } else {
            w.cell("error: " + row.error);
            w.cell(0.0);
            w.cell(0.0);
            w.cell(0.0);
        }
        w.end_row();
        json jr{{"a", row.task.a}, {"d", row.task.d}, {"ell", row.task.ell}};
        if (row.verdict) {
            jr["verdict"] = to_string(row.verdict->fate);
            jr["t_decided"] = row.verdict->t_decided;
            jr["final_mass"] = row.verdict->final_mass;
            jr["final_max"] = row.verdict->final_max;
        } else {
            jr["error"] = row.error;
        }
        jrows.push_back(jr);
    }
    write_text(out / "sweep.json", jrows.dump(2));
    std::cout << "sweep: " << rows.size() << " runs, outputs in " << out.string() << "\n";
    return 0;
}

// ---------------------------------------------------------------- selfcheck

int cmd_selfcheck() {
    int failures = 0;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    for (const Kernel& k : {Kernel::exponential(), Kernel::gaussian()}) {
        const double m0 =
            integrate_adaptive([&](double x) { return k.pointwise(x); }, -40.0, 40.0, 1e-12);
        const double m2 = 0.5 * integrate_adaptive(
                                    [&](double x) { return x * x * k.pointwise(x); },
                                    -40.0, 40.0, 1e-10);
        const char* nm = k.kind == Kernel::Kind::Exponential ? "exponential" : "gaussian";
        check(std::string("kernel mass = 1 (") + nm + ")", std::fabs(m0 - 1.0) < 1e-8,
              format_double(m0));
        check(std::string("kernel second moment = 1 (") + nm + ")",
              std::fabs(m2 - 1.0) < 1e-6, format_double(m2));
    }

    {
        double worst = 0.0;
        for (double a : {0.1, 0.2, 0.3, 0.4}) {
            const auto nl = BistableNonlinearity::cubic(a);
            worst = std::max(worst, std::fabs(kappa_numeric(nl) - kappa(nl)));
        }
        check("kappa: numeric matches closed form to 1e-10", worst < 1e-10,
              format_double(worst));
    }
    {
        const double ac = critical_a();
        check("a_c within 5e-4 of 0.3850", std::fabs(ac - 0.3850) < 5e-4,
              format_double(ac));
    }
    {
        Problem p{BistableNonlinearity::cubic(0.3), Kernel::exponential(), d_pin(0.3)};
        check("pinning residual vanishes at d_pin",
              std::fabs(pinning_residual(p)) < 1e-9, format_double(pinning_residual(p)));
    }
    {
        Problem p{BistableNonlinearity::cubic(0.2), Kernel::exponential(), 0.2};
        GluedPotentials gp(p);
        check("G+(1) = -1/2", std::fabs(gp.potential_plus(1.0) + 0.5) < 1e-12);
        const GBranches br = critical_points(p);
        double worst = 0;
        for (int i = 1; i <= 500; ++i) {
            const double u = *br.beta * i / 501.0;
            worst = std::max(worst,
                             std::fabs(branch_inverse(p, br, p.g(u), Branch::Minus) - u));
        }
        check("branch inverse round trip to 1e-10", worst < 1e-10, format_double(worst));
        const auto star = x0_star(gp);
        check("extremal gluing parameter v0* = a", std::fabs(star.first - 0.2) < 1e-12);
    }
    {
        const Grid g = Grid::make(1 << 10, 10.0 * M_PI);
        Problem p{BistableNonlinearity::cubic(0.3), Kernel::exponential(), 1.0};
        SimState mode{g, std::vector<double>(g.n), 0.0};
        const double xi1 = g.freq(3);
        for (int j = 0; j < g.n; ++j) mode.u[j] = std::cos(xi1 * g.node(j));
        const SimState out = diffusion_flow(p, mode, 1.0);
        const double fac = std::exp(1.0 / (1.0 + xi1 * xi1) - 1.0);
        double worst = 0;
        for (int j = 0; j < g.n; ++j)
            worst = std::max(worst, std::fabs(out.u[j] - fac * mode.u[j]));
        check("spectral flow matches the closed-form multiplier to 1e-12", worst < 1e-12,
              format_double(worst));

        SimState ones{g, std::vector<double>(g.n, 1.0), 0.0};
        const SimState after = richardson_step(p, ones, 0.01);
        double dev = 0;
        for (double v : after.u) dev = std::max(dev, std::fabs(v - 1.0));
        check("u = 1 is a fixed state", dev < 1e-14, format_double(dev));
    }
    std::cout << (failures ? "selfcheck: FAILURES\n" : "selfcheck: all passed\n");
    return failures ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal bistable reaction-diffusion laboratory"};
    app.require_subcommand(1);

    CommonOpts sim_o, gs_o, th_o, rg_o, sw_o;
    double sim_ell = 2.0;
    std::string sim_snapshots;
    auto* sim = app.add_subcommand("simulate", "integrate the Cauchy problem from an indicator datum");
    add_common(sim, sim_o);
    sim->add_option("--ell", sim_ell, "indicator half-width")->required();
    sim->add_option("--snapshots", sim_snapshots, "comma list of snapshot times");

    double gs_v0 = -1.0;
    bool gs_star = false;
    auto* gs = app.add_subcommand("groundstate", "construct ground states by phase-plane gluing");
    add_common(gs, gs_o);
    gs->add_option("--v0", gs_v0, "gluing parameter (omit for the smooth state)");
    gs->add_flag("--star", gs_star, "report the extremal pair (v0*, x0*)");

    std::string th_dlist;
    auto* th = app.add_subcommand("threshold", "bisect the extinction/propagation thresholds");
    add_common(th, th_o);
    th->add_option("--d-list", th_dlist, "d values: comma list or min:max:count");

    std::string rg_a = "0.02:0.48:20", rg_d = "0.02:0.48:20";
    auto* rg = app.add_subcommand("regions", "closed-form region map over (a,d)");
    add_common(rg, rg_o);
    rg->add_option("--a-grid", rg_a, "a values: comma list or min:max:count");
    rg->add_option("--d-grid", rg_d, "d values: comma list or min:max:count");

    std::string sw_dlist, sw_elllist = "0.5:6:12";
    auto* sw = app.add_subcommand("sweep", "classify a grid of (d, ell) runs in parallel");
    add_common(sw, sw_o);
    sw->add_option("--d-list", sw_dlist, "d values: comma list or min:max:count");
    sw->add_option("--ell-list", sw_elllist, "ell values: comma list or min:max:count");

    auto* sc = app.add_subcommand("selfcheck", "run the built-in invariant checks");
    (void)sc;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (sim->parsed()) return cmd_simulate(resolve_config(sim_o), sim_ell, sim_snapshots);
        if (gs->parsed()) return cmd_groundstate(resolve_config(gs_o), gs_v0, gs_star);
        if (th->parsed()) return cmd_threshold(resolve_config(th_o), th_dlist);
        if (rg->parsed()) return cmd_regions(resolve_config(rg_o), rg_a, rg_d);
        if (sw->parsed()) return cmd_sweep(resolve_config(sw_o), sw_dlist, sw_elllist);
        if (sc->parsed()) return cmd_selfcheck();
    } catch (const ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const CaseError& e) {
        std::cerr << "case error: " << e.what() << "\n";
        return kExitCase;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
