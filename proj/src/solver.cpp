#include "nlrd/solver.hpp"

#include "nlrd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nlrd {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

Grid Grid::make(int n, double half_width) {
    Grid g{n, half_width};
    validate(g);
    return g;
}

void validate(const Grid& g) {
    if (!is_power_of_two(g.n) || g.n < 8)
        throw ParameterError("grid size must be a power of two >= 8, got " +
                             std::to_string(g.n));
    if (!(g.half_width > 0.0))
        throw ParameterError("grid half-width must be positive");
}

void validate(const SchemeParams& sp) {
    if (!(sp.dt > 0.0) || sp.dt > 1.0)
        throw ParameterError("time step must satisfy 0 < dt <= 1, got " +
                             std::to_string(sp.dt));
    if (sp.reaction_substeps < 1)
        throw ParameterError("reaction_substeps must be >= 1");
}

SimState indicator_ic(const Grid& grid, double ell) {
    if (!(ell > 0.0) || ell >= grid.half_width)
        throw ParameterError("indicator half-width must satisfy 0 < ell < L, got ell = " +
                             std::to_string(ell));
    SimState s{grid, std::vector<double>(grid.n, 0.0), 0.0};
    for (int j = 0; j < grid.n; ++j)
        if (std::fabs(grid.node(j)) <= ell) s.u[j] = 1.0;
    return s;
}

Stepper::Stepper(const Grid& grid, const Problem& p, const SchemeParams& sp)
    : grid_(grid), prob_(p), params_(sp), fft_(grid.n),
      symbol_(grid.n / 2 + 1), spec_(grid.n / 2 + 1),
      work_a_(grid.n), work_b_(grid.n) {
    for (int k = 0; k <= grid.n / 2; ++k) symbol_[k] = p.K.symbol(grid.freq(k));
}

void Stepper::diffuse(std::vector<double>& u, double t) {
    if (t == 0.0 || prob_.d == 0.0) return;
    fft_.forward(u, spec_.data());
    for (int k = 0; k <= grid_.n / 2; ++k)
        spec_[k] *= std::exp(prob_.d * (symbol_[k] - 1.0) * t);
    fft_.inverse(spec_, u.data());
}

void Stepper::react(std::vector<double>& u, double t, int substeps) const {
    if (t == 0.0) return;
    const double h = t / substeps;
    const auto& nl = prob_.f;
    for (double& w : u) {
        for (int s = 0; s < substeps; ++s) {
            const double k1 = nl.f(w);
            const double k2 = nl.f(w + 0.5 * h * k1);
            const double k3 = nl.f(w + 0.5 * h * k2);
            const double k4 = nl.f(w + h * k3);
            w += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        }
    }
}

void Stepper::strang(std::vector<double>& u, double dt) {
    react(u, 0.5 * dt, params_.reaction_substeps);
    diffuse(u, dt);
    react(u, 0.5 * dt, params_.reaction_substeps);
}

void Stepper::richardson(std::vector<double>& u, double dt) {
    work_a_ = u; // two half Strang steps
    strang(work_a_, 0.5 * dt);
    strang(work_a_, 0.5 * dt);
    work_b_ = u; // one full Strang step
    strang(work_b_, dt);
    const double third = 1.0 / 3.0;
    for (std::size_t j = 0; j < u.size(); ++j)
        u[j] = third * (4.0 * work_a_[j] - work_b_[j]);
}

void Stepper::step(SimState& s, double dt) {
    if (params_.scheme == Scheme::Strang)
        strang(s.u, dt);
    else
        richardson(s.u, dt);
    s.t += dt;
}

std::vector<double> Stepper::convolve(const std::vector<double>& u) {
    std::vector<double> out(u.size());
    fft_.forward(u, spec_.data());
    for (int k = 0; k <= grid_.n / 2; ++k) spec_[k] *= symbol_[k];
    fft_.inverse(spec_, out.data());
    return out;
}

double Stepper::energy(const SimState& s) {
    const std::vector<double> conv = convolve(s.u);
    const double dx = grid_.dx();
    double quad = 0.0, pot = 0.0;
    for (int j = 0; j < grid_.n; ++j) {
        quad += s.u[j] * (s.u[j] - conv[j]);
        pot += prob_.f.F(s.u[j]);
    }
    return 0.5 * prob_.d * quad * dx + pot * dx;
}

double mass(const SimState& s) {
    double sum = 0.0;
    for (double v : s.u) sum += v;
    return sum * s.grid.dx();
}

double max_u(const SimState& s) { return *std::max_element(s.u.begin(), s.u.end()); }
double min_u(const SimState& s) { return *std::min_element(s.u.begin(), s.u.end()); }

double energy(const Problem& p, const SimState& s) {
    Stepper st(s.grid, p, SchemeParams{});
    return st.energy(s);
}

namespace {

DiagnosticsRow diagnostics(Stepper& st, const SimState& s, const EvolveOptions& opt,
                           bool& warned) {
    DiagnosticsRow row;
    row.t = s.t;
    row.mass = mass(s);
    row.max = max_u(s);
    row.min = min_u(s);
    row.energy = opt.track_energy ? st.energy(s) : 0.0;
    if (!warned) {
        const Grid& g = s.grid;
        const double edge = g.half_width - opt.boundary_margin;
        for (int j = 0; j < g.n; ++j) {
            if (std::fabs(g.node(j)) >= edge && std::fabs(s.u[j]) > opt.boundary_tol) {
                warned = true;
                break;
            }
        }
    }
    row.boundary_warning = warned;
    return row;
}

} // namespace

EvolveResult evolve(const Problem& p, SimState s0, double T, const SchemeParams& sp,
                    const EvolveOptions& opt, const Observer& observer) {
    if (!(T > 0.0)) throw ParameterError("final time must be positive");
    validate(s0.grid);
    validate(sp);
    Stepper st(s0.grid, p, sp);
    EvolveResult res;
    res.state = std::move(s0);
    bool warned = false;

    auto emit = [&]() -> bool {
        DiagnosticsRow row = diagnostics(st, res.state, opt, warned);
        if (!std::isfinite(row.mass) || !std::isfinite(row.max) || !std::isfinite(row.min)) {
            const double last = res.trace.empty() ? res.state.t : res.trace.back().t;
            throw NumericalError("field became non-finite at t = " +
                                 std::to_string(res.state.t) + " (last valid t = " +
                                 std::to_string(last) + ")");
        }
        res.trace.push_back(row);
        return observer && observer(res.state, row);
    };

    if (emit()) {
        res.stopped_early = true;
        return res;
    }
    // Indexed stepping: the clock is t0 + k dt exactly, so the step count
    // and the diagnostics cadence are immune to accumulation error.
    const double t0 = res.state.t;
    long n_full = static_cast<long>(std::floor(T / sp.dt + 1e-9));
    double remainder = T - n_full * sp.dt;
    if (remainder < 1e-12 * std::max(1.0, T)) remainder = 0.0;
    const long n_steps = n_full + (remainder > 0.0 ? 1 : 0);
    for (long k = 1; k <= n_steps; ++k) {
        const bool last = k == n_steps;
        const double dt = (last && remainder > 0.0) ? remainder : sp.dt;
        st.step(res.state, dt);
        res.state.t = last ? t0 + T : t0 + k * sp.dt;
        if (k % opt.cadence == 0 || last) {
            if (emit()) {
                res.stopped_early = !last;
                return res;
            }
        }
    }
    return res;
}

SimState diffusion_flow(const Problem& p, const SimState& s, double t) {
    Stepper st(s.grid, p, SchemeParams{});
    SimState out = s;
    st.diffuse(out.u, t);
    out.t += t;
    return out;
}

SimState reaction_flow(const Problem& p, const SimState& s, double t, int substeps) {
    Stepper st(s.grid, p, SchemeParams{});
    SimState out = s;
    st.react(out.u, t, substeps);
    out.t += t;
    return out;
}

SimState strang_step(const Problem& p, const SimState& s, double dt) {
    Stepper st(s.grid, p, SchemeParams{});
    SimState out = s;
    st.strang(out.u, dt);
    out.t += dt;
    return out;
}

SimState richardson_step(const Problem& p, const SimState& s, double dt) {
    Stepper st(s.grid, p, SchemeParams{});
    SimState out = s;
    st.richardson(out.u, dt);
    out.t += dt;
    return out;
}

} // namespace nlrd
