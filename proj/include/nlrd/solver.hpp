#pragma once

#include "nlrd/fft.hpp"
#include "nlrd/model.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace nlrd {

/// Uniform periodic grid on [-L, L) with a power-of-two node count.
struct Grid {
    int n = 4096;
    double half_width = 10.0 * M_PI;

    double dx() const { return 2.0 * half_width / n; }
    double node(int j) const { return -half_width + dx() * j; }
    /// Spectral wavenumber of mode k (0 <= k <= n/2): pi k / L.
    double freq(int k) const { return M_PI * k / half_width; }

    static Grid make(int n, double half_width);
};

struct SimState {
    Grid grid;
    std::vector<double> u;
    double t = 0.0;
};

/// Indicator initial datum on [-ell, ell] (closed: nodes exactly at the
/// edge are set to 1).
SimState indicator_ic(const Grid& grid, double ell);

enum class Scheme { Strang, Richardson4 };

struct SchemeParams {
    double dt = 0.01;
    Scheme scheme = Scheme::Richardson4;
    int reaction_substeps = 1;
};

void validate(const Grid& g);
void validate(const SchemeParams& sp);

/// Time integrator for du/dt = d(-u + K*u) + f(u) on a periodic grid:
/// exact spectral nonlocal-diffusion flow, pointwise RK4 reaction flow,
/// their Strang composition, and its 4/3 - 1/3 Richardson extrapolation.
class Stepper {
  public:
    Stepper(const Grid& grid, const Problem& p, const SchemeParams& sp);

    const Grid& grid() const { return grid_; }
    const Problem& problem() const { return prob_; }
    const SchemeParams& params() const { return params_; }

    /// Applies e^{d(K^(xi)-1)t} mode by mode; exact for the periodic
    /// problem up to roundoff.
    void diffuse(std::vector<double>& u, double t);
    /// Advances each node independently by classical RK4 on w' = f(w).
    void react(std::vector<double>& u, double t, int substeps) const;
    void strang(std::vector<double>& u, double dt);
    void richardson(std::vector<double>& u, double dt);
    /// One step of the configured scheme.
    void step(SimState& s, double dt);

    /// Spectral evaluation of K*u.
    std::vector<double> convolve(const std::vector<double>& u);
    double energy(const SimState& s);

  private:
    Grid grid_;
    Problem prob_;
    SchemeParams params_;
    RealFft fft_;
    std::vector<double> symbol_;             // K^ at the grid frequencies
    std::vector<std::complex<double>> spec_; // scratch spectrum
    std::vector<double> work_a_, work_b_;    // scratch fields
};

struct DiagnosticsRow {
    double t = 0.0;
    double mass = 0.0;
    double max = 0.0;
    double min = 0.0;
    double energy = 0.0;
    bool boundary_warning = false;
};

struct EvolveOptions {
    int cadence = 10;              // diagnostics every this many steps
    double boundary_margin = 5.0;  // warn when the field is live this close to the edge
    double boundary_tol = 1e-6;
    bool track_energy = true;
};

/// Observer invoked at the diagnostics cadence; returning true stops the run.
using Observer = std::function<bool(const SimState&, const DiagnosticsRow&)>;

struct EvolveResult {
    SimState state;
    std::vector<DiagnosticsRow> trace;
    bool stopped_early = false;
};

/// Integrates from s0 to time T (final partial step shortened to land on
/// T exactly). Throws NumericalError when the field stops being finite,
/// reporting the last valid time.
EvolveResult evolve(const Problem& p, SimState s0, double T, const SchemeParams& sp,
                    const EvolveOptions& opt = {}, const Observer& observer = {});

double mass(const SimState& s);
double max_u(const SimState& s);
double min_u(const SimState& s);
/// E(u) = (d/2)(int u^2 - int u (K*u)) + int F(u), convolution evaluated
/// spectrally, integrals by the rectangle rule on the periodic grid.
double energy(const Problem& p, const SimState& s);

// One-shot flow maps (convenience wrappers over Stepper).
SimState diffusion_flow(const Problem& p, const SimState& s, double t);
SimState reaction_flow(const Problem& p, const SimState& s, double t, int substeps = 1);
SimState strang_step(const Problem& p, const SimState& s, double dt);
SimState richardson_step(const Problem& p, const SimState& s, double dt);

} // namespace nlrd
