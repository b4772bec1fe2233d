#pragma once

#include "nlrd/classify.hpp"
#include "nlrd/model.hpp"
#include "nlrd/solver.hpp"

#include <filesystem>
#include <string>

namespace nlrd {

/// Full run configuration: model instance, grid, scheme and
/// classification parameters. JSON layout:
///
///   {
///     "nonlinearity": {"kind": "cubic", "a": 0.3},
///     "kernel":       {"kind": "exponential"},
///     "d": 0.2,
///     "grid":         {"N": 4096, "L": 31.4159...},
///     "scheme":       {"dt": 0.01, "method": "richardson4", "reaction_substeps": 1},
///     "classify":     {"Tf": 500, "check_window": 20, "eps_zero": 1e-3,
///                      "eps_one": 1e-2, "eps_steady": 1e-5,
///                      "prop_interval_halfwidth": 5, "cadence": 10,
///                      "ell_tol_rel": 1e-3},
///     "out": "out", "jobs": 0
///   }
///
/// Unknown keys are rejected. All values optional; defaults follow the
/// reference setup (N = 2^14, L = 10 pi, dt = 0.01, Tf = 500).
struct RunConfig {
    std::string nonlinearity_kind = "cubic";
    double a = 0.3;
    std::string kernel_kind = "exponential";
    double d = 0.2;
    Grid grid{1 << 14, 10.0 * M_PI};
    SchemeParams scheme{};
    ClassifyParams classify{};
    double ell_tol_rel = 1e-3; // threshold bisection tolerance, relative to L
    std::string out_dir = "out";
    int jobs = 0; // 0: hardware concurrency

    Problem problem() const;
    double ell_tol() const { return ell_tol_rel * grid.half_width; }
};

/// Parses a config file, rejecting unknown keys with their JSON path.
RunConfig load_config(const std::filesystem::path& path);
/// Applies a named preset: "paper" (N=2^14, Tf=500) or "desk" (N=2^12, Tf=200).
void apply_preset(RunConfig& cfg, const std::string& name);
/// Validates every module-level precondition, throwing ParameterError
/// with an actionable message.
void validate(const RunConfig& cfg);

std::string to_json_string(const RunConfig& cfg);

} // namespace nlrd
