#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xdiff/errors.hpp"
#include "xdiff/solver.hpp"

namespace xdiff {

/// Everything an experiment needs, ingested from key = value text
/// (a TOML-compatible subset: comments with #, quoted strings, numbers,
/// booleans, bracketed numeric lists).
struct ExperimentConfig {
    std::string kind = "weak_strong"; // weak_strong | gronwall | pme_validation |
                                      // convergence | invariants
    std::string preset;               // "", muskat, near_degenerate, pme

    double a = 1.0, b = 1.0, c = 1.0, d = 2.0;

    double x_lo = 0.0, x_hi = 1.0;
    int n_cells = 64;

    double dt = 1e-3;
    double t_end = 0.1;
    double output_stride = 0.0; // <= 0 resolves to t_end / 50

    std::string ic = "smooth_positive"; // smooth_positive | bump | constant |
                                        // barenblatt | tabulated
    std::vector<double> ic_f, ic_g;     // tabulated values on the base grid
    double ic_const_f = 1.0, ic_const_g = 1.0;
    double barenblatt_t0 = 0.1, barenblatt_mass = 1.0;

    double sigma_min = 1e-10;
    std::vector<double> eta_list = {1e-2, 1e-4, 1e-6};
    std::uint64_t seed = 0;

    std::string mobility = "arithmetic"; // arithmetic | upwind
    double newton_tol = 1e-10;
    int newton_max_iter = 50;
    double damping = 0.5;

    int levels = 3;
    int ref_factor = 16;
    double perturb_amp = 0.1;

    std::string out_dir;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parse, apply preset defaults, resolve derived fields. Throws BadConfig on
/// syntax errors, unknown keys, or unreadable files.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Emit every field with its resolved value; re-ingesting the result yields
/// an identical configuration (and therefore an identical experiment).
std::string emit_config(const ExperimentConfig& cfg);

SolverConfig solver_config(const ExperimentConfig& cfg);

} // namespace xdiff
