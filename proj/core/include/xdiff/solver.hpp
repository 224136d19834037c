#pragma once

#include <functional>
#include <utility>

#include "xdiff/grid.hpp"
#include "xdiff/model.hpp"

namespace xdiff {

/// Rule assigning cell-centered species values to faces in the flux.
enum class MobilityAverage {
    Arithmetic, // (v[k-1] + v[k]) / 2; second-order accurate
    Upwind      // donor cell (the higher-pressure side); robust near vacuum
};

struct SolverConfig {
    double dt = 1e-3;
    double newton_tol = 1e-10;
    int newton_max_iter = 50;
    MobilityAverage mobility_average = MobilityAverage::Arithmetic;
    double damping = 0.5; // line-search backtracking factor, in (0,1)
};

struct StepReport {
    int newton_iters = 0;
    double final_residual = 0.0;
    bool positivity_clipped = false; // the scheme never clips; false on success
};

struct StepResult {
    State state;
    StepReport report;
};

/// Face fluxes F_f[k] = m_f(k) * d/dx(a f + b g)|_k and the g-analogue,
/// with m per cfg.mobility_average. Boundary faces carry exactly 0.
struct FluxPair {
    std::vector<double> F_f;
    std::vector<double> F_g;
};

FluxPair assemble_fluxes(const ModelParams& p, const State& s, const SolverConfig& cfg);

/// Optional source terms S_f(t, x), S_g(t, x) added to the right-hand sides,
/// evaluated fully implicitly (at the new time level).
struct SourceTerms {
    std::function<double(double t, double x)> S_f;
    std::function<double(double t, double x)> S_g;
};

/// One backward-Euler step of size cfg.dt via damped Newton on the coupled
/// conservative system. The accepted state is componentwise nonnegative and
/// conserves the cell masses of f and of g up to solver tolerance.
StepResult step(const ModelParams& p, const State& s, const SolverConfig& cfg);
StepResult step_with_sources(const ModelParams& p, const State& s, const SolverConfig& cfg,
                             const SourceTerms& src);

using Observer = std::function<void(const State&)>;

/// Advance from s0 to exactly t_end with steps of cfg.dt (final step
/// shortened to land on t_end). Calls observer after every accepted step.
/// Deterministic for fixed inputs.
State run(const ModelParams& p, const State& s0, const SolverConfig& cfg, double t_end,
          const Observer& observer = {});
State run_with_sources(const ModelParams& p, const State& s0, const SolverConfig& cfg,
                       double t_end, const SourceTerms& src, const Observer& observer = {});

} // namespace xdiff
