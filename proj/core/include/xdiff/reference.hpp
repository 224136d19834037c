#pragma once

#include <functional>

#include "xdiff/grid.hpp"
#include "xdiff/model.hpp"
#include "xdiff/solver.hpp"

namespace xdiff {

/// Self-similar source solution of the porous-medium reduction
///   df/dt = (a/2) d2/dx2 (f^2),
/// the g == 0 special case of the coupled system. Compactly supported,
/// total mass `mass`, centered at `center`; zero outside the support.
double barenblatt(double a_coeff, double t, double x, double t0, double mass,
                  double center = 0.0);

/// Half-width of the Barenblatt support at time t.
double barenblatt_support_radius(double a_coeff, double t, double t0, double mass);

/// Uniform state (f0, g0); exact steady state of the system.
State constant_state(const Grid1D& grid, double f0, double g0);

/// Sample closed-form fields at the cell centers.
State sample_state(const Grid1D& grid, const std::function<double(double)>& f0,
                   const std::function<double(double)>& g0, double time = 0.0);

/// Closed-form space-time pair plus the source terms that make it an exact
/// solution of the system with right-hand sides S_f, S_g.
struct ManufacturedCase {
    std::function<double(double t, double x)> f_exact;
    std::function<double(double t, double x)> g_exact;
    SourceTerms sources;
};

enum class ManufacturedChoice {
    SmoothTrig, // Neumann-compatible trigonometric pair, bounded away from 0
    Constant    // uniform pair; sources vanish identically
};

ManufacturedCase manufactured_case(const ModelParams& p, ManufacturedChoice choice,
                                   double x_lo = 0.0, double x_hi = 1.0);

/// Backward-Euler run with the case's sources added to the residual
/// (evaluated at the new time level). With zero sources this is bit-identical
/// to run().
State solve_with_sources(const ModelParams& p, const State& s0, const SolverConfig& cfg,
                         double t_end, const ManufacturedCase& mcase,
                         const Observer& observer = {});

} // namespace xdiff
