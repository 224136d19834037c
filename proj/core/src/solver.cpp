#include "xdiff/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace xdiff {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void check_config(const SolverConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw BadArgs("SolverConfig.dt must be > 0");
    if (!(cfg.newton_tol > 0.0)) throw BadArgs("SolverConfig.newton_tol must be > 0");
    if (cfg.newton_max_iter < 1) throw BadArgs("SolverConfig.newton_max_iter must be >= 1");
    if (!(cfg.damping > 0.0) || !(cfg.damping < 1.0)) {
        throw BadArgs("SolverConfig.damping must lie in (0,1)");
    }
}

void check_nonnegative(const State& s) {
    for (std::size_t i = 0; i < s.f.size(); ++i) {
        if (s.f[i] < 0.0 || s.g[i] < 0.0) {
            throw NegativeState("solver input state has a negative cell value at cell " +
                                std::to_string(i));
        }
    }
}

// Face fluxes for both species at the current iterate. pf/pg are scratch for
// the two pressures; Ff/Fg must have n+1 entries and get boundary zeros.
void compute_fluxes(const ModelParams& p, const Grid1D& grid, std::span<const double> fn,
                    std::span<const double> gn, MobilityAverage avg, std::vector<double>& pf,
                    std::vector<double>& pg, std::vector<double>& Ff, std::vector<double>& Fg) {
    const std::size_t n = fn.size();
    const double inv_h = 1.0 / grid.h();
    for (std::size_t i = 0; i < n; ++i) {
        pf[i] = p.a() * fn[i] + p.b() * gn[i];
        pg[i] = p.c() * fn[i] + p.d() * gn[i];
    }
    Ff[0] = Ff[n] = 0.0;
    Fg[0] = Fg[n] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double dpf = (pf[k] - pf[k - 1]) * inv_h;
        const double dpg = (pg[k] - pg[k - 1]) * inv_h;
        double mf, mg;
        if (avg == MobilityAverage::Arithmetic) {
            mf = 0.5 * (fn[k - 1] + fn[k]);
            mg = 0.5 * (gn[k - 1] + gn[k]);
        } else {
            // donor cell: the species value from the higher-pressure side,
            // the side mass flows away from
            mf = (dpf >= 0.0) ? fn[k] : fn[k - 1];
            mg = (dpg >= 0.0) ? gn[k] : gn[k - 1];
        }
        Ff[k] = mf * dpf;
        Fg[k] = mg * dpg;
    }
}

struct Block {
    double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;
};

// Thomas elimination on the 2x2-block tridiagonal system (L, D, U) x = r.
// Throws NewtonDiverged when a pivot block is singular.
void solve_block_tridiag(const std::vector<Block>& L, const std::vector<Block>& D,
                         const std::vector<Block>& U, std::vector<double>& r) {
    const std::size_t n = D.size();
    std::vector<Block> C(n);
    auto invert = [](const Block& a) {
        const double det = a.m00 * a.m11 - a.m01 * a.m10;
        if (!std::isfinite(det) || det == 0.0) {
            throw NewtonDiverged(std::numeric_limits<double>::quiet_NaN(),
                                 "singular diagonal block in Newton linear solve");
        }
        return Block{a.m11 / det, -a.m01 / det, -a.m10 / det, a.m00 / det};
    };
    auto mul = [](const Block& a, const Block& b) {
        return Block{a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                     a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    };

    Block W = invert(D[0]);
    C[0] = mul(W, U[0]);
    double z0 = W.m00 * r[0] + W.m01 * r[1];
    double z1 = W.m10 * r[0] + W.m11 * r[1];
    r[0] = z0;
    r[1] = z1;
    for (std::size_t i = 1; i < n; ++i) {
        const Block T{D[i].m00 - (L[i].m00 * C[i - 1].m00 + L[i].m01 * C[i - 1].m10),
                      D[i].m01 - (L[i].m00 * C[i - 1].m01 + L[i].m01 * C[i - 1].m11),
                      D[i].m10 - (L[i].m10 * C[i - 1].m00 + L[i].m11 * C[i - 1].m10),
                      D[i].m11 - (L[i].m10 * C[i - 1].m01 + L[i].m11 * C[i - 1].m11)};
        W = invert(T);
        if (i + 1 < n) C[i] = mul(W, U[i]);
        const double b0 = r[2 * i] - (L[i].m00 * r[2 * i - 2] + L[i].m01 * r[2 * i - 1]);
        const double b1 = r[2 * i + 1] - (L[i].m10 * r[2 * i - 2] + L[i].m11 * r[2 * i - 1]);
        r[2 * i] = W.m00 * b0 + W.m01 * b1;
        r[2 * i + 1] = W.m10 * b0 + W.m11 * b1;
    }
    for (std::size_t ir = n - 1; ir-- > 0;) {
        r[2 * ir] -= C[ir].m00 * r[2 * ir + 2] + C[ir].m01 * r[2 * ir + 3];
        r[2 * ir + 1] -= C[ir].m10 * r[2 * ir + 2] + C[ir].m11 * r[2 * ir + 3];
    }
}

// Newton state shared across one implicit solve.
struct NewtonWorkspace {
    std::vector<double> pf, pg, Ff, Fg;    // pressures and fluxes at the iterate
    std::vector<double> residual;          // 2n, interleaved (f_i, g_i)
    std::vector<double> src_f, src_g;      // dt * S evaluated at the new time level
    std::vector<Block> L, D, U;

    explicit NewtonWorkspace(std::size_t n)
        : pf(n), pg(n), Ff(n + 1), Fg(n + 1), residual(2 * n), L(n), D(n), U(n) {}
};

// Residual of the backward-Euler system in delta form, R = u' - u - (dt/h) div F - dt S.
// Returns the L-inf norm; scale receives the rounding scale of the largest entry.
double compute_residual(const ModelParams& p, const State& s, std::span<const double> fn,
                        std::span<const double> gn, double dt, MobilityAverage avg,
                        bool with_sources, NewtonWorkspace& w, double& scale) {
    const std::size_t n = fn.size();
    const double rdt = dt / s.grid.h();
    compute_fluxes(p, s.grid, fn, gn, avg, w.pf, w.pg, w.Ff, w.Fg);
    double norm = 0.0;
    scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rf = fn[i] - s.f[i] - rdt * (w.Ff[i + 1] - w.Ff[i]);
        double rg = gn[i] - s.g[i] - rdt * (w.Fg[i + 1] - w.Fg[i]);
        double sc = std::abs(fn[i]) + std::abs(s.f[i]) +
                    rdt * (std::abs(w.Ff[i + 1]) + std::abs(w.Ff[i]));
        double sg = std::abs(gn[i]) + std::abs(s.g[i]) +
                    rdt * (std::abs(w.Fg[i + 1]) + std::abs(w.Fg[i]));
        if (with_sources) {
            rf -= w.src_f[i];
            rg -= w.src_g[i];
            sc += std::abs(w.src_f[i]);
            sg += std::abs(w.src_g[i]);
        }
        w.residual[2 * i] = rf;
        w.residual[2 * i + 1] = rg;
        norm = std::max(norm, std::max(std::abs(rf), std::abs(rg)));
        scale = std::max(scale, std::max(sc, sg));
    }
    return norm;
}

// Analytic Jacobian of the residual at the iterate whose fluxes are in w.
void assemble_jacobian(const ModelParams& p, const State& s, std::span<const double> fn,
                       std::span<const double> gn, double dt, MobilityAverage avg,
                       NewtonWorkspace& w) {
    const std::size_t n = fn.size();
    const double inv_h = 1.0 / s.grid.h();
    const double rdt = dt * inv_h;
    for (std::size_t i = 0; i < n; ++i) {
        w.L[i] = Block{};
        w.U[i] = Block{};
        w.D[i] = Block{1.0, 0.0, 0.0, 1.0};
    }
    for (std::size_t k = 1; k < n; ++k) {
        const double dpf = (w.pf[k] - w.pf[k - 1]) * inv_h;
        const double dpg = (w.pg[k] - w.pg[k - 1]) * inv_h;
        double mf, mg, dmfL, dmfR, dmgL, dmgR;
        if (avg == MobilityAverage::Arithmetic) {
            mf = 0.5 * (fn[k - 1] + fn[k]);
            mg = 0.5 * (gn[k - 1] + gn[k]);
            dmfL = dmfR = dmgL = dmgR = 0.5;
        } else {
            mf = (dpf >= 0.0) ? fn[k] : fn[k - 1];
            mg = (dpg >= 0.0) ? gn[k] : gn[k - 1];
            dmfL = (dpf >= 0.0) ? 0.0 : 1.0;
            dmfR = 1.0 - dmfL;
            dmgL = (dpg >= 0.0) ? 0.0 : 1.0;
            dmgR = 1.0 - dmgL;
        }
        // dF_f[k]/d{f,g} at cells k-1 (L) and k (R)
        const double dFf_fL = dmfL * dpf + mf * (-p.a() * inv_h);
        const double dFf_fR = dmfR * dpf + mf * (p.a() * inv_h);
        const double dFf_gL = mf * (-p.b() * inv_h);
        const double dFf_gR = mf * (p.b() * inv_h);
        const double dFg_fL = mg * (-p.c() * inv_h);
        const double dFg_fR = mg * (p.c() * inv_h);
        const double dFg_gL = dmgL * dpg + mg * (-p.d() * inv_h);
        const double dFg_gR = dmgR * dpg + mg * (p.d() * inv_h);

        // cell k-1: face k is its right face, R -= -(dt/h) F[k] => +(dt/h) dF (via U?) ...
        // residual of cell i: R_i = u_i' - u_i - rdt (F[i+1] - F[i])
        // cell k-1 sees face k as F[i+1]:
        w.D[k - 1].m00 -= rdt * dFf_fL;
        w.D[k - 1].m01 -= rdt * dFf_gL;
        w.D[k - 1].m10 -= rdt * dFg_fL;
        w.D[k - 1].m11 -= rdt * dFg_gL;
        w.U[k - 1].m00 -= rdt * dFf_fR;
        w.U[k - 1].m01 -= rdt * dFf_gR;
        w.U[k - 1].m10 -= rdt * dFg_fR;
        w.U[k - 1].m11 -= rdt * dFg_gR;
        // cell k sees face k as F[i]:
        w.L[k].m00 += rdt * dFf_fL;
        w.L[k].m01 += rdt * dFf_gL;
        w.L[k].m10 += rdt * dFg_fL;
        w.L[k].m11 += rdt * dFg_gL;
        w.D[k].m00 += rdt * dFf_fR;
        w.D[k].m01 += rdt * dFf_gR;
        w.D[k].m10 += rdt * dFg_fR;
        w.D[k].m11 += rdt * dFg_gR;
    }
}

StepResult step_impl(const ModelParams& p, const State& s, const SolverConfig& cfg,
                     const SourceTerms* src) {
    check_config(cfg);
    check_nonnegative(s);
    const std::size_t n = s.f.size();
    const double t_new = s.time + cfg.dt;

    NewtonWorkspace w(n);
    const bool with_sources = src != nullptr;
    if (with_sources) {
        w.src_f.resize(n);
        w.src_g.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double x = s.grid.center(static_cast<int>(i));
            w.src_f[i] = cfg.dt * src->S_f(t_new, x);
            w.src_g[i] = cfg.dt * src->S_g(t_new, x);
        }
    }

    std::vector<double> fn(s.f.begin(), s.f.end());
    std::vector<double> gn(s.g.begin(), s.g.end());
    std::vector<double> f_try(n), g_try(n), delta(2 * n);

    double scale = 1.0;
    double rnorm = compute_residual(p, s, fn, gn, cfg.dt, cfg.mobility_average, with_sources, w,
                                    scale);
    if (!std::isfinite(rnorm)) {
        throw NewtonDiverged(rnorm, "non-finite residual at the initial Newton iterate");
    }

    int iters = 0;
    bool stalled = false;
    for (;;) {
        // floor: residual level indistinguishable from rounding noise; keep
        // iterating past newton_tol down to it so the conservative flux form
        // yields mass drift at machine level rather than tolerance level
        const double floor = 32.0 * kEps * scale;
        const bool at_tol = rnorm <= std::max(cfg.newton_tol, floor);
        if (at_tol && (rnorm <= floor || stalled || iters >= cfg.newton_max_iter)) break;
        if (!at_tol && iters >= cfg.newton_max_iter) {
            throw NewtonDiverged(rnorm, "Newton did not reach tolerance " +
                                            std::to_string(cfg.newton_tol) + " in " +
                                            std::to_string(cfg.newton_max_iter) +
                                            " iterations (residual " + std::to_string(rnorm) +
                                            ")");
        }

        assemble_jacobian(p, s, fn, gn, cfg.dt, cfg.mobility_average, w);
        for (std::size_t i = 0; i < 2 * n; ++i) delta[i] = -w.residual[i];
        try {
            solve_block_tridiag(w.L, w.D, w.U, delta);
        } catch (const NewtonDiverged&) {
            if (at_tol) break; // accept the converged iterate; polishing failed
            throw;
        }

        // Damped line search on the nonnegative orthant. A plain backtrack
        // cannot leave a cell sitting exactly at zero whose direction points
        // negative, so infeasible components of a candidate are projected
        // onto the constraint; acceptance is still judged by the residual of
        // the projected candidate, so a converged state solves the discrete
        // system regardless of the path taken.
        double lambda = 1.0;
        bool accepted = false;
        bool projection_active = false;
        double r_try = 0.0, scale_try = scale;
        for (int bt = 0; bt < 64; ++bt) {
            bool projected = false;
            for (std::size_t i = 0; i < n; ++i) {
                double fv = fn[i] + lambda * delta[2 * i];
                double gv = gn[i] + lambda * delta[2 * i + 1];
                if (fv < 0.0) {
                    fv = 0.0;
                    projected = true;
                }
                if (gv < 0.0) {
                    gv = 0.0;
                    projected = true;
                }
                f_try[i] = fv;
                g_try[i] = gv;
            }
            projection_active = projection_active || projected;
            r_try = compute_residual(p, s, f_try, g_try, cfg.dt, cfg.mobility_average,
                                     with_sources, w, scale_try);
            if (std::isfinite(r_try) &&
                (r_try < rnorm || r_try <= std::max(cfg.newton_tol, 32.0 * kEps * scale_try))) {
                accepted = true;
                break;
            }
            lambda *= cfg.damping;
        }
        if (!accepted) {
            if (at_tol) break; // already within tolerance; stop polishing
            if (projection_active) {
                throw PositivityLost(
                    "no admissible damped step: the positivity constraint blocks any residual "
                    "decrease (residual " +
                    std::to_string(rnorm) + ")");
            }
            throw NewtonDiverged(rnorm, "line search found no residual decrease (residual " +
                                            std::to_string(rnorm) + ")");
        }

        stalled = r_try > 0.5 * rnorm;
        fn.swap(f_try);
        gn.swap(g_try);
        rnorm = r_try;
        scale = scale_try;
        ++iters;
    }

    State out{s.grid, std::move(fn), std::move(gn), t_new};
    return StepResult{std::move(out), StepReport{iters, rnorm, false}};
}

State run_impl(const ModelParams& p, const State& s0, const SolverConfig& cfg, double t_end,
               const SourceTerms* src, const Observer& observer) {
    check_config(cfg);
    if (t_end < s0.time) {
        throw BadTime("run requires t_end >= start time, got t_end = " + std::to_string(t_end) +
                      ", start = " + std::to_string(s0.time));
    }
    State cur = s0;
    const double t0 = s0.time;
    long k = 0;
    while (cur.time < t_end) {
        double t_next = t0 + static_cast<double>(k + 1) * cfg.dt;
        if (t_next > t_end - 1e-12 * cfg.dt) t_next = t_end;
        SolverConfig local = cfg;
        local.dt = t_next - cur.time;
        StepResult r = [&] {
            try {
                return step_impl(p, cur, local, src);
            } catch (const NewtonDiverged& e) {
                throw NewtonDiverged(e.final_residual(), std::string(e.what()) +
                                                             " [while stepping to t = " +
                                                             std::to_string(t_next) + "]");
            } catch (const PositivityLost& e) {
                throw PositivityLost(std::string(e.what()) + " [while stepping to t = " +
                                     std::to_string(t_next) + "]");
            }
        }();
        cur = std::move(r.state);
        cur.time = t_next; // land exactly on the scheduled time
        ++k;
        if (observer) observer(cur);
    }
    return cur;
}

} // namespace

FluxPair assemble_fluxes(const ModelParams& p, const State& s, const SolverConfig& cfg) {
    check_nonnegative(s);
    const std::size_t n = s.f.size();
    std::vector<double> pf(n), pg(n);
    FluxPair out{std::vector<double>(n + 1), std::vector<double>(n + 1)};
    compute_fluxes(p, s.grid, s.f, s.g, cfg.mobility_average, pf, pg, out.F_f, out.F_g);
    return out;
}

StepResult step(const ModelParams& p, const State& s, const SolverConfig& cfg) {
    return step_impl(p, s, cfg, nullptr);
}

StepResult step_with_sources(const ModelParams& p, const State& s, const SolverConfig& cfg,
                             const SourceTerms& src) {
    return step_impl(p, s, cfg, &src);
}

State run(const ModelParams& p, const State& s0, const SolverConfig& cfg, double t_end,
          const Observer& observer) {
    return run_impl(p, s0, cfg, t_end, nullptr, observer);
}

State run_with_sources(const ModelParams& p, const State& s0, const SolverConfig& cfg,
                       double t_end, const SourceTerms& src, const Observer& observer) {
    return run_impl(p, s0, cfg, t_end, &src, observer);
}

} // namespace xdiff
