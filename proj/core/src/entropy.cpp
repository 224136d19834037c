#include "xdiff/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace xdiff {

namespace {

// e(x, y) = x ln(x/y) - (x - y), evaluated as y * phi(x/y - 1) with
// phi(u) = (1+u) ln(1+u) - u >= 0. The series branch keeps the computed
// value nonnegative where the direct form would drown in cancellation.
double entropy_kernel(double x, double y) {
    if (x == 0.0) return y; // 0 ln 0 = 0
    const double u = (x - y) / y;
    if (std::abs(u) < 1e-4) {
        return y * (u * u * (0.5 + u * (-1.0 / 6.0 + u * (1.0 / 12.0 + u * (-1.0 / 20.0)))));
    }
    return y * ((1.0 + u) * std::log1p(u) - u);
}

void require_same_grid(const State& u1, const State& u2, const char* who) {
    if (!u1.grid.same_as(u2.grid)) {
        throw GridMismatch(std::string(who) + ": states live on different grids");
    }
}

} // namespace

double relative_entropy(const ModelParams& p, const State& u1, const State& u2, double sigma_min) {
    require_same_grid(u1, u2, "relative_entropy");
    const std::size_t n = u1.f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (std::min(u2.f[i], u2.g[i]) < sigma_min) {
            throw DegenerateReference(
                "relative_entropy: reference state falls below sigma_min = " +
                std::to_string(sigma_min) + " at cell " + std::to_string(i));
        }
    }
    const double weight = p.b() / p.c();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += entropy_kernel(u1.f[i], u2.f[i]) + weight * entropy_kernel(u1.g[i], u2.g[i]);
    }
    return u1.grid.h() * sum;
}

double relative_entropy_regularized(const ModelParams& p, const State& u1, const State& u2,
                                    double eta) {
    if (!(eta > 0.0) || !(eta < 1.0)) {
        throw BadEta("relative_entropy_regularized: eta must lie in (0,1), got " +
                     std::to_string(eta));
    }
    require_same_grid(u1, u2, "relative_entropy_regularized");
    const std::size_t n = u1.f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(u2.f[i] > 0.0) || !(u2.g[i] > 0.0)) {
            throw DegenerateReference(
                "relative_entropy_regularized: reference must be strictly positive, cell " +
                std::to_string(i));
        }
    }
    const double weight = p.b() / p.c();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum += u1.f[i] * std::log((u1.f[i] + eta) / u2.f[i]) - (u1.f[i] - u2.f[i]);
        sum += weight * (u1.g[i] * std::log((u1.g[i] + eta) / u2.g[i]) - (u1.g[i] - u2.g[i]));
    }
    return u1.grid.h() * sum;
}

QuadBound pointwise_quadratic_bound(double x, double y) {
    if (x < 0.0 || !(y > 0.0)) {
        throw BadArgs("pointwise_quadratic_bound requires x >= 0 and y > 0, got x = " +
                      std::to_string(x) + ", y = " + std::to_string(y));
    }
    const double diff = x - y;
    return QuadBound{entropy_kernel(x, y), diff * diff / (2.0 * std::max(x, y))};
}

Masses mass(const State& s) {
    double mf = 0.0, mg = 0.0;
    for (std::size_t i = 0; i < s.f.size(); ++i) {
        mf += s.f[i];
        mg += s.g[i];
    }
    return Masses{s.grid.h() * mf, s.grid.h() * mg};
}

double weighted_l2_sq(const ModelParams& p, const State& u1, const State& u2) {
    require_same_grid(u1, u2, "weighted_l2_sq");
    const double weight = p.b() / p.c();
    double sum = 0.0;
    for (std::size_t i = 0; i < u1.f.size(); ++i) {
        const double df = u1.f[i] - u2.f[i];
        const double dg = u1.g[i] - u2.g[i];
        sum += df * df + weight * dg * dg;
    }
    return u1.grid.h() * sum;
}

SigmaBounds sigma_bounds(const State& u2) {
    SigmaBounds out;
    out.sigma_lower = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u2.f.size(); ++i) {
        out.sigma_lower = std::min(out.sigma_lower, std::min(u2.f[i], u2.g[i]));
    }
    const auto gf = face_gradient(u2.grid, u2.f);
    const auto gg = face_gradient(u2.grid, u2.g);
    for (std::size_t k = 1; k + 1 < gf.size(); ++k) {
        out.grad_sup = std::max(out.grad_sup, std::max(std::abs(gf[k]), std::abs(gg[k])));
    }
    return out;
}

ProductionDecomposition production_decomposition(const ModelParams& p, const State& u1,
                                                 const State& u2) {
    require_same_grid(u1, u2, "production_decomposition");
    const std::size_t n = u1.f.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(u2.f[i] > 0.0) || !(u2.g[i] > 0.0)) {
            throw DegenerateReference(
                "production_decomposition: reference must be strictly positive, cell " +
                std::to_string(i));
        }
    }
    const auto Gf1 = face_gradient(u1.grid, u1.f);
    const auto Gg1 = face_gradient(u1.grid, u1.g);
    const auto Gf2 = face_gradient(u2.grid, u2.f);
    const auto Gg2 = face_gradient(u2.grid, u2.g);
    const double h = u1.grid.h();
    const double k_I = p.b() * p.ad_minus_bc() / (p.a() * p.c());
    const double ba = p.b() / p.a();

    double t2_I = 0.0, t2_II_over_a = 0.0, bound_I = 0.0, bound_II = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        // face values of cell quantities: arithmetic means
        const double f1 = 0.5 * (u1.f[k - 1] + u1.f[k]);
        const double g1 = 0.5 * (u1.g[k - 1] + u1.g[k]);
        const double f2 = 0.5 * (u2.f[k - 1] + u2.f[k]);
        const double g2 = 0.5 * (u2.g[k - 1] + u2.g[k]);
        const double rf = f1 / f2;
        const double rg = g1 / g2;

        t2_I -= k_I * (Gg1[k] * Gg1[k] - (1.0 + rg) * Gg1[k] * Gg2[k] + rg * Gg2[k] * Gg2[k]);
        const double rem_I = (g1 - g2) / (2.0 * g2) * Gg2[k];
        bound_I += k_I * rem_I * rem_I;

        const double cs = (Gf1[k] + ba * Gg1[k]) -
                          0.5 * ((1.0 + rf) * Gf2[k] + ba * (1.0 + rg) * Gg2[k]);
        const double ef = (1.0 - rf) * Gf2[k];
        const double eg = ba * (1.0 - rg) * Gg2[k];
        t2_II_over_a += -cs * cs + 0.25 * (ef + eg) * (ef + eg);
        bound_II += 0.5 * (ef * ef + eg * eg);
    }
    return ProductionDecomposition{h * t2_I, p.a() * h * t2_II_over_a, h * bound_I, h * bound_II};
}

namespace {

double phi_value(ChainRulePhi phi, double eta, double s) {
    if (phi == ChainRulePhi::Square) return s * s;
    return s * std::log(s + eta) - s;
}

double phi_prime(ChainRulePhi phi, double eta, double s) {
    if (phi == ChainRulePhi::Square) return 2.0 * s;
    return std::log(s + eta) + s / (s + eta) - 1.0;
}

} // namespace

double chain_rule_residual(std::span<const State> series, ChainRulePhi phi, double eta) {
    if (series.size() < 2) {
        throw BadSeries("chain_rule_residual needs at least two states, got " +
                        std::to_string(series.size()));
    }
    if (phi == ChainRulePhi::XLogXEta && !(eta > 0.0)) {
        throw BadEta("chain_rule_residual: eta must be > 0 for the x log x test function");
    }
    const Grid1D& grid = series[0].grid;
    const double dt = series[1].time - series[0].time;
    for (std::size_t k = 1; k < series.size(); ++k) {
        if (!series[k].grid.same_as(grid)) {
            throw BadSeries("chain_rule_residual: snapshot " + std::to_string(k) +
                            " lives on a different grid");
        }
        const double spacing = series[k].time - series[k - 1].time;
        if (std::abs(spacing - dt) > 1e-9 * std::max(std::abs(dt), 1.0)) {
            throw BadSeries("chain_rule_residual: snapshots are not equally spaced in time");
        }
    }

    const double h = grid.h();
    const std::size_t n = series[0].f.size();
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < series.size(); ++k) {
        const auto& fa = series[k].f;
        const auto& fb = series[k + 1].f;
        double ia = 0.0, ib = 0.0, bracket = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ia += phi_value(phi, eta, fa[i]);
            ib += phi_value(phi, eta, fb[i]);
            bracket += (fb[i] - fa[i]) * phi_prime(phi, eta, 0.5 * (fa[i] + fb[i]));
        }
        worst = std::max(worst, std::abs(h * (ib - ia) - h * bracket));
    }
    return worst;
}

} // namespace xdiff
