#include "xdiff/reference.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace xdiff {

// Profile constants from substituting f = tau^(-1/3) F(x tau^(-1/3)) into
// df/dt = kappa (f^2)'' with kappa = a/2:
//   F(xi) = A - xi^2/(12 kappa) on its support,
//   support half-width r = (9 kappa M)^(1/3),  A = r^2/(12 kappa).
namespace {

struct BarenblattProfile {
    double kappa;
    double r;
    double A;
};

BarenblattProfile barenblatt_profile(double a_coeff, double mass) {
    if (!(a_coeff > 0.0)) {
        throw BadArgs("barenblatt: coefficient a must be > 0, got " + std::to_string(a_coeff));
    }
    if (!(mass > 0.0)) {
        throw BadArgs("barenblatt: mass must be > 0, got " + std::to_string(mass));
    }
    const double kappa = 0.5 * a_coeff;
    const double r = std::cbrt(9.0 * kappa * mass);
    return BarenblattProfile{kappa, r, r * r / (12.0 * kappa)};
}

double shifted_time(double t, double t0) {
    const double tau = t + t0;
    if (!(tau > 0.0)) {
        throw BadTime("barenblatt: t + t0 must be > 0, got " + std::to_string(tau));
    }
    return tau;
}

} // namespace

double barenblatt(double a_coeff, double t, double x, double t0, double mass, double center) {
    const auto prof = barenblatt_profile(a_coeff, mass);
    const double tau = shifted_time(t, t0);
    const double tau13 = std::cbrt(tau);
    const double xi = (x - center) / tau13;
    const double val = prof.A - xi * xi / (12.0 * prof.kappa);
    return val > 0.0 ? val / tau13 : 0.0;
}

double barenblatt_support_radius(double a_coeff, double t, double t0, double mass) {
    const auto prof = barenblatt_profile(a_coeff, mass);
    return prof.r * std::cbrt(shifted_time(t, t0));
}

State constant_state(const Grid1D& grid, double f0, double g0) {
    if (f0 < 0.0 || g0 < 0.0) {
        throw NegativeState("constant_state requires f0, g0 >= 0, got (" + std::to_string(f0) +
                            ", " + std::to_string(g0) + ")");
    }
    const auto n = static_cast<std::size_t>(grid.n_cells());
    return State{grid, std::vector<double>(n, f0), std::vector<double>(n, g0), 0.0};
}

State sample_state(const Grid1D& grid, const std::function<double(double)>& f0,
                   const std::function<double(double)>& g0, double time) {
    const auto n = static_cast<std::size_t>(grid.n_cells());
    std::vector<double> f(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.center(static_cast<int>(i));
        f[i] = f0(x);
        g[i] = g0(x);
    }
    return make_state(grid, std::move(f), std::move(g), time);
}

ManufacturedCase manufactured_case(const ModelParams& p, ManufacturedChoice choice, double x_lo,
                                   double x_hi) {
    if (choice == ManufacturedChoice::Constant) {
        ManufacturedCase c;
        c.f_exact = [](double, double) { return 1.0; };
        c.g_exact = [](double, double) { return 0.75; };
        c.sources.S_f = [](double, double) { return 0.0; };
        c.sources.S_g = [](double, double) { return 0.0; };
        return c;
    }

    const double L = x_hi - x_lo;
    const double q = std::numbers::pi / L;
    const double a = p.a(), b = p.b(), cc = p.c(), d = p.d();

    // f = 1 + (1/2) cos(pi xh) e^{-t},  g = 1 + (1/2) sin^2(pi xh) e^{-t},
    // xh = (x - x_lo)/L. Both have zero x-derivative at the endpoints and
    // stay in [1/2, 3/2] resp. [1, 3/2].
    auto f_fun = [=](double t, double x) {
        return 1.0 + 0.5 * std::cos(q * (x - x_lo)) * std::exp(-t);
    };
    auto g_fun = [=](double t, double x) {
        const double s = std::sin(q * (x - x_lo));
        return 1.0 + 0.5 * s * s * std::exp(-t);
    };

    // closed-form derivatives, assembled into S = u_t - (u p_x)_x
    auto derivs = [=](double t, double x, double& f, double& ft, double& fx, double& fxx,
                      double& g, double& gt, double& gx, double& gxx) {
        const double e = std::exp(-t);
        const double cs = std::cos(q * (x - x_lo));
        const double sn = std::sin(q * (x - x_lo));
        const double c2 = std::cos(2.0 * q * (x - x_lo));
        const double s2 = std::sin(2.0 * q * (x - x_lo));
        f = 1.0 + 0.5 * cs * e;
        ft = -0.5 * cs * e;
        fx = -0.5 * q * sn * e;
        fxx = -0.5 * q * q * cs * e;
        g = 1.0 + 0.5 * sn * sn * e;
        gt = -0.5 * sn * sn * e;
        gx = 0.5 * q * s2 * e;
        gxx = q * q * c2 * e;
    };

    ManufacturedCase c;
    c.f_exact = f_fun;
    c.g_exact = g_fun;
    c.sources.S_f = [=](double t, double x) {
        double f, ft, fx, fxx, g, gt, gx, gxx;
        derivs(t, x, f, ft, fx, fxx, g, gt, gx, gxx);
        return ft - (fx * (a * fx + b * gx) + f * (a * fxx + b * gxx));
    };
    c.sources.S_g = [=](double t, double x) {
        double f, ft, fx, fxx, g, gt, gx, gxx;
        derivs(t, x, f, ft, fx, fxx, g, gt, gx, gxx);
        return gt - (gx * (cc * fx + d * gx) + g * (cc * fxx + d * gxx));
    };
    return c;
}

State solve_with_sources(const ModelParams& p, const State& s0, const SolverConfig& cfg,
                         double t_end, const ManufacturedCase& mcase, const Observer& observer) {
    return run_with_sources(p, s0, cfg, t_end, mcase.sources, observer);
}

} // namespace xdiff
