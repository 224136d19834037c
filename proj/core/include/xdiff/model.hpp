#pragma once

#include <utility>

#include "xdiff/errors.hpp"

namespace xdiff {

/// Coefficient quadruple (a, b, c, d) of the two-species system
///
///   df/dt = div( f * grad(a f + b g) )
///   dg/dt = div( g * grad(c f + d g) )
///
/// Valid quadruples are strictly positive with a*d > b*c (condition
/// "condabcd"). Validation happens exactly once, in the constructor;
/// instances are immutable afterwards, so downstream code never re-checks.
class ModelParams {
public:
    ModelParams(double a, double b, double c, double d);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }

    double ad_minus_bc() const noexcept { return a_ * d_ - b_ * c_; }

private:
    double a_, b_, c_, d_;
};

/// Entries of the 2x2 mobility matrix M(X) = [a X1, b X1; c X2, d X2].
/// Row i vanishes identically when X_i = 0 (the degenerate directions).
struct MobilityMatrix {
    double m11, m12;
    double m21, m22;
};

MobilityMatrix mobility(const ModelParams& p, double x1, double x2);

/// Coefficients of one "pressure" linear form w = cf*f + cg*g.
struct LinearForm {
    double cf;
    double cg;
};

/// The two linear forms whose gradients drive the fluxes:
/// (a, b) for the f-equation and (c, d) for the g-equation.
std::pair<LinearForm, LinearForm> pressure_gradients_coeffs(const ModelParams& p);

} // namespace xdiff
