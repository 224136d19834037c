#pragma once

#include <span>

#include "xdiff/grid.hpp"
#include "xdiff/model.hpp"

namespace xdiff {

/// Bounds on a reference state: the smallest cell value of min(f, g) and the
/// largest interior-face gradient magnitude over both fields.
struct SigmaBounds {
    double sigma_lower = 0.0;
    double grad_sup = 0.0;
};

/// Instantaneous entropy-production split and the two completed-square
/// bounds it must respect.
struct ProductionDecomposition {
    double T2_I = 0.0;
    double T2_II = 0.0;
    double bound_I = 0.0;
    double bound_II = 0.0;
};

/// One diagnostics row of a time series.
struct EntropyRecord {
    double time = 0.0;
    double H = 0.0;
    double H_eta = 0.0;
    double mass_f = 0.0;
    double mass_g = 0.0;
    double l2w_sq = 0.0;
    SigmaBounds sigma_check;
    ProductionDecomposition decomposition;
};

/// Relative entropy
///   H(u1|u2) = sum_i h * { e(f1,f2) + (b/c) e(g1,g2) },
///   e(x,y) = x ln(x/y) - (x - y),  with 0 ln 0 = 0.
/// Requires the reference u2 to stay >= sigma_min in every cell.
double relative_entropy(const ModelParams& p, const State& u1, const State& u2,
                        double sigma_min = 1e-10);

/// Regularized variant with ln((x + eta)/y); defined for any nonnegative u1
/// as long as u2 is strictly positive. Decreases to H as eta -> 0.
double relative_entropy_regularized(const ModelParams& p, const State& u1, const State& u2,
                                    double eta);

/// Both sides of the pointwise inequality
///   x ln(x/y) - (x - y) >= |x - y|^2 / (2 max(x, y)),  x >= 0, y > 0.
struct QuadBound {
    double lhs;
    double rhs;
};
QuadBound pointwise_quadratic_bound(double x, double y);

struct Masses {
    double f;
    double g;
};
Masses mass(const State& s);

/// Weighted squared L2 distance sum_i h * (|f1-f2|^2 + (b/c)|g1-g2|^2).
double weighted_l2_sq(const ModelParams& p, const State& u1, const State& u2);

SigmaBounds sigma_bounds(const State& u2);

/// Face-quadrature evaluation of the instantaneous production terms and of
/// the right-hand sides bounding them; face values of cell quantities use
/// arithmetic means, matching the solver default.
ProductionDecomposition production_decomposition(const ModelParams& p, const State& u1,
                                                 const State& u2);

/// Test functions for the discrete chain-rule residual.
enum class ChainRulePhi {
    XLogXEta, // Phi(s) = s ln(s + eta) - s
    Square    // Phi(s) = s^2
};

/// Max over consecutive snapshots of
///   | [I(t_{k+1}) - I(t_k)] - <f_{k+1} - f_k, Phi'(f_{k+1/2})> |,
/// I(t) = sum_i h Phi(f_i(t)), with f_{k+1/2} the arithmetic time mean.
/// Shrinks at least first order in the snapshot spacing.
double chain_rule_residual(std::span<const State> series, ChainRulePhi phi, double eta = 1e-2);

} // namespace xdiff
