#pragma once

#include <span>

#include "xdiff/entropy.hpp"

namespace xdiff {

/// Result of fitting the integral inequality
///   H(t_k) <= H(0) + C * int_0^{t_k} H(s) ds   (trapezoid accumulation)
/// over a sampled series. C_fit is the smallest feasible constant;
/// residual_max is the largest violation at C_fit (<= 0 by construction);
/// exp_bound_ok records whether H(t_k) <= H(0) exp(C_fit t_k) (1 + tol).
struct GronwallFit {
    double C_fit = 0.0;
    double residual_max = 0.0;
    bool exp_bound_ok = false;
};

/// Tolerance absorbing quadrature slop in the exponential-bound check.
inline constexpr double kGronwallExpTol = 1e-6;

GronwallFit gronwall_fit(std::span<const EntropyRecord> series);

} // namespace xdiff
