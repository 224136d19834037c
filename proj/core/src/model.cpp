#include "xdiff/model.hpp"

#include <string>

namespace xdiff {

ModelParams::ModelParams(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
    if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0) || !(d > 0.0)) {
        throw InvalidParameters(
            "nonpositive",
            "all four coefficients must be strictly positive, got (" + std::to_string(a) + ", " +
                std::to_string(b) + ", " + std::to_string(c) + ", " + std::to_string(d) + ")");
    }
    if (!(a * d > b * c)) {
        throw InvalidParameters(
            "ad<=bc", "coefficients must satisfy a*d > b*c (condition condabcd), got a*d = " +
                          std::to_string(a * d) + ", b*c = " + std::to_string(b * c));
    }
}

MobilityMatrix mobility(const ModelParams& p, double x1, double x2) {
    if (x1 < 0.0 || x2 < 0.0) {
        throw NegativeState("mobility requires X >= 0 componentwise, got (" + std::to_string(x1) +
                            ", " + std::to_string(x2) + ")");
    }
    return MobilityMatrix{p.a() * x1, p.b() * x1, p.c() * x2, p.d() * x2};
}

std::pair<LinearForm, LinearForm> pressure_gradients_coeffs(const ModelParams& p) {
    return {LinearForm{p.a(), p.b()}, LinearForm{p.c(), p.d()}};
}

} // namespace xdiff
