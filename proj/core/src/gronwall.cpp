#include "xdiff/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace xdiff {

GronwallFit gronwall_fit(std::span<const EntropyRecord> series) {
    if (series.empty()) {
        throw EmptySeries("gronwall_fit: series is empty");
    }
    for (std::size_t k = 0; k < series.size(); ++k) {
        if (!std::isfinite(series[k].H) || series[k].H < 0.0) {
            throw NonFinite("gronwall_fit: H must be finite and >= 0, offending index " +
                            std::to_string(k));
        }
        if (k > 0 && !(series[k].time > series[k - 1].time)) {
            throw BadSeries("gronwall_fit: series must be strictly time-sorted");
        }
    }

    const double H0 = series[0].H;
    std::vector<double> integral(series.size(), 0.0);
    for (std::size_t k = 1; k < series.size(); ++k) {
        const double dt = series[k].time - series[k - 1].time;
        integral[k] = integral[k - 1] + 0.5 * dt * (series[k - 1].H + series[k].H);
    }

    double c_fit = 0.0;
    for (std::size_t k = 1; k < series.size(); ++k) {
        if (integral[k] > 0.0) {
            c_fit = std::max(c_fit, (series[k].H - H0) / integral[k]);
        }
    }

    GronwallFit fit;
    fit.C_fit = c_fit;
    fit.residual_max = -std::numeric_limits<double>::infinity();
    fit.exp_bound_ok = true;
    for (std::size_t k = 0; k < series.size(); ++k) {
        fit.residual_max = std::max(fit.residual_max, series[k].H - H0 - c_fit * integral[k]);
        const double bound =
            H0 * std::exp(c_fit * (series[k].time - series[0].time)) * (1.0 + kGronwallExpTol);
        if (series[k].H > bound) fit.exp_bound_ok = false;
    }
    return fit;
}

} // namespace xdiff
