#include "xdiff/csv.hpp"

#include <charconv>

namespace xdiff {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_series_csv(std::ostream& os, std::span<const EntropyRecord> series) {
    os << kSeriesCsvHeader << '\n';
    for (const auto& r : series) {
        os << format_double(r.time) << ',' << format_double(r.H) << ',' << format_double(r.H_eta)
           << ',' << format_double(r.mass_f) << ',' << format_double(r.mass_g) << ','
           << format_double(r.l2w_sq) << ',' << format_double(r.sigma_check.sigma_lower) << ','
           << format_double(r.sigma_check.grad_sup) << ',' << format_double(r.decomposition.T2_I)
           << ',' << format_double(r.decomposition.bound_I) << ','
           << format_double(r.decomposition.T2_II) << ','
           << format_double(r.decomposition.bound_II) << '\n';
    }
}

} // namespace xdiff
