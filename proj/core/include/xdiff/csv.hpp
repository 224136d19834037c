#pragma once

#include <ostream>
#include <span>
#include <string>

#include "xdiff/entropy.hpp"

namespace xdiff {

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

inline constexpr const char* kSeriesCsvHeader =
    "time,H,H_eta,mass_f,mass_g,l2w_sq,sigma_lower,grad_sup,T2_I,bound_I,T2_II,bound_II";

void write_series_csv(std::ostream& os, std::span<const EntropyRecord> series);

} // namespace xdiff
