#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// Log-spaced radii grid inside [lo, hi]: geometric bins at the given
/// per-decade resolution, one radius at each bin midpoint. Midpoints keep
/// grid radii strictly between the window edges, away from lattice-resonant
/// values (a radius equal to an exact inter-atom distance makes open-ball
/// counts depend on the tie rule).
inline std::vector<double> log_grid(double lo, double hi, int per_decade = 12) {
    require(lo > 0 && hi > lo, "log_grid: need 0 < lo < hi");
    require(per_decade > 0, "log_grid: per_decade must be positive");
    const double span = std::log10(hi / lo);
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(span * per_decade)));
    std::vector<double> out(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    const double step = (lhi - llo) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(llo + (static_cast<double>(i) + 0.5) * step);
    return out;
}

/// Linearly spaced grid including both endpoints.
inline std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    require(n >= 2 && hi > lo, "linear_grid: need n >= 2 and hi > lo");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

}  // namespace ahlfors
