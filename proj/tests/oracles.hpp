#pragma once

// Test-only brute-force oracles. These stay independent of the library
// code paths they check: plain linear scans, exhaustive DP covers and
// quadrature, no spatial index and no shared helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "ahlfors/core/space.hpp"

namespace oracles {

inline std::vector<std::size_t> brute_ball(const ahlfors::MetricMeasureSpace& s,
                                           std::size_t center, double r, bool closed) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double d = s.distance(center, j);
        if (closed ? d <= r : d < r) out.push_back(j);
    }
    return out;
}

/// Minimum number of arbitrary atom subsets of realized diameter <= rho
/// needed to cover all the given points (exact bitmask DP; n <= 20).
inline std::size_t optimal_cover_count(const std::vector<std::array<double, 2>>& pts,
                                       double rho) {
    const std::size_t n = pts.size();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d[i][j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
    // all admissible subsets (diameter <= rho)
    std::vector<std::uint32_t> sets;
    for (std::uint32_t m = 1; m < (1u << n); ++m) {
        double diam = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!(m >> i & 1)) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if (m >> j & 1) diam = std::max(diam, d[i][j]);
        }
        if (diam <= rho) sets.push_back(m);
    }
    const std::uint32_t full = (1u << n) - 1;
    std::vector<int> best(full + 1, std::numeric_limits<int>::max());
    best[0] = 0;
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
        if (best[mask] == std::numeric_limits<int>::max()) continue;
        if (mask == full) break;
        std::size_t low = 0;
        while (mask >> low & 1) ++low;
        for (const std::uint32_t s : sets) {
            if (!(s >> low & 1)) continue;
            const std::uint32_t nm = mask | s;
            best[nm] = std::min(best[nm], best[mask] + 1);
        }
    }
    return static_cast<std::size_t>(best[full]);
}

/// Composite Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 4096) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

/// 1D grid space on [lo, hi] with n atoms of equal mass (total = hi - lo,
/// i.e. an atomic Lebesgue approximation).
inline ahlfors::SpacePtr lebesgue_grid(double lo, double hi, std::size_t n) {
    std::vector<double> coords(n), masses(n, (hi - lo) / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        coords[i] = lo + (hi - lo) * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return std::make_shared<const ahlfors::MetricMeasureSpace>(
        ahlfors::MetricMeasureSpace::euclidean(std::move(coords), 1, std::move(masses)));
}

/// The ten-atom grid {0, 0.1, ..., 0.9} with unit masses.
inline ahlfors::SpacePtr decimal_grid() {
    std::vector<double> coords(10), masses(10, 1.0);
    for (std::size_t i = 0; i < 10; ++i) coords[i] = 0.1 * static_cast<double>(i);
    return std::make_shared<const ahlfors::MetricMeasureSpace>(
        ahlfors::MetricMeasureSpace::euclidean(std::move(coords), 1, std::move(masses)));
}

}  // namespace oracles
