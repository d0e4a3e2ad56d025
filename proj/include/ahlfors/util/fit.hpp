#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ahlfors/util/error.hpp"

namespace ahlfors {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
    std::size_t n = 0;
};

/// Ordinary least squares y ~ slope * x + intercept.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    require(x.size() == y.size(), "fit_line: size mismatch");
    require(x.size() >= 2, "fit_line: need at least two points");
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    require(std::abs(denom) > 0, "fit_line: degenerate abscissae");
    LineFit f;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    f.n = x.size();
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms_residual = std::sqrt(ss / n);
    return f;
}

/// Quantile with linear interpolation; data must be sorted ascending.
inline double quantile_sorted(std::span<const double> sorted, double q) {
    require(!sorted.empty(), "quantile_sorted: empty data");
    if (q <= 0) return sorted.front();
    if (q >= 1) return sorted.back();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

}  // namespace ahlfors
