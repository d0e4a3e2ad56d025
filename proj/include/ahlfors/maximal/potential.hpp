#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ahlfors/core/space.hpp"
#include "ahlfors/maximal/maximal.hpp"
#include "ahlfors/util/error.hpp"
#include "ahlfors/util/parallel.hpp"

namespace ahlfors {

/// Riesz-type potential with the canonical kernel attaining the bound
/// |R(x,y)| <= d(x,y)^{1-alpha}:  u(x) = sum_{y != x} d(x,y)^{1-alpha} f(y) mu({y}).
inline std::vector<double> riesz_potential(const MetricMeasureSpace& space,
                                           std::span<const double> f, double alpha) {
    require(alpha > 1.0, "riesz_potential: alpha must exceed 1");
    require(f.size() == space.size(), "riesz_potential: f size mismatch");
    std::vector<double> u(space.size());
    parallel_for(space.size(), [&](std::size_t i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < space.size(); ++j) {
            if (j == i) continue;  // R(x,x) = 0
            acc += std::pow(space.distance(i, j), 1.0 - alpha) * f[j] * space.mass(j);
        }
        u[i] = acc;
    });
    return u;
}

/// Empirical domination constant C_hat = max_x |u(x)| / M f(x), 0/0 -> 0.
inline double domination_check(std::span<const double> u, const MaximalProfile& mf) {
    require(u.size() == mf.value.size(), "domination_check: mismatched point sets");
    double worst = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double a = std::abs(u[i]);
        const double m = mf.value[i];
        if (a == 0.0 && m == 0.0) continue;
        require(m > 0.0, "domination_check: zero maximal value with nonzero potential");
        worst = std::max(worst, a / m);
    }
    return worst;
}

}  // namespace ahlfors
