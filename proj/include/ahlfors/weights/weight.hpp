#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ahlfors/core/measure.hpp"
#include "ahlfors/core/space.hpp"
#include "ahlfors/core/subset.hpp"
#include "ahlfors/fractals/generate.hpp"
#include "ahlfors/maximal/maximal.hpp"
#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// Neighborhoods U_i = {x : d(x, F_i) < kappa_i} around disjoint members,
/// with the kappa recipe kappa_i = min{ 2 r_i, Delta/2, third term } where
/// the third term balances the near-field power against the far-field
/// plateau of the maximal function.
struct NeighborhoodSpec {
    std::vector<double> kappa;
    double delta = std::numeric_limits<double>::infinity();
    // inputs echoed for reporting
    std::vector<double> s, c, r;
    double ambient_alpha = 0.0, ambient_c = 1.0, triangle_k = 1.0, nu_total = 0.0;
};

struct MemberParams {
    double s = 0.0;   // member Ahlfors exponent s_i (declared or fitted)
    double c = 1.0;   // member Ahlfors constant c_i
    double r0 = 0.0;  // member local radius r_i
};

struct AmbientParams {
    double alpha = 0.0;  // ambient Ahlfors exponent
    double c = 1.0;      // ambient Ahlfors constant
    double k = 1.0;      // triangle constant
};

/// kappa_i per the min-of-three recipe. `delta` is the minimal inter-member
/// gap; pass +inf for a single member (the Delta terms drop out). nu_total
/// is nu(F) = sum of member measures.
inline NeighborhoodSpec build_neighborhoods(std::span<const MemberParams> members,
                                            const AmbientParams& ambient, double nu_total,
                                            double delta) {
    require(!members.empty(), "build_neighborhoods: no members");
    require(delta > 0, "build_neighborhoods: members touch (Delta <= 0)");
    require(nu_total > 0, "build_neighborhoods: nu(F) must be positive");
    NeighborhoodSpec n;
    n.delta = delta;
    n.ambient_alpha = ambient.alpha;
    n.ambient_c = ambient.c;
    n.triangle_k = ambient.k;
    n.nu_total = nu_total;
    for (const auto& m : members) {
        require(m.s < ambient.alpha, "build_neighborhoods: member exponent must be below ambient");
        require(m.c >= 1 && ambient.c >= 1, "build_neighborhoods: Ahlfors constants are >= 1");
        require(m.r0 > 0, "build_neighborhoods: member local radius must be positive");
        const double a = ambient.alpha, k = ambient.k;
        double third = std::numeric_limits<double>::infinity();
        if (std::isfinite(delta)) {
            const double numer = ambient.c * std::pow(2.0, a) * std::pow(k, a) * nu_total;
            const double denom =
                m.c * std::pow(delta, a) * std::pow(2.0, m.s) * std::pow(k, m.s);
            third = std::pow(numer / denom, 1.0 / (m.s - a));
        }
        n.kappa.push_back(std::min({2.0 * m.r0, delta / 2.0, third}));
        n.s.push_back(m.s);
        n.c.push_back(m.c);
        n.r.push_back(m.r0);
    }
    return n;
}

/// Minimal gap between member atom sets (+inf for a single member).
inline double member_gap(std::span<const GeneratedSet> members) {
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a + 1 < members.size(); ++a)
        for (std::size_t b = a + 1; b < members.size(); ++b)
            for (std::size_t i = 0; i < members[a].space->size(); ++i) {
                const auto p = members[a].space->point(i);
                for (std::size_t j = 0; j < members[b].space->size(); ++j)
                    delta = std::min(delta, members[b].space->distance_to_point(j, p));
            }
    return delta;
}

// ---------------------------------------------------------------------------
// Weight specifications
// ---------------------------------------------------------------------------

struct PowerDistance {
    SubsetRef set;
    double beta = 0.0;
};

struct PiecewisePower {
    std::vector<SubsetRef> sets;
    std::vector<double> betas;
    NeighborhoodSpec neighborhoods;
};

struct MaximalPower {
    DiscreteMeasure nu;
    double gamma = 0.0;  // in [0, 1)
    MaximalOptions window;
};

struct TruncatedMaximalPower {
    DiscreteMeasure nu;
    double gamma = 0.0;
    double floor_c = 1.0;  // any C > 0
    MaximalOptions window;
};

struct ConstantWeight {
    double c = 1.0;
};

struct WeightSpec {
    std::variant<PowerDistance, PiecewisePower, MaximalPower, TruncatedMaximalPower, ConstantWeight>
        variant;

    static WeightSpec power_distance(SubsetRef f, double beta) {
        return {PowerDistance{std::move(f), beta}};
    }
    static WeightSpec piecewise(std::vector<SubsetRef> sets, std::vector<double> betas,
                                NeighborhoodSpec n) {
        require(sets.size() == betas.size() && sets.size() == n.kappa.size(),
                "WeightSpec: piecewise sizes mismatch");
        return {PiecewisePower{std::move(sets), std::move(betas), std::move(n)}};
    }
    static WeightSpec maximal_power(DiscreteMeasure nu, double gamma, MaximalOptions w = {}) {
        require(gamma >= 0 && gamma < 1, "WeightSpec: gamma must lie in [0, 1)");
        return {MaximalPower{std::move(nu), gamma, std::move(w)}};
    }
    static WeightSpec truncated_maximal_power(DiscreteMeasure nu, double gamma, double floor_c,
                                              MaximalOptions w = {}) {
        require(gamma >= 0 && gamma < 1, "WeightSpec: gamma must lie in [0, 1)");
        require(floor_c > 0, "WeightSpec: floor must be positive");
        return {TruncatedMaximalPower{std::move(nu), gamma, floor_c, std::move(w)}};
    }
    static WeightSpec constant(double c) {
        require(c > 0, "WeightSpec: constant must be positive");
        return {ConstantWeight{c}};
    }
};

/// pow with the distance-weight conventions: 0^0 = 1, 0^beta = +inf for
/// beta < 0 (sentinel for atoms lying exactly on F) and 0 for beta > 0.
inline double power_weight(double d, double beta) {
    if (beta == 0.0) return 1.0;
    if (d == 0.0) return beta < 0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::pow(d, beta);
}

/// Weight at every atom of the space. MaximalPower variants price the whole
/// profile in one pass.
inline std::vector<double> weight_values(const WeightSpec& spec, const MetricMeasureSpace& space) {
    const std::size_t n = space.size();
    std::vector<double> w(n);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantWeight>) {
                std::fill(w.begin(), w.end(), v.c);
            } else if constexpr (std::is_same_v<T, PowerDistance>) {
                for (std::size_t i = 0; i < n; ++i)
                    w[i] = power_weight(v.set.distance_to_atom(space, i), v.beta);
            } else if constexpr (std::is_same_v<T, PiecewisePower>) {
                for (std::size_t i = 0; i < n; ++i) {
                    w[i] = 1.0;  // outside every neighborhood
                    for (std::size_t m = 0; m < v.sets.size(); ++m) {
                        const double d = v.sets[m].distance_to_atom(space, i);
                        if (d < v.neighborhoods.kappa[m]) {
                            w[i] = power_weight(d, v.betas[m]);
                            break;
                        }
                    }
                }
            } else if constexpr (std::is_same_v<T, MaximalPower>) {
                std::vector<std::size_t> eval(n);
                for (std::size_t i = 0; i < n; ++i) eval[i] = i;
                const auto prof = maximal_of_measure(space, v.nu, eval, v.window);
                for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(prof.value[i], v.gamma);
            } else if constexpr (std::is_same_v<T, TruncatedMaximalPower>) {
                std::vector<std::size_t> eval(n);
                for (std::size_t i = 0; i < n; ++i) eval[i] = i;
                const auto prof = maximal_of_measure(space, v.nu, eval, v.window);
                for (std::size_t i = 0; i < n; ++i)
                    w[i] = std::max(std::pow(prof.value[i], v.gamma), v.floor_c);
            }
        },
        spec.variant);
    return w;
}

/// Weight at one atom.
inline double eval_weight(const WeightSpec& spec, const MetricMeasureSpace& space, std::size_t i) {
    require(i < space.size(), "eval_weight: atom index out of range");
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantWeight>) {
                return v.c;
            } else if constexpr (std::is_same_v<T, PowerDistance>) {
                return power_weight(v.set.distance_to_atom(space, i), v.beta);
            } else if constexpr (std::is_same_v<T, PiecewisePower>) {
                for (std::size_t m = 0; m < v.sets.size(); ++m) {
                    const double d = v.sets[m].distance_to_atom(space, i);
                    if (d < v.neighborhoods.kappa[m]) return power_weight(d, v.betas[m]);
                }
                return 1.0;
            } else if constexpr (std::is_same_v<T, MaximalPower>) {
                const std::size_t eval[1] = {i};
                const auto prof = maximal_of_measure(space, v.nu, eval, v.window);
                return std::pow(prof.value[0], v.gamma);
            } else {
                const auto& t = std::get<TruncatedMaximalPower>(spec.variant);
                const std::size_t eval[1] = {i};
                const auto prof = maximal_of_measure(space, t.nu, eval, t.window);
                return std::max(std::pow(prof.value[0], t.gamma), t.floor_c);
            }
        },
        spec.variant);
}

}  // namespace ahlfors
