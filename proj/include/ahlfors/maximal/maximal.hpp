#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ahlfors/core/measure.hpp"
#include "ahlfors/core/space.hpp"
#include "ahlfors/util/error.hpp"
#include "ahlfors/util/parallel.hpp"

namespace ahlfors {

/// How the sup over r is realized. With an explicit grid the value is the
/// max of the ratio over those radii. With an empty grid the sweep is
/// exact: the ratio is piecewise constant between realized distances, so
/// evaluating once per plateau (radius = realized distance + half-gap)
/// attains the true supremum over the window.
struct MaximalOptions {
    std::vector<double> radii;  // explicit grid; empty => exact sweep
    double r_min = 0.0;         // window for the exact sweep; 0 => all r > 0
    double r_max = std::numeric_limits<double>::infinity();
};

/// Centered Hardy-Littlewood maximal values at the evaluation atoms, with
/// the radius attaining each max. Values at atoms lying on supp(nu) are
/// large at discrete scale (infinite in the continuum) and get flagged.
struct MaximalProfile {
    std::vector<double> value;
    std::vector<double> argmax_radius;
    std::vector<std::uint8_t> on_support;
    std::vector<double> radii;  // grid used; empty for the exact sweep
};

namespace detail {

struct RatioSweep {
    double best = 0.0;
    double best_r = 0.0;
};

/// Exact sup over r in [r_min, r_max] of num(B(x,r)) / den(B(x,r)) given
/// the two sorted distance profiles from x. Balls are open; the ratio is
/// constant on (d_k, d_{k+1}], so each plateau is tested at its midpoint
/// (clamped to the window).
inline RatioSweep sweep_ratio(const DistanceProfile& num, const DistanceProfile& den,
                              double r_min, double r_max) {
    RatioSweep out;
    // merge the two distance lists into plateau breakpoints
    std::vector<double> cuts;
    cuts.reserve(num.dist.size() + den.dist.size() + 1);
    cuts.insert(cuts.end(), num.dist.begin(), num.dist.end());
    cuts.insert(cuts.end(), den.dist.begin(), den.dist.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double lo = std::max(r_min, 0.0);
    std::size_t in = 0, id = 0;  // prefix positions (atoms strictly below the plateau)
    double nmass = 0.0, dmass = 0.0;
    auto eval_plateau = [&](double left, double right) {
        // plateau (left, right]: open balls of radius r in it hold atoms with d <= left
        if (right <= lo || left >= r_max) return;
        const double rep = std::min(std::max((left + std::min(right, r_max)) / 2.0, lo), r_max);
        if (rep <= left || rep > right) {
            // window clamp degenerated; pick anything strictly inside
            return;
        }
        if (dmass > 0.0) {
            const double ratio = nmass / dmass;
            if (ratio > out.best) {
                out.best = ratio;
                out.best_r = rep;
            }
        }
    };

    for (std::size_t c = 0; c < cuts.size(); ++c) {
        const double d = cuts[c];
        while (in < num.dist.size() && num.dist[in] <= d) ++in;
        while (id < den.dist.size() && den.dist[id] <= d) ++id;
        nmass = in > 0 ? num.mass_prefix[in - 1] : 0.0;
        dmass = id > 0 ? den.mass_prefix[id - 1] : 0.0;
        const double next =
            c + 1 < cuts.size() ? cuts[c + 1] : std::numeric_limits<double>::infinity();
        eval_plateau(d, next);
    }
    return out;
}

}  // namespace detail

/// M_mu nu(x) = sup_r nu(B(x,r)) / mu(B(x,r)) at the given atoms (centered
/// version only; the uncentered one is equivalent up to the doubling
/// constant and is not implemented). nu may live on the ambient atoms or on
/// a companion space in the same frame.
inline MaximalProfile maximal_of_measure(const MetricMeasureSpace& space,
                                         const DiscreteMeasure& nu,
                                         std::span<const std::size_t> eval_points,
                                         const MaximalOptions& options = {}) {
    require(!eval_points.empty(), "maximal_of_measure: no evaluation points");
    for (const std::size_t i : eval_points)
        require(i < space.size(), "maximal_of_measure: evaluation index out of range");
    const bool same_host = nu.host().get() == &space;

    MaximalProfile prof;
    prof.radii = options.radii;
    prof.value.resize(eval_points.size());
    prof.argmax_radius.resize(eval_points.size());
    prof.on_support.resize(eval_points.size());

    parallel_for(eval_points.size(), [&](std::size_t e) {
        const std::size_t i = eval_points[e];
        const DistanceProfile mu_prof = space.profile(i);
        const DistanceProfile nu_prof = nu.profile_from_atom(space, i);
        const bool on_supp = same_host ? nu.supported_on(i)
                                       : (!nu_prof.dist.empty() && nu_prof.dist.front() == 0.0);
        prof.on_support[e] = on_supp ? 1 : 0;
        double best = 0.0, best_r = 0.0;
        if (prof.radii.empty()) {
            const auto sw =
                detail::sweep_ratio(nu_prof, mu_prof, options.r_min, options.r_max);
            best = sw.best;
            best_r = sw.best_r;
        } else {
            for (const double r : prof.radii) {
                require(r > 0, "maximal_of_measure: radii must be positive");
                const double den = mu_prof.mass_below(r, false);
                require(den > 0, "maximal_of_measure: empty mu-ball at a grid radius");
                const double ratio = nu_prof.mass_below(r, false) / den;
                if (ratio > best) {
                    best = ratio;
                    best_r = r;
                }
            }
        }
        prof.value[e] = best;
        prof.argmax_radius[e] = best_r;
    });
    return prof;
}

/// Closed form for the Dirac measure at atom x0:
/// M_mu delta_{x0}(x) = 1 / mu(closed ball B(x, d(x, x0))), +inf at x0.
inline std::vector<double> dirac_maximal(const MetricMeasureSpace& space, std::size_t x0,
                                         std::span<const std::size_t> eval_points) {
    require(x0 < space.size(), "dirac_maximal: x0 out of range");
    std::vector<double> out(eval_points.size());
    parallel_for(eval_points.size(), [&](std::size_t e) {
        const std::size_t i = eval_points[e];
        if (i == x0) {
            out[e] = std::numeric_limits<double>::infinity();
            return;
        }
        const double dstar = space.distance(i, x0);
        const DistanceProfile prof = space.profile(i);
        out[e] = 1.0 / prof.mass_below(dstar, /*closed=*/true);
    });
    return out;
}

/// M_mu f(x) = sup_r average of |f| over B(x,r) in mu.
inline MaximalProfile maximal_of_function(const MetricMeasureSpace& space,
                                          std::span<const double> f,
                                          std::span<const std::size_t> eval_points,
                                          const MaximalOptions& options = {}) {
    require(f.size() == space.size(), "maximal_of_function: f size mismatch");
    for (const double v : f)
        require(std::isfinite(v), "maximal_of_function: f must be finite at all atoms");

    MaximalProfile prof;
    prof.radii = options.radii;
    prof.value.resize(eval_points.size());
    prof.argmax_radius.resize(eval_points.size());
    prof.on_support.assign(eval_points.size(), 0);

    parallel_for(eval_points.size(), [&](std::size_t e) {
        const std::size_t i = eval_points[e];
        require(i < space.size(), "maximal_of_function: evaluation index out of range");
        // profile of |f| d mu alongside the mu profile, same distance order
        std::vector<double> d(space.size());
        for (std::size_t j = 0; j < space.size(); ++j) d[j] = space.distance(i, j);
        std::vector<std::size_t> order(space.size());
        for (std::size_t j = 0; j < space.size(); ++j) order[j] = j;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
        DistanceProfile mu_prof, fmu_prof;
        mu_prof.dist.resize(space.size());
        mu_prof.mass_prefix.resize(space.size());
        fmu_prof.dist.resize(space.size());
        fmu_prof.mass_prefix.resize(space.size());
        double am = 0.0, af = 0.0;
        for (std::size_t k = 0; k < space.size(); ++k) {
            const std::size_t j = order[k];
            am += space.mass(j);
            af += std::abs(f[j]) * space.mass(j);
            mu_prof.dist[k] = fmu_prof.dist[k] = d[j];
            mu_prof.mass_prefix[k] = am;
            fmu_prof.mass_prefix[k] = af;
        }
        double best = 0.0, best_r = 0.0;
        if (prof.radii.empty()) {
            const auto sw =
                detail::sweep_ratio(fmu_prof, mu_prof, options.r_min, options.r_max);
            best = sw.best;
            best_r = sw.best_r;
        } else {
            for (const double r : prof.radii) {
                const double den = mu_prof.mass_below(r, false);
                require(den > 0, "maximal_of_function: empty mu-ball at a grid radius");
                const double ratio = fmu_prof.mass_below(r, false) / den;
                if (ratio > best) {
                    best = ratio;
                    best_r = r;
                }
            }
        }
        prof.value[e] = best;
        prof.argmax_radius[e] = best_r;
    });
    return prof;
}

}  // namespace ahlfors
