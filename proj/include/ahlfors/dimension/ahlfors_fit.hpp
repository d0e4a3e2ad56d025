#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ahlfors/core/measure.hpp"
#include "ahlfors/core/net.hpp"
#include "ahlfors/fractals/generate.hpp"
#include "ahlfors/util/error.hpp"
#include "ahlfors/util/fit.hpp"
#include "ahlfors/util/grids.hpp"
#include "ahlfors/util/rng.hpp"

namespace ahlfors {

/// Fitted Ahlfors condition c^-1 r^a <= nu(B(x,r)) <= c r^a over a radius
/// window: the log-log least-squares exponent, the worst-case two-sided
/// constant at that exponent, and the fit residual.
struct AhlforsEstimate {
    double exponent = 0.0;
    double constant = 1.0;  // max of nu(B)/r^a and r^a/nu(B) over samples
    double r_min = 0.0;
    double r_max = 0.0;
    double fit_residual = 0.0;
    std::size_t samples_used = 0;
};

struct AhlforsFitOptions {
    int per_decade = 12;
    std::size_t max_centers = 512;
    std::uint64_t seed = 2024;
    /// Skip (center, radius) pairs whose ball leaks past the support's
    /// bounding box on a non-degenerate axis. Such balls are clipped by the
    /// extent of the set and flatten the log-log curve; dropping them is the
    /// same move as the saturation guards common in box-count estimators.
    bool interior_guard = true;
};

/// One (center, radius, ball mass) sample of the fit table.
struct FitSample {
    std::size_t center;
    double r;
    double ball_mass;
};

namespace detail {

inline std::vector<std::size_t> pick_centers(std::size_t support_size, const AhlforsFitOptions& o) {
    CounterRng rng(o.seed);
    return rng.sample_without_replacement(/*stream=*/17, support_size, o.max_centers);
}

}  // namespace detail

/// Fit table: nu(B(x,r)) over sampled centers and the radii grid. Centers
/// are a seeded uniform pick from the support (at most max_centers). Pairs
/// rejected by the interior guard are omitted.
inline std::vector<FitSample> ahlfors_fit_samples(const DiscreteMeasure& nu,
                                                  std::span<const double> radii,
                                                  const AhlforsFitOptions& options = {}) {
    const auto centers = detail::pick_centers(nu.size(), options);
    std::vector<FitSample> out;
    const auto& host = *nu.host();
    for (const std::size_t k : centers) {
        const std::size_t atom = nu.atom(k);
        const auto prof = nu.profile_from_atom(host, atom);
        const double margin = options.interior_guard ? host.interior_margin(atom)
                                                     : std::numeric_limits<double>::infinity();
        for (const double r : radii) {
            if (r > margin) continue;
            const double m = prof.mass_below(r, /*closed=*/false);
            out.push_back({atom, r, m});
        }
    }
    return out;
}

/// Least-squares fit of log nu(B(x,r)) against log r, pooled over centers
/// drawn from the support. Balls empty at the smallest radius signal radii
/// below the resolution scale and are an error.
inline AhlforsEstimate ahlfors_fit(const DiscreteMeasure& nu, std::span<const double> radii,
                                   const AhlforsFitOptions& options = {}) {
    require(!radii.empty(), "ahlfors_fit: empty radii grid");
    require(std::is_sorted(radii.begin(), radii.end()), "ahlfors_fit: radii must be ascending");
    require(radii.front() > 0, "ahlfors_fit: radii must be positive");
    auto samples = ahlfors_fit_samples(nu, radii, options);
    const auto usable = [&](const std::vector<FitSample>& ss) {
        std::vector<double> lx, ly;
        for (const auto& s : ss) {
            if (s.ball_mass <= 0.0) {
                require(s.r > radii.front(),
                        "ahlfors_fit: empty ball at the smallest radius (below resolution)");
                continue;
            }
            lx.push_back(std::log(s.r));
            ly.push_back(std::log(s.ball_mass));
        }
        return std::pair{lx, ly};
    };
    auto [lx, ly] = usable(samples);
    const auto distinct_radii = [](std::span<const double> xs) {
        double lo = 0, hi = 0;
        bool first = true;
        for (const double x : xs) {
            lo = first ? x : std::min(lo, x);
            hi = first ? x : std::max(hi, x);
            first = false;
        }
        return !first && hi > lo;
    };
    if (options.interior_guard && (lx.size() < 2 || !distinct_radii(lx))) {
        // window too close to the support extent for the guard; fall back
        AhlforsFitOptions raw = options;
        raw.interior_guard = false;
        samples = ahlfors_fit_samples(nu, radii, raw);
        std::tie(lx, ly) = usable(samples);
    }
    require(lx.size() >= 2, "ahlfors_fit: not enough usable (center, radius) samples");
    const LineFit f = fit_line(lx, ly);

    AhlforsEstimate e;
    e.exponent = f.slope;
    e.r_min = radii.front();
    e.r_max = radii.back();
    e.fit_residual = f.rms_residual;
    e.samples_used = lx.size();
    double worst = 1.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double ratio = std::exp(ly[i] - e.exponent * lx[i]);
        worst = std::max(worst, std::max(ratio, 1.0 / ratio));
    }
    e.constant = worst;
    return e;
}

/// Convenience overload: window [r_min, r_max] at the default grid density.
inline AhlforsEstimate ahlfors_fit(const DiscreteMeasure& nu, double r_min, double r_max,
                                   const AhlforsFitOptions& options = {}) {
    const auto radii = log_grid(r_min, r_max, options.per_decade);
    return ahlfors_fit(nu, radii, options);
}

/// Worst sampled doubling ratio mu(B(x,2r)) / mu(B(x,r)) over centers in the
/// support and radii with both r and 2r inside [r_min, r_max].
inline double doubling_estimate(const DiscreteMeasure& nu, double r_min, double r_max,
                                const AhlforsFitOptions& options = {}) {
    require(r_max > 2 * r_min, "doubling_estimate: need r_max > 2*r_min");
    const auto radii = log_grid(r_min, r_max / 2.0, options.per_decade);
    const auto centers = detail::pick_centers(nu.size(), options);
    const auto& host = *nu.host();
    double worst = 1.0;
    for (const std::size_t k : centers) {
        const auto prof = nu.profile_from_atom(host, nu.atom(k));
        for (const double r : radii) {
            const double m1 = prof.mass_below(r, false);
            require(m1 > 0, "doubling_estimate: empty ball at sampled radius");
            const double m2 = prof.mass_below(2 * r, false);
            worst = std::max(worst, m2 / m1);
        }
    }
    return worst;
}

/// Check of the local-to-global principle: fitting with small radii and with
/// radii up to diam(F) should agree up to the factor I*c predicted through a
/// finite r0/2-net of F (I = net cardinality). Trivial when diam(F) <= r0.
struct LocalGlobalReport {
    bool trivial = false;  // diam(F) <= r0: no large-radius window
    AhlforsEstimate local;
    double global_constant = 1.0;  // upper-side constant at the local exponent
    std::size_t net_size = 0;
    double predicted_factor = 1.0;  // I * c_local
    bool pass = true;
};

inline LocalGlobalReport local_to_global_check(const GeneratedSet& subset,
                                               double split_radius = 0.0,
                                               const AhlforsFitOptions& options = {}) {
    LocalGlobalReport rep;
    const double cell = subset.local_radius;
    const double diam = subset.space->diameter();
    double r0 = split_radius;
    if (r0 <= 0) r0 = std::min(16.0 * cell, diam / 4.0);
    if (diam <= r0) {
        rep.trivial = true;
        return rep;
    }
    rep.local = ahlfors_fit(subset.measure, 2.0 * cell, r0, options);

    // Upper-side constant on the large-radius window at the local exponent.
    const auto radii = log_grid(r0, diam, options.per_decade);
    AhlforsFitOptions global_opts = options;
    global_opts.interior_guard = false;
    const auto samples = ahlfors_fit_samples(subset.measure, radii, global_opts);
    double worst = 0.0;
    for (const auto& s : samples) {
        if (s.ball_mass <= 0) continue;
        worst = std::max(worst, s.ball_mass / std::pow(s.r, rep.local.exponent));
    }
    rep.global_constant = worst;

    const auto net = greedy_net(*subset.space, r0 / 2.0);
    rep.net_size = net.size();
    rep.predicted_factor = static_cast<double>(net.size()) * rep.local.constant;
    rep.pass = rep.global_constant <= rep.predicted_factor;
    return rep;
}

}  // namespace ahlfors
