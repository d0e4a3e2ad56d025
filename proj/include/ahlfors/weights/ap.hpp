#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "ahlfors/core/measure.hpp"
#include "ahlfors/core/space.hpp"
#include "ahlfors/maximal/maximal.hpp"
#include "ahlfors/util/error.hpp"
#include "ahlfors/util/fit.hpp"
#include "ahlfors/util/rng.hpp"
#include "ahlfors/weights/weight.hpp"

namespace ahlfors {

struct BallProduct {
    double value = 0.0;
    std::size_t atoms_used = 0;
    std::size_t flagged = 0;  // atoms with w = 0 or +inf, excluded from averages
};

/// The A_p product of a weight over one ball:
///   (avg_B w) (avg_B w^{-1/(p-1)})^{p-1}       for p > 1
///   (avg_B w) / (min over ball atoms of w)     for p = 1
/// Averages are mu-weighted. Atoms where the weight degenerates to 0 or
/// +inf (possible only when a sample atom lies exactly on F) are excluded
/// from the averages and counted; in the continuum F carries no mu-mass,
/// so their atomic mass is a discretization artifact.
inline BallProduct ap_ball_product(const MetricMeasureSpace& space, std::span<const double> w,
                                   const Ball& ball, double p) {
    require(p >= 1.0, "ap_ball_product: p must be >= 1");
    require(w.size() == space.size(), "ap_ball_product: weight vector size mismatch");
    const auto atoms = space.ball_query(ball);
    require(!atoms.empty(), "ap_ball_product: empty ball");
    BallProduct out;
    double mass = 0.0, wsum = 0.0, vsum = 0.0;
    double wmin = std::numeric_limits<double>::infinity();
    const double q = p > 1.0 ? -1.0 / (p - 1.0) : 0.0;
    for (const std::size_t a : atoms) {
        const double wa = w[a];
        if (!(wa > 0.0) || !std::isfinite(wa)) {
            ++out.flagged;
            continue;
        }
        const double m = space.mass(a);
        mass += m;
        wsum += wa * m;
        if (p > 1.0)
            vsum += std::pow(wa, q) * m;
        else
            wmin = std::min(wmin, wa);
        ++out.atoms_used;
    }
    require(out.atoms_used > 0, "ap_ball_product: every ball atom has a degenerate weight");
    const double avg_w = wsum / mass;
    out.value = p > 1.0 ? avg_w * std::pow(vsum / mass, p - 1.0) : avg_w / wmin;
    return out;
}

struct SamplerConfig {
    std::size_t ball_count = 500;
    std::uint64_t seed = 20240817;
    double r_min = 0.0;  // radius window (log-uniform draw)
    double r_max = 0.0;
};

/// Sampled-ball statistics of the A_p product for one weight.
struct ApReport {
    double p = 1.0;
    std::string weight_id;
    std::size_t balls_sampled = 0;
    std::vector<std::size_t> centers;
    std::vector<double> radii;
    std::vector<double> products;  // draw order
    double supremum = 0.0;
    double q50 = 0.0, q90 = 0.0, q99 = 0.0;
    double r_min = 0.0, r_max = 0.0;
    std::uint64_t seed = 0;
    std::size_t flagged_atoms = 0;
};

/// Deterministic sampled estimate: centers uniform over atoms, radii
/// log-uniform over [r_min, r_max], both driven by the counter generator,
/// so the report depends only on (space, weight, p, config).
inline ApReport ap_constant_estimate(const MetricMeasureSpace& space, std::span<const double> w,
                                     double p, const SamplerConfig& cfg,
                                     std::string weight_id = {}) {
    require(cfg.r_min > 0 && cfg.r_max > cfg.r_min, "ap_constant_estimate: bad radius window");
    require(cfg.ball_count >= 1, "ap_constant_estimate: ball_count must be >= 1");
    CounterRng rng(cfg.seed);
    ApReport rep;
    rep.p = p;
    rep.weight_id = std::move(weight_id);
    rep.r_min = cfg.r_min;
    rep.r_max = cfg.r_max;
    rep.seed = cfg.seed;
    const std::size_t max_attempts = cfg.ball_count * 50 + 1000;
    for (std::size_t k = 0; k < max_attempts && rep.products.size() < cfg.ball_count; ++k) {
        const std::size_t center = rng.pick(/*stream=*/0, k, space.size());
        const double radius = rng.log_uniform(/*stream=*/1, k, cfg.r_min, cfg.r_max);
        BallProduct bp;
        try {
            bp = ap_ball_product(space, w, Ball{center, radius, false}, p);
        } catch (const Error&) {
            continue;  // degenerate ball; draw again
        }
        rep.centers.push_back(center);
        rep.radii.push_back(radius);
        rep.products.push_back(bp.value);
        rep.flagged_atoms += bp.flagged;
    }
    require(rep.products.size() >= 10, "ap_constant_estimate: fewer than 10 valid balls");
    require(rep.products.size() >= cfg.ball_count,
            "ap_constant_estimate: could not collect the requested number of valid balls");
    rep.balls_sampled = rep.products.size();
    std::vector<double> sorted = rep.products;
    std::sort(sorted.begin(), sorted.end());
    rep.supremum = sorted.back();
    rep.q50 = quantile_sorted(sorted, 0.50);
    rep.q90 = quantile_sorted(sorted, 0.90);
    rep.q99 = quantile_sorted(sorted, 0.99);
    return rep;
}

// ---------------------------------------------------------------------------
// Kolmogorov inequality check
// ---------------------------------------------------------------------------

struct KolmogorovConfig {
    double gamma = 0.5;  // in (0, 1)
    std::size_t test_sets = 200;
    std::uint64_t seed = 99;
    double r_min = 0.0;  // ball test-set radii window
    double r_max = 0.0;
    std::size_t max_subset_size = 64;
};

struct KolmogorovResult {
    double max_ratio = 0.0;
    std::size_t sets_used = 0;
    std::size_t sets_with_empty_nu1 = 0;
};

/// Empirical Kolmogorov ratio: test sets E alternate between random balls
/// and random atom subsets; for each, nu is split at the enclosing ball
/// B(x0, r0) into nu1 = nu restricted to B(x0, 2K r0), and the statistic is
///   integral_E (M_mu nu1)^gamma dmu  /  ( mu(E)^{1-gamma} * ||nu1||^gamma ),
/// with 0/0 -> 0. The normalizer uses the total mass of nu1 — that is the
/// form the weak-(1,1) bound actually yields; an E-localized mass can
/// vanish while the numerator does not.
inline KolmogorovResult kolmogorov_check(const MetricMeasureSpace& space,
                                         const DiscreteMeasure& nu,
                                         const KolmogorovConfig& cfg) {
    require(cfg.gamma > 0 && cfg.gamma < 1, "kolmogorov_check: gamma must lie in (0,1)");
    require(cfg.r_min > 0 && cfg.r_max > cfg.r_min, "kolmogorov_check: bad radius window");
    require(space.is_euclidean(), "kolmogorov_check: needs a Euclidean frame");
    const double k_const = space.metric().triangle_constant();
    CounterRng rng(cfg.seed);
    KolmogorovResult res;
    for (std::size_t t = 0; t < cfg.test_sets; ++t) {
        std::vector<std::size_t> e_atoms;
        std::size_t x0 = 0;
        double r0 = 0.0;
        if (t % 2 == 0) {
            x0 = rng.pick(0, t, space.size());
            r0 = rng.log_uniform(1, t, cfg.r_min, cfg.r_max);
            e_atoms = space.ball_query(Ball{x0, r0, false});
        } else {
            const std::size_t sz =
                2 + rng.pick(2, t, std::min(cfg.max_subset_size, space.size()) - 1);
            e_atoms = rng.sample_without_replacement(1000 + t, space.size(), sz);
            x0 = e_atoms.front();
            r0 = 0.0;
            for (const std::size_t a : e_atoms) r0 = std::max(r0, space.distance(x0, a));
            r0 *= 1.0 + 1e-9;
        }
        if (e_atoms.empty()) continue;
        ++res.sets_used;
        const auto nu1 = nu.restrict_to_closed_ball(space.point(x0), 2.0 * k_const * r0);
        if (nu1.empty()) {
            ++res.sets_with_empty_nu1;
            continue;  // M nu1 == 0 on E as well: 0/0 -> 0
        }
        const auto prof = maximal_of_measure(space, nu1, e_atoms);
        double lhs = 0.0, mu_e = 0.0;
        for (std::size_t j = 0; j < e_atoms.size(); ++j) {
            lhs += std::pow(prof.value[j], cfg.gamma) * space.mass(e_atoms[j]);
            mu_e += space.mass(e_atoms[j]);
        }
        const double denom =
            std::pow(mu_e, 1.0 - cfg.gamma) * std::pow(nu1.total_mass(), cfg.gamma);
        if (lhs == 0.0 && denom == 0.0) continue;
        res.max_ratio = std::max(res.max_ratio, lhs / denom);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Cross-level range sweep
// ---------------------------------------------------------------------------

enum class Verdict { stable, inconclusive, divergent };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::stable: return "stable";
        case Verdict::divergent: return "divergent";
        default: return "inconclusive";
    }
}

struct SweepThresholds {
    double stable = 1.5;     // growth factor below which a row is stable
    double divergent = 2.0;  // growth factor at or above which it diverges
};

/// One refinement level of the sweep: the ambient space, the set F the
/// power weight measures distance to, and the sampler radius window.
struct LevelInstance {
    SpacePtr space;
    SubsetRef f;
    double r_min = 0.0;
    double r_max = 0.0;
};

struct SweepRow {
    int level = 0;
    double beta = 0.0;
    double p = 1.0;
    double supremum = 0.0;
    double q50 = 0.0, q90 = 0.0, q99 = 0.0;
    std::size_t balls = 0;
};

struct BetaVerdict {
    double beta = 0.0;
    bool in_range = false;  // against the theoretical (alpha, s) interval
    Verdict verdict = Verdict::inconclusive;
    std::vector<double> growth;  // per consecutive level pair
};

struct SweepResult {
    std::vector<SweepRow> rows;  // beta-major, level-minor
    std::vector<BetaVerdict> verdicts;
    double alpha = 0.0, s = 0.0;  // range inputs used
};

/// Theoretical membership interval for d(x,F)^beta in A_p:
/// -(alpha-s) < beta < (alpha-s)(p-1), with the p = 1 case read as
/// -(alpha-s) < beta <= 0 (beta = gamma (s-alpha), 0 <= gamma < 1).
inline bool beta_in_range(double beta, double alpha, double s, double p) {
    const double gap = alpha - s;
    if (p <= 1.0) return beta > -gap && beta <= 0.0;
    return beta > -gap && beta < gap * (p - 1.0);
}

inline Verdict classify_growth(std::span<const double> growth, const SweepThresholds& thr) {
    if (growth.empty()) return Verdict::inconclusive;
    bool all_stable = true, all_divergent = true;
    for (const double g : growth) {
        all_stable = all_stable && g < thr.stable;
        all_divergent = all_divergent && g >= thr.divergent;
    }
    if (all_stable) return Verdict::stable;
    if (all_divergent) return Verdict::divergent;
    return Verdict::inconclusive;
}

/// A_p supremum of d(x,F)^beta per (beta, level); a beta is "stable" when
/// the supremum grows by less than the stable threshold at every refinement
/// and "divergent" when it grows by at least the divergent threshold. A
/// single finite discretization always has a finite supremum, so this
/// cross-level growth is the operational membership test.
inline SweepResult range_sweep(const std::function<LevelInstance(int)>& provider,
                               std::span<const int> levels, double p,
                               std::span<const double> betas, const SamplerConfig& sampler,
                               const SweepThresholds& thresholds, double alpha, double s) {
    require(levels.size() >= 1, "range_sweep: need at least one level");
    require(!betas.empty(), "range_sweep: empty beta grid");
    SweepResult out;
    out.alpha = alpha;
    out.s = s;

    std::vector<LevelInstance> inst;
    inst.reserve(levels.size());
    for (const int l : levels) inst.push_back(provider(l));

    for (const double beta : betas) {
        std::vector<double> sups;
        for (std::size_t li = 0; li < inst.size(); ++li) {
            const auto& in = inst[li];
            const auto w = weight_values(WeightSpec::power_distance(in.f, beta), *in.space);
            SamplerConfig cfg = sampler;
            cfg.r_min = in.r_min;
            cfg.r_max = in.r_max;
            const auto rep = ap_constant_estimate(*in.space, w, p, cfg);
            SweepRow row;
            row.level = levels[li];
            row.beta = beta;
            row.p = p;
            row.supremum = rep.supremum;
            row.q50 = rep.q50;
            row.q90 = rep.q90;
            row.q99 = rep.q99;
            row.balls = rep.balls_sampled;
            out.rows.push_back(row);
            sups.push_back(rep.supremum);
        }
        BetaVerdict v;
        v.beta = beta;
        v.in_range = beta_in_range(beta, alpha, s, p);
        for (std::size_t i = 0; i + 1 < sups.size(); ++i) v.growth.push_back(sups[i + 1] / sups[i]);
        v.verdict = classify_growth(v.growth, thresholds);
        out.verdicts.push_back(v);
    }
    return out;
}

}  // namespace ahlfors
