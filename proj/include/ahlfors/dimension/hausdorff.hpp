#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "ahlfors/core/space.hpp"
#include "ahlfors/util/error.hpp"
#include "ahlfors/util/fit.hpp"

namespace ahlfors {

/// Greedy spherical cover sum at scale rho: balls of diameter exactly rho
/// centered in the subset, value = ballCount * rho^s. An upper bound for
/// the spherical pre-measure S^s_rho; the true infimum is not attainable
/// algorithmically, and on finite sets it degenerates to zero anyway.
struct CoverSum {
    double s = 0.0;
    double rho = 0.0;
    double value = 0.0;
    std::size_t ball_count = 0;
    std::vector<std::size_t> centers;  // chosen greedy centers, in pick order
};

/// Cover the subset atoms greedily. Each round targets the uncovered atom
/// of smallest index and centers a closed ball of radius rho/2 at the
/// subset atom that covers that target and the most other uncovered atoms
/// (ties to the smallest index). Centering on the target itself would waste
/// half of every ball along a curve (a factor-2 overpayment on a line), so
/// the center is optimized within the admissible candidates; the choice is
/// still deterministic and all centers lie in the subset.
inline CoverSum cover_sum(const MetricMeasureSpace& space,
                          std::span<const std::size_t> subset_atoms, double s, double rho) {
    require(rho > 0, "cover_sum: rho must be positive");
    require(s >= 0, "cover_sum: s must be >= 0");
    require(!subset_atoms.empty(), "cover_sum: empty subset");
    CoverSum cs;
    cs.s = s;
    cs.rho = rho;
    const double r = rho / 2.0;
    std::vector<bool> covered(subset_atoms.size(), false);
    for (std::size_t k = 0; k < subset_atoms.size(); ++k) {
        if (covered[k]) continue;
        const std::size_t target = subset_atoms[k];
        std::size_t best_center = target;
        std::size_t best_gain = 0;
        for (const std::size_t cand : subset_atoms) {
            if (space.distance(cand, target) > r) continue;
            std::size_t gain = 0;
            for (std::size_t j = k; j < subset_atoms.size(); ++j)
                if (!covered[j] && space.distance(cand, subset_atoms[j]) <= r) ++gain;
            if (gain > best_gain) {
                best_gain = gain;
                best_center = cand;
            }
        }
        cs.centers.push_back(best_center);
        for (std::size_t j = k; j < subset_atoms.size(); ++j)
            if (!covered[j] && space.distance(best_center, subset_atoms[j]) <= r)
                covered[j] = true;
    }
    cs.ball_count = cs.centers.size();
    cs.value = static_cast<double>(cs.ball_count) * std::pow(rho, s);
    return cs;
}

/// Table of cover sums over an (s, rho) grid plus the estimated critical
/// exponent: the value trend in rho flips from increasing (s below the
/// dimension) to decreasing (s above), so the estimate is the zero crossing
/// of the log value vs log rho slope as a function of s.
struct DimensionScan {
    std::vector<double> s_grid;
    std::vector<double> rho_grid;
    std::vector<std::vector<double>> values;       // [s][rho]
    std::vector<std::vector<std::size_t>> counts;  // [s][rho]
    std::vector<double> trend;                     // d log value / d log rho per s
    double critical_s = 0.0;
};

inline DimensionScan dimension_scan(const MetricMeasureSpace& space,
                                    std::span<const std::size_t> subset_atoms,
                                    std::span<const double> s_grid,
                                    std::span<const double> rho_grid) {
    require(!s_grid.empty() && !rho_grid.empty(), "dimension_scan: empty grid");
    DimensionScan scan;
    scan.s_grid.assign(s_grid.begin(), s_grid.end());
    scan.rho_grid.assign(rho_grid.begin(), rho_grid.end());

    // ball counts depend only on rho
    std::vector<std::size_t> counts(rho_grid.size());
    for (std::size_t j = 0; j < rho_grid.size(); ++j)
        counts[j] = cover_sum(space, subset_atoms, 0.0, rho_grid[j]).ball_count;

    std::vector<double> lr(rho_grid.size());
    for (std::size_t j = 0; j < rho_grid.size(); ++j) lr[j] = std::log(rho_grid[j]);

    scan.values.resize(s_grid.size());
    scan.counts.resize(s_grid.size());
    scan.trend.resize(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        scan.values[i].resize(rho_grid.size());
        scan.counts[i] = counts;
        std::vector<double> lv(rho_grid.size());
        for (std::size_t j = 0; j < rho_grid.size(); ++j) {
            scan.values[i][j] =
                static_cast<double>(counts[j]) * std::pow(rho_grid[j], s_grid[i]);
            lv[j] = std::log(scan.values[i][j]);
        }
        scan.trend[i] = rho_grid.size() >= 2 ? fit_line(lr, lv).slope : 0.0;
    }

    // zero crossing of trend(s); trend is s - dim up to lattice noise
    scan.critical_s = scan.s_grid.front();
    for (std::size_t i = 0; i + 1 < s_grid.size(); ++i) {
        if (scan.trend[i] <= 0 && scan.trend[i + 1] > 0) {
            const double t = -scan.trend[i] / (scan.trend[i + 1] - scan.trend[i]);
            scan.critical_s = scan.s_grid[i] + t * (scan.s_grid[i + 1] - scan.s_grid[i]);
            return scan;
        }
    }
    if (scan.trend.front() > 0) scan.critical_s = scan.s_grid.front();
    if (scan.trend.back() <= 0) scan.critical_s = scan.s_grid.back();
    return scan;
}

}  // namespace ahlfors
