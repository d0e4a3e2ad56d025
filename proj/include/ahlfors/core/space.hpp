#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "ahlfors/core/quasi_metric.hpp"
#include "ahlfors/core/spatial_index.hpp"
#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// A d-ball. Open by default, matching B(x,r) = {y : d(x,y) < r};
/// closed balls are needed for the Dirac closed form.
struct Ball {
    std::size_t center = 0;
    double radius = 0.0;
    bool closed = false;
};

/// Sorted distances from one point to every atom, with mass prefix sums.
/// Ball masses at any radius come out of a binary search; comparisons are
/// exact (no epsilon), ties excluded for open balls and included for closed.
struct DistanceProfile {
    std::vector<double> dist;         // ascending
    std::vector<double> mass_prefix;  // cumulative atom masses in dist order

    double mass_below(double r, bool closed = false) const {
        const auto it = closed ? std::upper_bound(dist.begin(), dist.end(), r)
                               : std::lower_bound(dist.begin(), dist.end(), r);
        const auto k = static_cast<std::size_t>(it - dist.begin());
        return k == 0 ? 0.0 : mass_prefix[k - 1];
    }

    std::size_t count_below(double r, bool closed = false) const {
        const auto it = closed ? std::upper_bound(dist.begin(), dist.end(), r)
                               : std::lower_bound(dist.begin(), dist.end(), r);
        return static_cast<std::size_t>(it - dist.begin());
    }
};

/// Finite atomic discretization of a quasi-metric measure space (X, d, mu):
/// atom coordinates (or an abstract distance table), strictly positive
/// masses, cached diameter and a spatial accelerator. Immutable after
/// construction; every query is read-only and safe to run concurrently.
class MetricMeasureSpace {
public:
    static MetricMeasureSpace euclidean(std::vector<double> coords, std::size_t dim,
                                        std::vector<double> masses) {
        require(dim >= 1, "space: dimension must be >= 1");
        require(!masses.empty(), "space: need at least one atom");
        require(coords.size() == masses.size() * dim, "space: coords/mass size mismatch");
        MetricMeasureSpace s;
        s.coords_ = std::move(coords);
        s.dim_ = dim;
        s.masses_ = std::move(masses);
        s.metric_ = QuasiMetric::euclidean();
        s.finish_init();
        s.index_ = UniformGridIndex(s.coords_, s.dim_);
        return s;
    }

    static MetricMeasureSpace from_table(QuasiMetric metric, std::vector<double> masses) {
        require(metric.kind() == QuasiMetric::Kind::table, "space: metric must be a table");
        require(metric.table_size() == masses.size(), "space: table/mass size mismatch");
        MetricMeasureSpace s;
        s.dim_ = 0;
        s.masses_ = std::move(masses);
        s.metric_ = std::move(metric);
        s.finish_init();
        return s;
    }

    std::size_t size() const { return masses_.size(); }
    std::size_t dim() const { return dim_; }
    bool is_euclidean() const { return metric_.kind() == QuasiMetric::Kind::euclidean; }
    const QuasiMetric& metric() const { return metric_; }
    double mass(std::size_t i) const { return masses_[i]; }
    std::span<const double> masses() const { return masses_; }
    double total_mass() const { return total_mass_; }
    double diameter() const { return diameter_; }

    std::span<const double> point(std::size_t i) const {
        return std::span<const double>(coords_).subspan(i * dim_, dim_);
    }

    double distance(std::size_t i, std::size_t j) const {
        if (is_euclidean()) return euclid(point(i), point(j));
        return metric_.table_at(i, j);
    }

    /// Distance from atom i to an arbitrary point of the shared Euclidean
    /// frame. Table metrics have no coordinates to measure against.
    double distance_to_point(std::size_t i, std::span<const double> p) const {
        require(is_euclidean(), "space: coordinate queries need a Euclidean metric");
        return euclid(point(i), p);
    }

    /// Exactly the atoms with d(center, y) < r (open) or <= r (closed),
    /// ascending index order.
    std::vector<std::size_t> ball_query(const Ball& ball) const {
        require(ball.radius > 0, "ball_query: radius must be positive");
        require(ball.center < size(), "ball_query: center index out of range");
        std::vector<std::size_t> out;
        if (is_euclidean() && !index_.empty()) {
            index_.candidates(point(ball.center), ball.radius, out);
            const auto keep = [&](std::size_t j) {
                const double d = distance(ball.center, j);
                return ball.closed ? d <= ball.radius : d < ball.radius;
            };
            out.erase(std::remove_if(out.begin(), out.end(),
                                     [&](std::size_t j) { return !keep(j); }),
                      out.end());
            std::sort(out.begin(), out.end());
            return out;
        }
        for (std::size_t j = 0; j < size(); ++j) {
            const double d = distance(ball.center, j);
            if (ball.closed ? d <= ball.radius : d < ball.radius) out.push_back(j);
        }
        return out;
    }

    double ball_mass(std::size_t center, double r, bool closed = false) const {
        double m = 0.0;
        for (std::size_t j = 0; j < size(); ++j) {
            const double d = distance(center, j);
            if (closed ? d <= r : d < r) m += masses_[j];
        }
        return m;
    }

    DistanceProfile profile(std::size_t i) const {
        require(i < size(), "profile: index out of range");
        std::vector<double> d(size());
        for (std::size_t j = 0; j < size(); ++j) d[j] = distance(i, j);
        return make_profile(std::move(d));
    }

    DistanceProfile profile_to(std::span<const double> p) const {
        require(is_euclidean(), "profile_to: needs a Euclidean metric");
        std::vector<double> d(size());
        for (std::size_t j = 0; j < size(); ++j) d[j] = euclid(point(j), p);
        return make_profile(std::move(d));
    }

    /// Margin between atom i and the support's bounding box, minimized over
    /// non-degenerate axes. +inf for table metrics (no coordinates). Used by
    /// the fit estimators to skip balls clipped by the support's extent.
    double interior_margin(std::size_t i) const {
        if (!is_euclidean()) return std::numeric_limits<double>::infinity();
        double m = std::numeric_limits<double>::infinity();
        const auto p = point(i);
        for (std::size_t a = 0; a < dim_; ++a) {
            if (bbox_hi_[a] - bbox_lo_[a] <= degenerate_extent_) continue;
            m = std::min(m, std::min(p[a] - bbox_lo_[a], bbox_hi_[a] - p[a]));
        }
        return m;
    }

    std::span<const double> bbox_lo() const { return bbox_lo_; }
    std::span<const double> bbox_hi() const { return bbox_hi_; }

private:
    static double euclid(std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double d = a[k] - b[k];
            s += d * d;
        }
        return std::sqrt(s);
    }

    DistanceProfile make_profile(std::vector<double> d) const {
        std::vector<std::size_t> order(size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        // ties broken by index so equal-distance accumulation order is
        // reproducible and matches measure profiles built on the same atoms
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return d[a] < d[b] || (d[a] == d[b] && a < b);
        });
        DistanceProfile p;
        p.dist.resize(size());
        p.mass_prefix.resize(size());
        double acc = 0.0;
        for (std::size_t k = 0; k < size(); ++k) {
            p.dist[k] = d[order[k]];
            acc += masses_[order[k]];
            p.mass_prefix[k] = acc;
        }
        return p;
    }

    void finish_init() {
        for (const double m : masses_) {
            require(m > 0 && std::isfinite(m), "space: masses must be strictly positive finite");
        }
        total_mass_ = std::accumulate(masses_.begin(), masses_.end(), 0.0);
        require(std::isfinite(total_mass_), "space: total mass must be finite");
        diameter_ = 0.0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                diameter_ = std::max(diameter_, distance(i, j));
        if (is_euclidean() && !masses_.empty()) {
            bbox_lo_.assign(dim_, std::numeric_limits<double>::infinity());
            bbox_hi_.assign(dim_, -std::numeric_limits<double>::infinity());
            for (std::size_t i = 0; i < size(); ++i) {
                const auto p = point(i);
                for (std::size_t a = 0; a < dim_; ++a) {
                    bbox_lo_[a] = std::min(bbox_lo_[a], p[a]);
                    bbox_hi_[a] = std::max(bbox_hi_[a], p[a]);
                }
            }
            degenerate_extent_ = 1e-12 * std::max(1.0, diameter_);
        }
    }

    std::vector<double> coords_;
    std::size_t dim_ = 0;
    std::vector<double> masses_;
    QuasiMetric metric_ = QuasiMetric::euclidean();
    double total_mass_ = 0.0;
    double diameter_ = 0.0;
    std::vector<double> bbox_lo_, bbox_hi_;
    double degenerate_extent_ = 0.0;
    UniformGridIndex index_;
};

using SpacePtr = std::shared_ptr<const MetricMeasureSpace>;

}  // namespace ahlfors
