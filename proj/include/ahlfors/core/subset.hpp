#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "ahlfors/core/space.hpp"
#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// Closed planar segment, for analytic set descriptors.
struct Segment {
    std::array<double, 2> a{0, 0};
    std::array<double, 2> b{0, 0};
};

inline double point_segment_distance(std::span<const double> p, const Segment& s) {
    const double vx = s.b[0] - s.a[0], vy = s.b[1] - s.a[1];
    const double wx = p[0] - s.a[0], wy = p[1] - s.a[1];
    const double vv = vx * vx + vy * vy;
    double t = vv > 0 ? (wx * vx + wy * vy) / vv : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = wx - t * vx, dy = wy - t * vy;
    return std::sqrt(dx * dx + dy * dy);
}

/// Reference to a closed set F: either a duplicate-free ascending index
/// list into a host space, or an analytic segment list evaluated exactly.
class SubsetRef {
public:
    static SubsetRef from_indices(SpacePtr host, std::vector<std::size_t> indices) {
        require(host != nullptr, "SubsetRef: null host space");
        require(!indices.empty(), "SubsetRef: empty index set");
        std::sort(indices.begin(), indices.end());
        require(std::adjacent_find(indices.begin(), indices.end()) == indices.end(),
                "SubsetRef: duplicate indices");
        require(indices.back() < host->size(), "SubsetRef: index out of range");
        SubsetRef f;
        f.host_ = std::move(host);
        f.data_ = std::move(indices);
        return f;
    }

    static SubsetRef from_segments(std::vector<Segment> segments) {
        require(!segments.empty(), "SubsetRef: empty segment list");
        SubsetRef f;
        f.data_ = std::move(segments);
        return f;
    }

    bool analytic() const { return std::holds_alternative<std::vector<Segment>>(data_); }
    const std::vector<std::size_t>& indices() const { return std::get<std::vector<std::size_t>>(data_); }
    const std::vector<Segment>& segments() const { return std::get<std::vector<Segment>>(data_); }
    const SpacePtr& host() const { return host_; }

    /// d(p, F) for a point of the shared Euclidean frame. Exact infimum for
    /// segment descriptors, minimum over atoms otherwise.
    double distance_to(std::span<const double> p) const {
        double best = std::numeric_limits<double>::infinity();
        if (analytic()) {
            require(p.size() >= 2, "SubsetRef: segment descriptors live in the plane");
            for (const auto& s : segments()) best = std::min(best, point_segment_distance(p, s));
            return best;
        }
        require(host_->is_euclidean(), "SubsetRef: coordinate query on a table-metric host");
        for (const std::size_t j : indices())
            best = std::min(best, euclid(host_->point(j), p));
        return best;
    }

    /// d(x_i, F) for an atom of `space`. Works for table metrics when the
    /// subset is hosted on the same space.
    double distance_to_atom(const MetricMeasureSpace& space, std::size_t i) const {
        if (analytic() || host_.get() != &space) {
            require(space.is_euclidean(),
                    "SubsetRef: a foreign descriptor needs a shared Euclidean frame");
            return distance_to(space.point(i));
        }
        double best = std::numeric_limits<double>::infinity();
        for (const std::size_t j : indices()) best = std::min(best, space.distance(i, j));
        return best;
    }

    /// Diameter of the descriptor (segment endpoints, or hosted atoms).
    double diameter() const {
        if (!analytic()) {
            double d = 0.0;
            const auto& idx = indices();
            for (std::size_t i = 0; i < idx.size(); ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j)
                    d = std::max(d, host_->distance(idx[i], idx[j]));
            return d;
        }
        std::vector<std::array<double, 2>> pts;
        for (const auto& s : segments()) {
            pts.push_back(s.a);
            pts.push_back(s.b);
        }
        double d = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                d = std::max(d, std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]));
        return d;
    }

private:
    static double euclid(std::span<const double> a, std::span<const double> b) {
        double s = 0.0;
        for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
            const double d = a[k] - b[k];
            s += d * d;
        }
        return std::sqrt(s);
    }

    SpacePtr host_;
    std::variant<std::vector<std::size_t>, std::vector<Segment>> data_;
};

inline double distance_to_set(const MetricMeasureSpace& space, std::size_t atom,
                              const SubsetRef& f) {
    return f.distance_to_atom(space, atom);
}

}  // namespace ahlfors
