#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <span>
#include <vector>

#include "ahlfors/core/space.hpp"
#include "ahlfors/core/subset.hpp"
#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// A non-negative Borel measure nu carried by atoms of a host space.
/// The host may be the ambient space itself (nu absolutely continuous at
/// the atomic level) or a companion space in the same Euclidean frame
/// (e.g. a lower-dimensional set F with its own discretization).
class DiscreteMeasure {
public:
    static DiscreteMeasure full(SpacePtr host) {
        require(host != nullptr, "DiscreteMeasure: null host");
        DiscreteMeasure nu;
        nu.host_ = std::move(host);
        nu.support_.resize(nu.host_->size());
        std::iota(nu.support_.begin(), nu.support_.end(), std::size_t{0});
        nu.masses_.assign(nu.host_->masses().begin(), nu.host_->masses().end());
        nu.total_ = nu.host_->total_mass();
        return nu;
    }

    static DiscreteMeasure on(SpacePtr host, std::vector<std::size_t> support,
                              std::vector<double> masses) {
        require(host != nullptr, "DiscreteMeasure: null host");
        require(support.size() == masses.size(), "DiscreteMeasure: support/mass size mismatch");
        require(!support.empty(), "DiscreteMeasure: empty support");
        require(std::is_sorted(support.begin(), support.end()) &&
                    std::adjacent_find(support.begin(), support.end()) == support.end(),
                "DiscreteMeasure: support must be sorted and duplicate-free");
        require(support.back() < host->size(), "DiscreteMeasure: support index out of range");
        for (const double m : masses)
            require(m > 0 && std::isfinite(m), "DiscreteMeasure: masses must be positive finite");
        DiscreteMeasure nu;
        nu.host_ = std::move(host);
        nu.support_ = std::move(support);
        nu.masses_ = std::move(masses);
        nu.total_ = std::accumulate(nu.masses_.begin(), nu.masses_.end(), 0.0);
        return nu;
    }

    const SpacePtr& host() const { return host_; }
    std::size_t size() const { return support_.size(); }
    const std::vector<std::size_t>& support() const { return support_; }
    std::size_t atom(std::size_t k) const { return support_[k]; }
    double mass(std::size_t k) const { return masses_[k]; }
    std::span<const double> masses() const { return masses_; }
    double total_mass() const { return total_; }

    DiscreteMeasure scaled(double c) const {
        require(c > 0, "DiscreteMeasure: scale must be positive");
        DiscreteMeasure nu = *this;
        for (double& m : nu.masses_) m *= c;
        nu.total_ = total_ * c;
        return nu;
    }

    bool supported_on(std::size_t host_atom) const {
        return std::binary_search(support_.begin(), support_.end(), host_atom);
    }

    /// nu restricted to the closed ball around a point of the shared frame.
    /// May come back empty (total mass zero, empty support).
    DiscreteMeasure restrict_to_closed_ball(std::span<const double> center, double r) const {
        DiscreteMeasure nu;
        nu.host_ = host_;
        for (std::size_t k = 0; k < support_.size(); ++k) {
            if (host_->distance_to_point(support_[k], center) <= r) {
                nu.support_.push_back(support_[k]);
                nu.masses_.push_back(masses_[k]);
            }
        }
        nu.total_ = std::accumulate(nu.masses_.begin(), nu.masses_.end(), 0.0);
        return nu;
    }

    bool empty() const { return support_.empty(); }

    /// Sorted distance profile from an arbitrary point to the support.
    DistanceProfile profile_from(std::span<const double> p) const {
        std::vector<std::pair<double, double>> pairs(support_.size());
        for (std::size_t k = 0; k < support_.size(); ++k)
            pairs[k] = {host_->distance_to_point(support_[k], p), masses_[k]};
        return profile_from_pairs(std::move(pairs));
    }

    /// Sorted distance profile from an atom of `space` (table-metric aware
    /// when the host is that same space).
    DistanceProfile profile_from_atom(const MetricMeasureSpace& space, std::size_t i) const {
        std::vector<std::pair<double, double>> pairs(support_.size());
        if (host_.get() == &space) {
            for (std::size_t k = 0; k < support_.size(); ++k)
                pairs[k] = {space.distance(i, support_[k]), masses_[k]};
        } else {
            require(space.is_euclidean(),
                    "DiscreteMeasure: a foreign host needs a shared Euclidean frame");
            const auto p = space.point(i);
            for (std::size_t k = 0; k < support_.size(); ++k)
                pairs[k] = {host_->distance_to_point(support_[k], p), masses_[k]};
        }
        return profile_from_pairs(std::move(pairs));
    }

    SubsetRef as_subset() const { return SubsetRef::from_indices(host_, support_); }

private:
    static DistanceProfile profile_from_pairs(std::vector<std::pair<double, double>> pairs) {
        // stable: pairs arrive in ascending support order, so ties keep it
        std::stable_sort(pairs.begin(), pairs.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        DistanceProfile p;
        p.dist.resize(pairs.size());
        p.mass_prefix.resize(pairs.size());
        double acc = 0.0;
        for (std::size_t k = 0; k < pairs.size(); ++k) {
            p.dist[k] = pairs[k].first;
            acc += pairs[k].second;
            p.mass_prefix[k] = acc;
        }
        return p;
    }

    SpacePtr host_;
    std::vector<std::size_t> support_;
    std::vector<double> masses_;
    double total_ = 0.0;
};

}  // namespace ahlfors
