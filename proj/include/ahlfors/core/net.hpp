#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ahlfors/core/space.hpp"
#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// Greedy maximal r-disperse set, scanning atoms in ascending index order.
/// The result is r-disperse (pairwise distances >= r) and r-dense (every
/// atom strictly within r of a selected one), i.e. an r-net. Any maximal
/// disperse set would do; the ascending scan pins one reproducible choice.
inline std::vector<std::size_t> greedy_net(const MetricMeasureSpace& space, double r) {
    require(r > 0, "greedy_net: r must be positive");
    std::vector<std::size_t> net;
    for (std::size_t i = 0; i < space.size(); ++i) {
        bool near = false;
        for (const std::size_t u : net) {
            if (space.distance(i, u) < r) {
                near = true;
                break;
            }
        }
        if (!near) net.push_back(i);
    }
    return net;
}

/// Same, restricted to a sublist of atoms (net in a subset F).
inline std::vector<std::size_t> greedy_net(const MetricMeasureSpace& space,
                                           std::span<const std::size_t> atoms, double r) {
    require(r > 0, "greedy_net: r must be positive");
    std::vector<std::size_t> net;
    for (const std::size_t i : atoms) {
        bool near = false;
        for (const std::size_t u : net) {
            if (space.distance(i, u) < r) {
                near = true;
                break;
            }
        }
        if (!near) net.push_back(i);
    }
    return net;
}

/// Probe for the finite metric (Assouad) dimension constant: for each r,
/// build an r-disperse set and count its points inside open balls of radius
/// 2r around every atom; returns the worst count over all radii.
inline std::size_t metric_dimension_probe(const MetricMeasureSpace& space,
                                          std::span<const double> radii) {
    require(!radii.empty(), "metric_dimension_probe: need at least one radius");
    std::size_t worst = 0;
    for (const double r : radii) {
        require(r > 0, "metric_dimension_probe: radii must be positive");
        const auto net = greedy_net(space, r);
        for (std::size_t x = 0; x < space.size(); ++x) {
            std::size_t count = 0;
            for (const std::size_t u : net) {
                if (space.distance(x, u) < 2 * r) ++count;
            }
            worst = std::max(worst, count);
        }
    }
    return worst;
}

}  // namespace ahlfors
