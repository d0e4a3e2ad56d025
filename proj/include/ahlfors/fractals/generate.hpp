#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ahlfors/core/measure.hpp"
#include "ahlfors/core/space.hpp"
#include "ahlfors/core/subset.hpp"
#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// Similarity transform applied to a generated member (2D frame).
struct Placement {
    double scale = 1.0;
    double rotation = 0.0;  // radians
    double tx = 0.0;
    double ty = 0.0;

    std::array<double, 2> apply(double x, double y) const {
        const double c = std::cos(rotation), s = std::sin(rotation);
        return {scale * (c * x - s * y) + tx, scale * (s * x + c * y) + ty};
    }
};

struct SierpinskiGasket {
    int level = 1;
};
struct TriangleBoundary {
    int segments_per_side = 1;
};
struct CantorMiddleThirds {
    int level = 1;
};
struct UnitSquareGrid {
    int n = 2;
};
struct UnitIntervalGrid {
    int n = 2;
};
struct FinitePointSet {
    std::vector<double> coords;  // flattened
    std::size_t dim = 2;
};
struct FractalSpec;
struct DisjointUnion {
    std::vector<FractalSpec> members;
};

struct FractalSpec {
    std::variant<SierpinskiGasket, TriangleBoundary, CantorMiddleThirds, UnitSquareGrid,
                 UnitIntervalGrid, FinitePointSet, DisjointUnion>
        variant;
    Placement placement;
};

/// A generated example space: atoms with their measure, the advertised
/// Ahlfors exponent, and the resolution scale r0 (one cell diameter) below
/// which the discretization is atomic rather than Ahlfors. Estimator radius
/// windows start at 2*r0.
struct GeneratedSet {
    SpacePtr space;
    DiscreteMeasure measure;
    std::optional<SubsetRef> analytic;  // exact descriptor when one exists
    double advertised_exponent = 0.0;
    double local_radius = 0.0;  // r0
    double min_gap = std::numeric_limits<double>::infinity();  // Delta (unions)
    std::vector<GeneratedSet> members;                         // union components, placed

    /// Valid radius window for estimators on this set.
    double window_min() const { return 2.0 * local_radius; }
    double window_max() const { return space->diameter(); }
};

namespace detail {

constexpr double kSqrt3 = 1.7320508075688772;

inline std::array<std::array<double, 2>, 3> unit_triangle() {
    return {{{0.0, 0.0}, {1.0, 0.0}, {0.5, kSqrt3 / 2.0}}};
}

inline GeneratedSet finish(std::vector<double> coords, std::size_t dim, std::vector<double> masses,
                           double exponent, double r0) {
    auto space = std::make_shared<const MetricMeasureSpace>(
        MetricMeasureSpace::euclidean(std::move(coords), dim, std::move(masses)));
    GeneratedSet g;
    g.space = space;
    g.measure = DiscreteMeasure::full(space);
    g.advertised_exponent = exponent;
    g.local_radius = r0;
    return g;
}

inline void check_cap(std::size_t atoms, std::size_t cap) {
    require(atoms <= cap, "generate: atom count " + std::to_string(atoms) +
                              " exceeds the cap " + std::to_string(cap));
}

}  // namespace detail

/// Build the named example space. Atoms sit at cell barycenters (strictly
/// interior), so power-distance weights stay finite and nonzero at sample
/// points; cell masses follow the self-similar splitting.
inline GeneratedSet generate(const FractalSpec& spec, std::size_t atom_cap = 20000);

namespace detail {

inline GeneratedSet make_gasket(int level, std::size_t cap) {
    require(level >= 1, "SierpinskiGasket: level must be >= 1");
    double atoms = std::pow(3.0, level);
    check_cap(static_cast<std::size_t>(atoms), cap);
    using Tri = std::array<std::array<double, 2>, 3>;
    std::vector<Tri> tris{unit_triangle()};
    for (int l = 0; l < level; ++l) {
        std::vector<Tri> next;
        next.reserve(tris.size() * 3);
        for (const auto& t : tris) {
            const auto& [a, b, c] = t;
            const std::array<double, 2> ab{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
            const std::array<double, 2> ac{(a[0] + c[0]) / 2, (a[1] + c[1]) / 2};
            const std::array<double, 2> bc{(b[0] + c[0]) / 2, (b[1] + c[1]) / 2};
            next.push_back({a, ab, ac});
            next.push_back({ab, b, bc});
            next.push_back({ac, bc, c});
        }
        tris = std::move(next);
    }
    std::vector<double> coords;
    coords.reserve(tris.size() * 2);
    for (const auto& t : tris) {
        coords.push_back((t[0][0] + t[1][0] + t[2][0]) / 3.0);
        coords.push_back((t[0][1] + t[1][1] + t[2][1]) / 3.0);
    }
    std::vector<double> masses(tris.size(), std::pow(3.0, -level));
    const double alpha = std::log(3.0) / std::log(2.0);
    return finish(std::move(coords), 2, std::move(masses), alpha, std::pow(2.0, -level));
}

inline GeneratedSet make_triangle_boundary(int m, std::size_t cap) {
    require(m >= 1, "TriangleBoundary: segments per side must be >= 1");
    check_cap(static_cast<std::size_t>(3) * m, cap);
    const auto tri = unit_triangle();
    std::vector<double> coords;
    std::vector<Segment> segs;
    for (int side = 0; side < 3; ++side) {
        const auto& p = tri[side];
        const auto& q = tri[(side + 1) % 3];
        segs.push_back(Segment{{p[0], p[1]}, {q[0], q[1]}});
        for (int j = 0; j < m; ++j) {
            const double t = (j + 0.5) / m;
            coords.push_back(p[0] + t * (q[0] - p[0]));
            coords.push_back(p[1] + t * (q[1] - p[1]));
        }
    }
    // side length 1: mass per segment midpoint = perimeter / (3m)
    std::vector<double> masses(static_cast<std::size_t>(3) * m, 1.0 / m);
    GeneratedSet g = finish(std::move(coords), 2, std::move(masses), 1.0, 1.0 / m);
    g.analytic = SubsetRef::from_segments(std::move(segs));
    return g;
}

inline GeneratedSet make_cantor(int level, std::size_t cap) {
    require(level >= 1, "CantorMiddleThirds: level must be >= 1");
    check_cap(static_cast<std::size_t>(1) << level, cap);
    std::vector<double> lefts{0.0};
    double len = 1.0;
    for (int l = 0; l < level; ++l) {
        len /= 3.0;
        std::vector<double> next;
        next.reserve(lefts.size() * 2);
        for (const double x : lefts) {
            next.push_back(x);
            next.push_back(x + 2.0 * len);
        }
        lefts = std::move(next);
    }
    std::vector<double> coords;
    coords.reserve(lefts.size());
    for (const double x : lefts) coords.push_back(x + len / 2.0);  // interval midpoints
    std::vector<double> masses(lefts.size(), std::pow(2.0, -level));
    const double s = std::log(2.0) / std::log(3.0);
    return finish(std::move(coords), 1, std::move(masses), s, len);
}

inline GeneratedSet make_square_grid(int n, std::size_t cap) {
    require(n >= 2, "UnitSquareGrid: n must be >= 2");
    check_cap(static_cast<std::size_t>(n) * n, cap);
    const double h = 1.0 / (n - 1);
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(n) * n * 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            coords.push_back(j * h);
            coords.push_back(i * h);
        }
    std::vector<double> masses(static_cast<std::size_t>(n) * n,
                               1.0 / (static_cast<double>(n) * n));
    return finish(std::move(coords), 2, std::move(masses), 2.0, h * std::sqrt(2.0));
}

inline GeneratedSet make_interval_grid(int n, std::size_t cap) {
    require(n >= 2, "UnitIntervalGrid: n must be >= 2");
    check_cap(static_cast<std::size_t>(n), cap);
    const double h = 1.0 / (n - 1);
    std::vector<double> coords(n);
    for (int i = 0; i < n; ++i) coords[i] = i * h;
    std::vector<double> masses(n, 1.0 / n);
    return finish(std::move(coords), 1, std::move(masses), 1.0, h);
}

inline GeneratedSet make_point_set(const FinitePointSet& ps, std::size_t cap) {
    require(ps.dim >= 1, "FinitePointSet: dimension must be >= 1");
    require(!ps.coords.empty() && ps.coords.size() % ps.dim == 0,
            "FinitePointSet: coords size must be a positive multiple of dim");
    const std::size_t n = ps.coords.size() / ps.dim;
    check_cap(n, cap);
    std::vector<double> masses(n, 1.0);
    GeneratedSet g = finish(std::vector<double>(ps.coords), ps.dim, std::move(masses), 0.0, 0.0);
    // resolution scale: smallest positive pairwise gap
    double gap = 0.0;
    if (n >= 2) {
        gap = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                gap = std::min(gap, g.space->distance(i, j));
    }
    g.local_radius = gap;
    return g;
}

inline GeneratedSet apply_placement(GeneratedSet g, const Placement& pl, bool force_plane = false) {
    const bool identity =
        pl.scale == 1.0 && pl.rotation == 0.0 && pl.tx == 0.0 && pl.ty == 0.0;
    if (identity && (g.space->dim() >= 2 || !force_plane)) return g;
    require(pl.scale > 0, "placement: scale must be positive");
    const auto& old = *g.space;
    const std::size_t n = old.size();
    std::vector<double> coords(n * 2);
    for (std::size_t i = 0; i < n; ++i) {
        const auto p = old.point(i);
        const double y = old.dim() >= 2 ? p[1] : 0.0;  // promote 1D members to the plane
        const auto q = pl.apply(p[0], y);
        coords[2 * i] = q[0];
        coords[2 * i + 1] = q[1];
    }
    std::vector<double> masses(old.masses().begin(), old.masses().end());
    auto space = std::make_shared<const MetricMeasureSpace>(
        MetricMeasureSpace::euclidean(std::move(coords), 2, std::move(masses)));
    GeneratedSet out;
    out.space = space;
    out.measure = DiscreteMeasure::full(space);
    out.advertised_exponent = g.advertised_exponent;
    out.local_radius = g.local_radius * pl.scale;
    out.min_gap = g.min_gap;
    if (g.analytic && g.analytic->analytic()) {
        std::vector<Segment> segs;
        for (const auto& s : g.analytic->segments()) {
            const auto a = pl.apply(s.a[0], s.a[1]);
            const auto b = pl.apply(s.b[0], s.b[1]);
            segs.push_back(Segment{a, b});
        }
        out.analytic = SubsetRef::from_segments(std::move(segs));
    }
    return out;
}

inline GeneratedSet make_union(const DisjointUnion& u, std::size_t cap) {
    require(u.members.size() >= 1, "DisjointUnion: need at least one member");
    std::vector<GeneratedSet> placed;
    placed.reserve(u.members.size());
    std::size_t atoms = 0;
    for (const auto& mspec : u.members) {
        // generate() applies the member's placement; 1D members get promoted
        // to the plane by apply_placement on the way.
        GeneratedSet m = generate(mspec, cap);
        require(m.space->dim() <= 2, "DisjointUnion: members must live in the plane");
        if (m.space->dim() == 1)
            m = apply_placement(std::move(m), Placement{}, /*force_plane=*/true);
        atoms += m.space->size();
        placed.push_back(std::move(m));
    }
    check_cap(atoms, cap);

    // member gap Delta: minimum inter-member atom distance, must be > 0
    double delta = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a + 1 < placed.size(); ++a)
        for (std::size_t b = a + 1; b < placed.size(); ++b)
            for (std::size_t i = 0; i < placed[a].space->size(); ++i)
                for (std::size_t j = 0; j < placed[b].space->size(); ++j) {
                    double dd = 0.0;
                    const auto pi = placed[a].space->point(i);
                    const auto pj = placed[b].space->point(j);
                    for (std::size_t k = 0; k < 2; ++k) {
                        const double d = pi[k] - pj[k];
                        dd += d * d;
                    }
                    delta = std::min(delta, std::sqrt(dd));
                }
    if (placed.size() >= 2)
        require(delta > 0, "DisjointUnion: members overlap (gap Delta <= 0)");

    std::vector<double> coords;
    std::vector<double> masses;
    double exponent = 0.0;
    double r0 = 0.0;
    for (const auto& m : placed) {
        for (std::size_t i = 0; i < m.space->size(); ++i) {
            const auto p = m.space->point(i);
            coords.push_back(p[0]);
            coords.push_back(p[1]);
            masses.push_back(m.space->mass(i));
        }
        exponent = std::max(exponent, m.advertised_exponent);
        r0 = std::max(r0, m.local_radius);
    }
    GeneratedSet g = finish(std::move(coords), 2, std::move(masses), exponent, r0);
    g.min_gap = delta;
    g.members = std::move(placed);
    return g;
}

}  // namespace detail

inline GeneratedSet generate(const FractalSpec& spec, std::size_t atom_cap) {
    GeneratedSet g = std::visit(
        [&](const auto& v) -> GeneratedSet {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SierpinskiGasket>)
                return detail::make_gasket(v.level, atom_cap);
            else if constexpr (std::is_same_v<T, TriangleBoundary>)
                return detail::make_triangle_boundary(v.segments_per_side, atom_cap);
            else if constexpr (std::is_same_v<T, CantorMiddleThirds>)
                return detail::make_cantor(v.level, atom_cap);
            else if constexpr (std::is_same_v<T, UnitSquareGrid>)
                return detail::make_square_grid(v.n, atom_cap);
            else if constexpr (std::is_same_v<T, UnitIntervalGrid>)
                return detail::make_interval_grid(v.n, atom_cap);
            else if constexpr (std::is_same_v<T, FinitePointSet>)
                return detail::make_point_set(v, atom_cap);
            else
                return detail::make_union(v, atom_cap);
        },
        spec.variant);
    if (!std::holds_alternative<DisjointUnion>(spec.variant)) {
        g = detail::apply_placement(std::move(g), spec.placement);
    } else {
        auto members = std::move(g.members);
        const double delta = g.min_gap;
        g.members.clear();
        g = detail::apply_placement(std::move(g), spec.placement);
        g.min_gap = delta * spec.placement.scale;
        for (auto& m : members)
            g.members.push_back(detail::apply_placement(std::move(m), spec.placement));
    }
    return g;
}

/// The flagship pairing: the gasket as ambient space (mu, a normalized
/// approximation of the alpha-dimensional Hausdorff measure) and the
/// boundary of the same triangle as F with its length measure nu, one
/// coordinate frame for both. Boundary resolution matches the gasket cell
/// scale (2^level segments per side).
inline std::pair<GeneratedSet, GeneratedSet> gasket_boundary_pair(int level,
                                                                  std::size_t atom_cap = 20000) {
    require(level >= 2, "gasket_boundary_pair: level must be >= 2");
    FractalSpec gs{SierpinskiGasket{level}, {}};
    FractalSpec bs{TriangleBoundary{1 << level}, {}};
    return {generate(gs, atom_cap), generate(bs, atom_cap)};
}

}  // namespace ahlfors
