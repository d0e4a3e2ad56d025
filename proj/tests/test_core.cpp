#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "ahlfors/core/measure.hpp"
#include "ahlfors/core/net.hpp"
#include "ahlfors/core/quasi_metric.hpp"
#include "ahlfors/core/space.hpp"
#include "ahlfors/core/subset.hpp"
#include "ahlfors/fractals/generate.hpp"
#include "ahlfors/util/rng.hpp"
#include "oracles.hpp"

using namespace ahlfors;

TEST_CASE("ball_query on the decimal grid") {
    auto s = oracles::decimal_grid();

    SECTION("radius below the minimum gap picks the center alone") {
        const auto b = s->ball_query(Ball{0, 0.05, false});
        REQUIRE(b == std::vector<std::size_t>{0});
    }
    SECTION("radius beyond the diameter picks everything") {
        const auto b = s->ball_query(Ball{0, 10.0, false});
        REQUIRE(b.size() == 10);
        for (std::size_t i = 0; i < 10; ++i) REQUIRE(b[i] == i);
    }
    SECTION("open ball around 0.5 with r = 0.25") {
        // brute-force distance scan gives atoms {0.3, 0.4, 0.5, 0.6, 0.7}
        const auto b = s->ball_query(Ball{5, 0.25, false});
        REQUIRE(b == std::vector<std::size_t>{3, 4, 5, 6, 7});
    }
    SECTION("invalid center rejected") {
        REQUIRE_THROWS_AS(s->ball_query(Ball{42, 0.1, false}), Error);
        REQUIRE_THROWS_AS(s->ball_query(Ball{0, 0.0, false}), Error);
    }
}

TEST_CASE("ball_query equals a linear scan on gasket atoms") {
    const auto g = generate(FractalSpec{SierpinskiGasket{5}, {}});
    CounterRng rng(7);
    for (std::size_t t = 0; t < 200; ++t) {
        const std::size_t c = rng.pick(0, t, g.space->size());
        const double r = rng.log_uniform(1, t, 1e-3, 1.2);
        const bool closed = t % 2 == 0;
        REQUIRE(g.space->ball_query(Ball{c, r, closed}) ==
                oracles::brute_ball(*g.space, c, r, closed));
    }
}

TEST_CASE("spatial index consistency on larger instances") {
    // gasket level 7 (2187 atoms) and a 64x64 grid (4096 atoms)
    const auto g = generate(FractalSpec{SierpinskiGasket{7}, {}});
    const auto q = generate(FractalSpec{UnitSquareGrid{64}, {}});
    CounterRng rng(19);
    for (std::size_t t = 0; t < 60; ++t) {
        for (const auto* s : {g.space.get(), q.space.get()}) {
            const std::size_t c = rng.pick(0, t, s->size());
            const double r = rng.log_uniform(1, t, 5e-3, 1.5);
            REQUIRE(s->ball_query(Ball{c, r, false}) == oracles::brute_ball(*s, c, r, false));
        }
    }
}

TEST_CASE("ball monotonicity in the radius") {
    const auto g = generate(FractalSpec{SierpinskiGasket{4}, {}});
    CounterRng rng(3);
    for (std::size_t t = 0; t < 50; ++t) {
        const std::size_t c = rng.pick(0, t, g.space->size());
        const double r1 = rng.log_uniform(1, t, 1e-3, 0.5);
        const double r2 = r1 * (1.0 + rng.uniform(2, t));
        const auto b1 = g.space->ball_query(Ball{c, r1, false});
        const auto b2 = g.space->ball_query(Ball{c, r2, false});
        REQUIRE(std::includes(b2.begin(), b2.end(), b1.begin(), b1.end()));
    }
}

TEST_CASE("distance_to_set") {
    const auto [gasket, boundary] = gasket_boundary_pair(3);
    const auto& f = *boundary.analytic;

    SECTION("a point of F is at distance zero") {
        const Segment s = f.segments()[0];
        const double mid[2] = {(s.a[0] + s.b[0]) / 2, (s.a[1] + s.b[1]) / 2};
        REQUIRE(f.distance_to(mid) == Catch::Approx(0.0).margin(1e-15));
    }
    SECTION("centroid of the unit triangle sits at the inradius") {
        const double centroid[2] = {0.5, std::sqrt(3.0) / 6.0};
        REQUIRE(f.distance_to(centroid) == Catch::Approx(1.0 / (2.0 * std::sqrt(3.0))));
    }
    SECTION("orthogonal projection onto a horizontal segment") {
        const auto seg = SubsetRef::from_segments({Segment{{0, 0}, {1, 0}}});
        const double p[2] = {0.0, 1.0};
        REQUIRE(seg.distance_to(p) == Catch::Approx(1.0));
    }
    SECTION("atom-set descriptor agrees with a manual minimum") {
        const auto sub = SubsetRef::from_indices(gasket.space, {0, 5, 11});
        for (std::size_t i : {2u, 7u, 20u}) {
            double want = std::numeric_limits<double>::infinity();
            for (std::size_t j : {0u, 5u, 11u}) want = std::min(want, gasket.space->distance(i, j));
            REQUIRE(distance_to_set(*gasket.space, i, sub) == Catch::Approx(want));
        }
    }
    SECTION("empty subset rejected") {
        REQUIRE_THROWS_AS(SubsetRef::from_indices(gasket.space, {}), Error);
    }
}

TEST_CASE("greedy_net") {
    auto s = oracles::decimal_grid();

    SECTION("r equal to the spacing keeps the whole grid") {
        // exact-spacing version of the grid (binary-representable gap), since
        // r = h sits exactly on realized distances and comparisons are exact
        std::vector<double> coords(10), masses(10, 1.0);
        for (std::size_t i = 0; i < 10; ++i) coords[i] = 0.125 * double(i);
        const auto exact = MetricMeasureSpace::euclidean(coords, 1, masses);
        REQUIRE(greedy_net(exact, 0.125).size() == 10);
    }
    SECTION("r beyond the diameter keeps only atom 0") {
        REQUIRE(greedy_net(*s, 10.0) == std::vector<std::size_t>{0});
    }
    SECTION("r = 0.25 gives {0, 0.3, 0.6, 0.9}") {
        REQUIRE(greedy_net(*s, 0.25) == std::vector<std::size_t>{0, 3, 6, 9});
    }
}

TEST_CASE("greedy_net is r-disperse and r-dense on the gasket") {
    const auto g = generate(FractalSpec{SierpinskiGasket{5}, {}});
    for (const double r : {0.03, 0.1, 0.37}) {
        const auto net = greedy_net(*g.space, r);
        for (std::size_t a = 0; a < net.size(); ++a)
            for (std::size_t b = a + 1; b < net.size(); ++b)
                REQUIRE(g.space->distance(net[a], net[b]) >= r);
        for (std::size_t i = 0; i < g.space->size(); ++i) {
            double dmin = std::numeric_limits<double>::infinity();
            for (const std::size_t u : net) dmin = std::min(dmin, g.space->distance(i, u));
            REQUIRE(dmin < r);
        }
    }
}

TEST_CASE("metric_dimension_probe") {
    SECTION("single atom") {
        auto s = std::make_shared<const MetricMeasureSpace>(
            MetricMeasureSpace::euclidean({0.0, 0.0}, 2, {1.0}));
        const double radii[1] = {0.5};
        REQUIRE(metric_dimension_probe(*s, radii) == 1);
    }
    SECTION("1D grid at r equal to the spacing: a 2r-ball holds 3 net points") {
        auto s = oracles::decimal_grid();
        const double radii[1] = {0.1};
        REQUIRE(metric_dimension_probe(*s, radii) == 3);
    }
    SECTION("gasket level 6 probe is finite and level-stable") {
        const auto g6 = generate(FractalSpec{SierpinskiGasket{6}, {}});
        const double radii[2] = {1.0 / 8.0, 1.0 / 16.0};
        const auto n6 = metric_dimension_probe(*g6.space, radii);
        const auto g5 = generate(FractalSpec{SierpinskiGasket{5}, {}});
        const auto n5 = metric_dimension_probe(*g5.space, radii);
        // regression values recorded from the first run
        REQUIRE(n5 == 9);
        REQUIRE(n6 == 10);
    }
}

TEST_CASE("table metrics validate the declared K on every sampled triple") {
    SECTION("a valid snowflake-style table passes") {
        // d(x,y)^(1/2) of the decimal grid: quasi-metric with K = 1 after
        // the concave distortion (subadditive), table kind exercises the
        // exhaustive small-n validation
        const std::size_t n = 8;
        std::vector<double> tab(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                tab[i * n + j] = std::sqrt(std::abs(double(i) - double(j)) / 10.0);
        auto m = QuasiMetric::from_table(tab, n, 1.0);
        auto s = MetricMeasureSpace::from_table(std::move(m), std::vector<double>(n, 1.0));
        REQUIRE(s.diameter() == Catch::Approx(std::sqrt(0.7)));
        const auto b = s.ball_query(Ball{0, 0.5, false});
        REQUIRE(b == std::vector<std::size_t>{0, 1, 2});  // sqrt(0.2) < 0.5 <= sqrt(0.3)
    }
    SECTION("asymmetric or zero off-diagonal tables are rejected") {
        std::vector<double> bad{0, 1, 2, 0};
        REQUIRE_THROWS_AS(QuasiMetric::from_table(bad, 2, 1.0), Error);
        std::vector<double> zeros{0, 0, 0, 0};
        REQUIRE_THROWS_AS(QuasiMetric::from_table(zeros, 2, 1.0), Error);
    }
    SECTION("declared K below the truth is rejected") {
        // three points on a line: d(0,2)=2 but with a bent middle entry
        std::vector<double> tab{0, 1, 3, 1, 0, 1, 3, 1, 0};
        REQUIRE_THROWS_AS(QuasiMetric::from_table(tab, 3, 1.0), Error);
        REQUIRE_NOTHROW(QuasiMetric::from_table(tab, 3, 1.5));
    }
}

TEST_CASE("triangle inequality holds on random triples of generated spaces") {
    const auto g = generate(FractalSpec{SierpinskiGasket{5}, {}});
    const double k = g.space->metric().triangle_constant();
    CounterRng rng(11);
    for (std::size_t t = 0; t < 10000; ++t) {
        const std::size_t x = rng.pick(0, t, g.space->size());
        const std::size_t y = rng.pick(1, t, g.space->size());
        const std::size_t z = rng.pick(2, t, g.space->size());
        REQUIRE(g.space->distance(x, y) <=
                k * (g.space->distance(x, z) + g.space->distance(z, y)) + 1e-12);
    }
}

TEST_CASE("diameter matches the brute-force pairwise maximum") {
    const auto g = generate(FractalSpec{SierpinskiGasket{4}, {}});
    double want = 0.0;
    for (std::size_t i = 0; i < g.space->size(); ++i)
        for (std::size_t j = i + 1; j < g.space->size(); ++j)
            want = std::max(want, g.space->distance(i, j));
    REQUIRE(g.space->diameter() == want);
}

TEST_CASE("spaces reject invalid masses") {
    REQUIRE_THROWS_AS(MetricMeasureSpace::euclidean({0.0, 1.0}, 1, {1.0, 0.0}), Error);
    REQUIRE_THROWS_AS(MetricMeasureSpace::euclidean({0.0, 1.0}, 1, {1.0, -2.0}), Error);
}

TEST_CASE("distance profiles agree with direct ball masses") {
    const auto g = generate(FractalSpec{SierpinskiGasket{4}, {}});
    const auto prof = g.space->profile(13);
    for (const double r : {0.01, 0.1, 0.3, 0.9}) {
        REQUIRE(prof.mass_below(r, false) ==
                Catch::Approx(g.space->ball_mass(13, r, false)).epsilon(1e-13));
        REQUIRE(prof.mass_below(r, true) ==
                Catch::Approx(g.space->ball_mass(13, r, true)).epsilon(1e-13));
    }
}
