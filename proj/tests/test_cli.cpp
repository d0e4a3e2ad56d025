#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ahlfors/cli/config.hpp"
#include "ahlfors/cli/experiment.hpp"
#include "ahlfors/io/csv.hpp"

using namespace ahlfors;

namespace {
std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("ahlfors_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}
}  // namespace

TEST_CASE("point cloud round trip") {
    const auto dir = temp_dir("csv");
    const auto g = generate(FractalSpec{SierpinskiGasket{3}, {}});
    write_point_cloud((dir / "pts.csv").string(), *g.space);
    const auto back = read_point_cloud((dir / "pts.csv").string());
    REQUIRE(back.size() == g.space->size());
    REQUIRE(back.dim() == 2);
    for (std::size_t i = 0; i < back.size(); ++i) {
        REQUIRE(back.point(i)[0] == g.space->point(i)[0]);  // shortest round trip is exact
        REQUIRE(back.point(i)[1] == g.space->point(i)[1]);
        REQUIRE(back.mass(i) == g.space->mass(i));
    }
}

TEST_CASE("readers reject bad input") {
    const auto dir = temp_dir("badcsv");
    {
        std::ofstream out(dir / "bad.csv");
        out << "x1,x2,mass\n0,0,-1\n";
    }
    REQUIRE_THROWS_AS(read_point_cloud((dir / "bad.csv").string()), Error);
    {
        std::ofstream out(dir / "nan.csv");
        out << "x1,mass\nnan,1\n";
    }
    REQUIRE_THROWS_AS(read_point_cloud((dir / "nan.csv").string()), Error);
    {
        std::ofstream out(dir / "idx.csv");
        out << "index\n3\n99\n";
    }
    REQUIRE_THROWS_AS(read_subset_indices((dir / "idx.csv").string(), 10), Error);
}

TEST_CASE("config parsing, overrides and validation") {
    const auto dir = temp_dir("config");
    {
        std::ofstream out(dir / "cfg.json");
        out << R"({"fractal": {"variant": "sierpinski-gasket", "levels": [3,4]},
                   "p": [1.0], "gamma": [0.5],
                   "sampler": {"balls": 40, "seed": 7},
                   "thresholds": {"stable": 1.4, "divergent": 2.5},
                   "declared": {"alpha": null, "s": 1.0},
                   "out": "somewhere"})";
    }
    auto cfg = ExperimentConfig::from_file((dir / "cfg.json").string());
    REQUIRE(cfg.levels == std::vector<int>{3, 4});
    REQUIRE(cfg.ball_count == 40);
    REQUIRE(cfg.seed == 7);
    REQUIRE(cfg.stable_threshold == 1.4);
    REQUIRE_FALSE(cfg.declared_alpha.has_value());
    REQUIRE(cfg.declared_s.has_value());

    SECTION("descending levels rejected") {
        cfg.levels = {5, 4};
        REQUIRE_THROWS_AS(cfg.validate(), Error);
    }
    SECTION("thresholds must exceed 1") {
        cfg.levels = {3, 4};
        cfg.stable_threshold = 0.9;
        REQUIRE_THROWS_AS(cfg.validate(), Error);
    }
    SECTION("hash is stable and sensitive") {
        const auto h1 = config_hash(cfg);
        REQUIRE(h1 == config_hash(cfg));
        auto cfg2 = cfg;
        cfg2.seed = 8;
        REQUIRE(h1 != config_hash(cfg2));
    }
}

TEST_CASE("experiment at desk scale: stable verdict and byte-stable reports") {
    ExperimentConfig cfg;
    cfg.levels = {3, 4};
    cfg.gamma_grid = {0.0};  // beta = 0: weight 1, supremum 1, growth 1
    cfg.p_grid = {1.0};
    cfg.ball_count = 30;
    cfg.declared_alpha = std::log(3.0) / std::log(2.0);
    cfg.declared_s = 1.0;
    const auto rep = run_experiment(cfg);
    REQUIRE(rep.rows.size() == 2);
    for (const auto& r : rep.rows) REQUIRE(r.supremum == 1.0);
    REQUIRE(rep.verdicts.size() == 1);
    REQUIRE(rep.verdicts[0].verdict == Verdict::stable);
    REQUIRE(rep.verdicts[0].in_range);
    REQUIRE(rep.pass);

    const auto d1 = temp_dir("rep1");
    const auto d2 = temp_dir("rep2");
    emit_report(rep, d1.string());
    const auto rep2 = run_experiment(cfg);
    emit_report(rep2, d2.string());
    for (const auto* name : {"sweep.csv", "report.json", "summary.txt"}) {
        REQUIRE(slurp((d1 / name).string()) == slurp((d2 / name).string()));
    }
}

TEST_CASE("verdict soundness: recomputable from emitted suprema") {
    ExperimentConfig cfg;
    cfg.levels = {3, 4};
    cfg.gamma_grid = {0.5};
    cfg.ball_count = 30;
    cfg.declared_alpha = std::log(3.0) / std::log(2.0);
    cfg.declared_s = 1.0;
    const auto rep = run_experiment(cfg);
    REQUIRE(rep.verdicts.size() == 1);
    const auto& v = rep.verdicts[0];
    std::vector<double> sups;
    for (const auto& r : rep.rows) sups.push_back(r.supremum);
    REQUIRE(v.growth.size() == 1);
    REQUIRE(v.growth[0] == Catch::Approx(sups[1] / sups[0]));
    const auto want = v.growth[0] < cfg.stable_threshold
                          ? Verdict::stable
                          : (v.growth[0] >= cfg.divergent_threshold ? Verdict::divergent
                                                                    : Verdict::inconclusive);
    REQUIRE(v.verdict == want);
}

TEST_CASE("empty sweep emits a header-only CSV") {
    ExperimentReport rep;
    rep.config = ExperimentConfig{};
    rep.hash = config_hash(rep.config);
    const auto dir = temp_dir("empty");
    emit_report(rep, dir.string());
    const auto text = slurp((dir / "sweep.csv").string());
    REQUIRE(text == "level,p,gamma,beta,supremum,q50,q90,q99,balls\n");
}
