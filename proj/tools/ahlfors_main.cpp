// Command-line front end: generate example spaces, fit exponents, scan
// Hausdorff cover sums, evaluate maximal functions and run the A_p
// experiments. Exit codes: 0 success / all verdicts as predicted,
// 1 verdict failure, 2 usage or configuration error.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ahlfors/ahlfors.hpp"
#include "ahlfors/cli/config.hpp"
#include "ahlfors/cli/experiment.hpp"
#include "ahlfors/util/grids.hpp"
#include "ahlfors/util/parallel.hpp"

namespace {

using namespace ahlfors;

FractalSpec spec_from_flags(const std::string& variant, int level, int segments, int n) {
    FractalSpec s;
    if (variant == "gasket") {
        s.variant = SierpinskiGasket{level};
    } else if (variant == "boundary") {
        s.variant = TriangleBoundary{segments};
    } else if (variant == "cantor") {
        s.variant = CantorMiddleThirds{level};
    } else if (variant == "square") {
        s.variant = UnitSquareGrid{n};
    } else if (variant == "interval") {
        s.variant = UnitIntervalGrid{n};
    } else {
        throw Error("unknown variant '" + variant + "' (gasket|boundary|cantor|square|interval)");
    }
    return s;
}

std::string meta_json(const GeneratedSet& g, const std::string& variant, int level, int segments,
                      int n) {
    Json j;
    j["variant"] = variant;
    if (variant == "gasket" || variant == "cantor") j["level"] = level;
    if (variant == "boundary") j["segments_per_side"] = segments;
    if (variant == "square" || variant == "interval") j["n"] = n;
    j["atoms"] = g.space->size();
    j["dim"] = g.space->dim();
    j["advertised_exponent"] = g.advertised_exponent;
    j["local_radius"] = g.local_radius;
    j["diameter"] = g.space->diameter();
    j["total_mass"] = g.space->total_mass();
    if (std::isfinite(g.min_gap)) j["delta"] = g.min_gap;
    return j.dump(2) + "\n";
}

int cmd_generate(const std::string& variant, int level, int segments, int n,
                 const std::string& out_dir, std::size_t cap) {
    const auto g = generate(spec_from_flags(variant, level, segments, n), cap);
    std::filesystem::create_directories(out_dir);
    write_point_cloud(out_dir + "/points.csv", *g.space);
    std::ofstream meta(out_dir + "/meta.json", std::ios::binary);
    require(meta.good(), "generate: cannot write meta.json");
    meta << meta_json(g, variant, level, segments, n);
    std::cout << "wrote " << g.space->size() << " atoms to " << out_dir << "/points.csv\n";
    return 0;
}

SpacePtr load_space(const std::string& path) {
    return std::make_shared<const MetricMeasureSpace>(read_point_cloud(path));
}

int cmd_ahlfors_check(const std::string& space_csv, double rmin, double rmax,
                      std::uint64_t seed, std::size_t centers, bool no_guard,
                      const std::string& out_dir) {
    auto space = load_space(space_csv);
    auto nu = DiscreteMeasure::full(space);
    if (rmax <= 0) rmax = space->diameter();
    require(rmin > 0 && rmax > rmin, "ahlfors-check: need 0 < rmin < rmax");
    AhlforsFitOptions opt;
    opt.seed = seed;
    opt.max_centers = centers;
    opt.interior_guard = !no_guard;
    const auto radii = log_grid(rmin, rmax, opt.per_decade);
    const auto est = ahlfors_fit(nu, radii, opt);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/fit.csv");
        csv.header({"center", "r", "muBall"});
        for (const auto& s : ahlfors_fit_samples(nu, radii, opt))
            csv.row(s.center, s.r, s.ball_mass);
    }
    std::cout << "exponent=" << format_double(est.exponent)
              << " constant=" << format_double(est.constant)
              << " residual=" << format_double(est.fit_residual)
              << " samples=" << est.samples_used << " window=[" << format_double(est.r_min) << ","
              << format_double(est.r_max) << "]\n";
    return 0;
}

int cmd_hausdorff_scan(const std::string& space_csv, const std::string& subset_csv, double smin,
                       double smax, std::size_t scount, double rhomin, double rhomax,
                       std::size_t rhocount, const std::string& out_dir) {
    auto space = load_space(space_csv);
    std::vector<std::size_t> subset;
    if (subset_csv.empty()) {
        subset.resize(space->size());
        for (std::size_t i = 0; i < subset.size(); ++i) subset[i] = i;
    } else {
        subset = read_subset_indices(subset_csv, space->size());
        std::sort(subset.begin(), subset.end());
    }
    require(smax > smin && rhomax > rhomin, "hausdorff-scan: bad grids");
    const auto s_grid = linear_grid(smin, smax, scount);
    const auto rho_grid = log_grid(rhomin, rhomax, 12);
    std::vector<double> rhos(rho_grid.begin(), rho_grid.end());
    if (rhos.size() > rhocount) {
        // thin to the requested count, keeping the ends
        std::vector<double> thin;
        for (std::size_t i = 0; i < rhocount; ++i)
            thin.push_back(rhos[i * (rhos.size() - 1) / (rhocount - 1)]);
        rhos = thin;
    }
    const auto scan = dimension_scan(*space, subset, s_grid, rhos);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/scan.csv");
        csv.header({"s", "rho", "value", "ballCount"});
        for (std::size_t i = 0; i < scan.s_grid.size(); ++i)
            for (std::size_t j = 0; j < scan.rho_grid.size(); ++j)
                csv.row(scan.s_grid[i], scan.rho_grid[j], scan.values[i][j], scan.counts[i][j]);
    }
    std::cout << "critical_s=" << format_double(scan.critical_s) << "\n";
    return 0;
}

int cmd_maximal(const std::string& space_csv, const std::string& measure_csv,
                const std::string& segments_csv, double rmin, double rmax,
                const std::string& out_dir) {
    auto space = load_space(space_csv);
    auto nu_host = load_space(measure_csv);
    auto nu = DiscreteMeasure::full(nu_host);
    SubsetRef f = segments_csv.empty() ? nu.as_subset()
                                       : SubsetRef::from_segments(read_segments(segments_csv));
    std::vector<std::size_t> eval(space->size());
    for (std::size_t i = 0; i < eval.size(); ++i) eval[i] = i;
    MaximalOptions opt;
    if (rmin > 0) opt.r_min = rmin;
    if (rmax > 0) opt.r_max = rmax;
    const auto prof = maximal_of_measure(*space, nu, eval, opt);
    std::filesystem::create_directories(out_dir);
    CsvWriter csv(out_dir + "/maximal.csv");
    csv.header({"atomIndex", "distToF", "value", "argmaxRadius"});
    for (std::size_t e = 0; e < eval.size(); ++e)
        csv.row(eval[e], f.distance_to_atom(*space, eval[e]), prof.value[e],
                prof.argmax_radius[e]);
    std::cout << "wrote " << eval.size() << " rows to " << out_dir << "/maximal.csv\n";
    return 0;
}

struct WeightFlags {
    std::optional<double> beta;
    std::optional<double> gamma;
    std::string subset_csv;
    std::string segments_csv;
    std::string measure_csv;
};

std::pair<std::vector<double>, std::string> build_weight(const MetricMeasureSpace& space,
                                                         SpacePtr space_ptr,
                                                         const WeightFlags& wf) {
    if (wf.beta) {
        SubsetRef f = [&] {
            if (!wf.segments_csv.empty())
                return SubsetRef::from_segments(read_segments(wf.segments_csv));
            require(!wf.subset_csv.empty(), "weight: --beta needs --subset or --segments");
            auto idx = read_subset_indices(wf.subset_csv, space.size());
            std::sort(idx.begin(), idx.end());
            idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
            return SubsetRef::from_indices(std::move(space_ptr), std::move(idx));
        }();
        const auto spec = WeightSpec::power_distance(std::move(f), *wf.beta);
        return {weight_values(spec, space), "d^" + format_double(*wf.beta)};
    }
    require(wf.gamma.has_value(), "weight: need --beta or --gamma");
    require(!wf.measure_csv.empty(), "weight: --gamma needs --measure");
    auto nu = DiscreteMeasure::full(load_space(wf.measure_csv));
    const auto spec = WeightSpec::maximal_power(std::move(nu), *wf.gamma);
    return {weight_values(spec, space), "M^" + format_double(*wf.gamma)};
}

int cmd_ap_check(const std::string& space_csv, const WeightFlags& wf, double p,
                 std::size_t balls, std::uint64_t seed, double rmin, double rmax,
                 const std::string& out_dir, const std::string& export_weight) {
    auto space = load_space(space_csv);
    auto [w, wid] = build_weight(*space, space, wf);
    SamplerConfig sc;
    sc.ball_count = balls;
    sc.seed = seed;
    sc.r_min = rmin > 0 ? rmin : space->diameter() * 1e-3;
    sc.r_max = rmax > 0 ? rmax : space->diameter();
    const auto rep = ap_constant_estimate(*space, w, p, sc, wid);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/ap_balls.csv");
        csv.header({"center", "radius", "product"});
        for (std::size_t k = 0; k < rep.products.size(); ++k)
            csv.row(rep.centers[k], rep.radii[k], rep.products[k]);
    }
    if (!export_weight.empty()) {
        CsvWriter csv(export_weight);
        csv.header({"atomIndex", "weight"});
        for (std::size_t i = 0; i < w.size(); ++i) csv.row(i, w[i]);
    }
    std::cout << "p=" << format_double(p) << " weight=" << rep.weight_id
              << " balls=" << rep.balls_sampled
              << " supremumHat=" << format_double(rep.supremum)
              << " q50=" << format_double(rep.q50) << " q90=" << format_double(rep.q90)
              << " q99=" << format_double(rep.q99) << " flagged=" << rep.flagged_atoms << "\n";
    return 0;
}

int cmd_range_sweep(const std::vector<int>& levels, double p, const std::vector<double>& betas,
                    std::size_t balls, std::uint64_t seed, const std::string& out_dir,
                    std::size_t cap) {
    require(!levels.empty() && !betas.empty(), "range-sweep: need --levels and --beta");
    const auto provider = [cap](int level) {
        auto [g, b] = gasket_boundary_pair(level, cap);
        LevelInstance in;
        in.space = g.space;
        in.f = *b.analytic;
        in.r_min = 2.0 * g.local_radius;
        in.r_max = g.space->diameter();
        return in;
    };
    SamplerConfig sc;
    sc.ball_count = balls;
    sc.seed = seed;
    sc.r_min = 1;  // per-level windows come from the provider
    sc.r_max = 2;
    const double alpha = std::log(3.0) / std::log(2.0);
    const auto res = range_sweep(provider, levels, p, betas, sc, SweepThresholds{}, alpha, 1.0);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        CsvWriter csv(out_dir + "/sweep.csv");
        csv.header({"level", "p", "beta", "supremum", "q50", "q90", "q99", "balls"});
        for (const auto& r : res.rows)
            csv.row(r.level, r.p, r.beta, r.supremum, r.q50, r.q90, r.q99, r.balls);
    }
    bool all_ok = true;
    for (const auto& v : res.verdicts) {
        const bool ok =
            v.in_range ? v.verdict == Verdict::stable : v.verdict == Verdict::divergent;
        all_ok = all_ok && ok;
        std::cout << "beta=" << format_double(v.beta) << " p=" << format_double(p) << " -> "
                  << to_string(v.verdict) << (v.in_range ? " (in range)" : " (out of range)")
                  << (ok ? "" : " MISMATCH") << "\n";
    }
    return all_ok ? 0 : 1;
}

int cmd_experiment(const std::string& config_path, const std::vector<int>& levels,
                   const std::vector<double>& gammas, const std::vector<double>& betas,
                   const std::vector<double>& ps, std::optional<std::uint64_t> seed,
                   std::optional<unsigned> threads, const std::string& out_dir) {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = ExperimentConfig::from_file(config_path);
    if (!levels.empty()) cfg.levels = levels;
    if (!gammas.empty()) cfg.gamma_grid = gammas;
    if (!betas.empty()) cfg.beta_grid = betas;
    if (!ps.empty()) cfg.p_grid = ps;
    if (seed) cfg.seed = *seed;
    if (threads) cfg.threads = *threads;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    cfg.validate();
    const auto rep = run_experiment(cfg);
    emit_report(rep, cfg.out_dir);
    std::cout << (rep.pass ? "PASS" : "FAIL") << " (report in " << cfg.out_dir << ")\n";
    return rep.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ahlfors spaces, maximal functions and Muckenhoupt weights on fractal examples"};
    app.require_subcommand(1);

    unsigned global_threads = 1;
    auto* threads_opt =
        app.add_option("--threads", global_threads,
                       "worker threads for the heavy loops (results are identical "
                       "for any value)");

    // generate
    std::string g_variant = "gasket", g_out = "out";
    int g_level = 5, g_segments = 32, g_n = 32;
    std::size_t atom_cap = 20000;
    auto* gen = app.add_subcommand("generate", "generate an example space as CSV + metadata");
    gen->add_option("--variant", g_variant, "gasket|boundary|cantor|square|interval");
    gen->add_option("--level", g_level, "recursion level (gasket, cantor)");
    gen->add_option("--segments", g_segments, "segments per side (boundary)");
    gen->add_option("--n", g_n, "grid size (square, interval)");
    gen->add_option("--out", g_out, "output directory");
    gen->add_option("--atom-cap", atom_cap, "atom count cap");

    // ahlfors-check
    std::string ac_space, ac_out;
    double ac_rmin = 0.0, ac_rmax = 0.0;
    std::uint64_t ac_seed = 2024;
    std::size_t ac_centers = 512;
    bool ac_noguard = false;
    auto* ac = app.add_subcommand("ahlfors-check", "fit the Ahlfors exponent of a point cloud");
    ac->add_option("--space", ac_space, "point cloud CSV")->required();
    ac->add_option("--rmin", ac_rmin, "window lower end")->required();
    ac->add_option("--rmax", ac_rmax, "window upper end (default: diameter)");
    ac->add_option("--seed", ac_seed, "center sampling seed");
    ac->add_option("--centers", ac_centers, "max centers");
    ac->add_flag("--no-interior-guard", ac_noguard, "keep balls clipped by the support extent");
    ac->add_option("--out", ac_out, "directory for the fit table CSV");

    // hausdorff-scan
    std::string hs_space, hs_subset, hs_out;
    double hs_smin = 0.2, hs_smax = 2.0, hs_rhomin = 0.0, hs_rhomax = 0.0;
    std::size_t hs_scount = 10, hs_rhocount = 8;
    auto* hs = app.add_subcommand("hausdorff-scan", "cover-sum scan over (s, rho)");
    hs->add_option("--space", hs_space, "point cloud CSV")->required();
    hs->add_option("--subset", hs_subset, "subset index CSV (default: all atoms)");
    hs->add_option("--smin", hs_smin);
    hs->add_option("--smax", hs_smax);
    hs->add_option("--scount", hs_scount);
    hs->add_option("--rhomin", hs_rhomin)->required();
    hs->add_option("--rhomax", hs_rhomax)->required();
    hs->add_option("--rhocount", hs_rhocount);
    hs->add_option("--out", hs_out, "directory for the scan CSV");

    // maximal
    std::string mx_space, mx_measure, mx_segments, mx_out = "out";
    double mx_rmin = 0.0, mx_rmax = 0.0;
    auto* mx = app.add_subcommand("maximal", "maximal function of a measure, per-atom CSV");
    mx->add_option("--space", mx_space, "ambient point cloud CSV")->required();
    mx->add_option("--measure", mx_measure, "nu point cloud CSV")->required();
    mx->add_option("--segments", mx_segments, "analytic F as a segment CSV");
    mx->add_option("--rmin", mx_rmin, "radius window lower end");
    mx->add_option("--rmax", mx_rmax, "radius window upper end");
    mx->add_option("--out", mx_out, "output directory")->required();

    // ap-check
    std::string apc_space, apc_out, apc_export;
    WeightFlags apc_w;
    double apc_p = 1.0, apc_rmin = 0.0, apc_rmax = 0.0;
    double apc_beta_val = 0.0, apc_gamma_val = 0.0;
    std::size_t apc_balls = 500;
    std::uint64_t apc_seed = 20240817;
    auto* apc = app.add_subcommand("ap-check", "sampled A_p constant of a weight");
    apc->add_option("--space", apc_space, "point cloud CSV")->required();
    apc->add_option("--p", apc_p, "exponent p >= 1")->required();
    auto* apc_beta = apc->add_option("--beta", apc_beta_val, "power-distance exponent");
    auto* apc_gamma = apc->add_option("--gamma", apc_gamma_val, "maximal-power exponent");
    apc->add_option("--subset", apc_w.subset_csv, "F as subset index CSV");
    apc->add_option("--segments", apc_w.segments_csv, "F as segment CSV");
    apc->add_option("--measure", apc_w.measure_csv, "nu point cloud (for --gamma)");
    apc->add_option("--balls", apc_balls, "number of sampled balls");
    apc->add_option("--seed", apc_seed, "sampler seed");
    apc->add_option("--rmin", apc_rmin, "sampler radius floor");
    apc->add_option("--rmax", apc_rmax, "sampler radius ceiling");
    apc->add_option("--out", apc_out, "directory for the per-ball CSV");
    apc->add_option("--export-weight", apc_export, "per-atom weight CSV path");

    // range-sweep
    std::vector<int> rs_levels;
    std::vector<double> rs_betas;
    double rs_p = 2.0;
    std::size_t rs_balls = 500;
    std::uint64_t rs_seed = 20240817;
    std::string rs_out;
    auto* rs = app.add_subcommand("range-sweep", "cross-level A_p sweep on the gasket");
    rs->add_option("--levels", rs_levels, "gasket levels")->delimiter(',')->required();
    rs->add_option("--beta", rs_betas, "beta grid")->delimiter(',')->required();
    rs->add_option("--p", rs_p, "exponent p");
    rs->add_option("--balls", rs_balls, "balls per (level, beta)");
    rs->add_option("--seed", rs_seed, "sampler seed");
    rs->add_option("--out", rs_out, "output directory");
    rs->add_option("--atom-cap", atom_cap, "atom count cap");

    // experiment
    std::string ex_config, ex_out;
    std::vector<int> ex_levels;
    std::vector<double> ex_gammas, ex_betas, ex_ps;
    std::uint64_t ex_seed = 0;
    unsigned ex_threads = 0;
    bool ex_seed_set = false, ex_threads_set = false;
    auto* ex = app.add_subcommand("experiment", "flagship gasket experiment");
    ex->add_option("--config", ex_config, "JSON config file");
    ex->add_option("--levels", ex_levels, "override levels")->delimiter(',');
    ex->add_option("--gamma", ex_gammas, "override gamma grid")->delimiter(',');
    ex->add_option("--beta", ex_betas, "override beta grid")->delimiter(',');
    ex->add_option("--p", ex_ps, "override p grid")->delimiter(',');
    ex->add_option("--seed", ex_seed, "override seed")->each([&](const std::string&) {
        ex_seed_set = true;
    });
    ex->add_option("--threads", ex_threads, "worker threads")->each([&](const std::string&) {
        ex_threads_set = true;
    });
    ex->add_option("--out", ex_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (threads_opt->count() > 0) ahlfors::thread_count() = std::max(1u, global_threads);

    try {
        if (gen->parsed())
            return cmd_generate(g_variant, g_level, g_segments, g_n, g_out, atom_cap);
        if (ac->parsed())
            return cmd_ahlfors_check(ac_space, ac_rmin, ac_rmax, ac_seed, ac_centers, ac_noguard,
                                     ac_out);
        if (hs->parsed())
            return cmd_hausdorff_scan(hs_space, hs_subset, hs_smin, hs_smax, hs_scount, hs_rhomin,
                                      hs_rhomax, hs_rhocount, hs_out);
        if (mx->parsed())
            return cmd_maximal(mx_space, mx_measure, mx_segments, mx_rmin, mx_rmax, mx_out);
        if (apc->parsed()) {
            if (apc_beta->count()) apc_w.beta = apc_beta_val;
            if (apc_gamma->count()) apc_w.gamma = apc_gamma_val;
            return cmd_ap_check(apc_space, apc_w, apc_p, apc_balls, apc_seed, apc_rmin, apc_rmax,
                                apc_out, apc_export);
        }
        if (rs->parsed())
            return cmd_range_sweep(rs_levels, rs_p, rs_betas, rs_balls, rs_seed, rs_out, atom_cap);
        if (ex->parsed())
            return cmd_experiment(ex_config, ex_levels, ex_gammas, ex_betas, ex_ps,
                                  ex_seed_set ? std::optional<std::uint64_t>(ex_seed) : std::nullopt,
                                  ex_threads_set ? std::optional<unsigned>(ex_threads)
                                                 : std::nullopt,
                                  ex_out);
    } catch (const ahlfors::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
