#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ahlfors/util/error.hpp"

namespace ahlfors {

using Json = nlohmann::ordered_json;

/// Flagship experiment configuration. Loaded from a JSON config file;
/// command-line flags override file keys (flag > file > default).
struct ExperimentConfig {
    std::vector<int> levels{5, 6, 7};
    std::vector<double> p_grid{1.0};
    std::vector<double> gamma_grid{0.25, 0.5, 0.75};  // used at p = 1
    std::vector<double> beta_grid;                    // used at p > 1
    std::size_t ball_count = 500;
    std::uint64_t seed = 20240817;
    double rmin_cells = 2.0;     // sampler floor, in cell diameters
    double rmax_fraction = 1.0;  // sampler ceiling, as a diameter fraction
    double stable_threshold = 1.5;
    double divergent_threshold = 2.0;
    // declared exponents win over fitted ones; the gasket flagship has
    // analytic values, so they are the default (JSON null switches to fitted)
    std::optional<double> declared_alpha = std::log(3.0) / std::log(2.0);
    std::optional<double> declared_s = 1.0;
    std::size_t atom_cap = 20000;
    unsigned threads = 1;
    std::string out_dir = "out";

    void validate() const {
        require(!levels.empty(), "config: levels must be nonempty");
        for (std::size_t i = 1; i < levels.size(); ++i)
            require(levels[i] > levels[i - 1], "config: levels must be ascending");
        require(stable_threshold > 1.0 && divergent_threshold > 1.0,
                "config: thresholds must exceed 1");
        require(divergent_threshold >= stable_threshold,
                "config: divergent threshold below stable threshold");
        require(ball_count >= 10, "config: ball count must be at least 10");
        require(rmin_cells > 0 && rmax_fraction > 0 && rmax_fraction <= 1.0,
                "config: bad sampler radius window");
        for (const double p : p_grid) require(p >= 1.0, "config: p must be >= 1");
    }

    Json to_json() const {
        Json j;
        j["fractal"]["variant"] = "sierpinski-gasket";
        j["fractal"]["levels"] = levels;
        j["p"] = p_grid;
        j["gamma"] = gamma_grid;
        j["beta"] = beta_grid;
        j["sampler"]["balls"] = ball_count;
        j["sampler"]["seed"] = seed;
        j["sampler"]["rmin_cells"] = rmin_cells;
        j["sampler"]["rmax_fraction"] = rmax_fraction;
        j["thresholds"]["stable"] = stable_threshold;
        j["thresholds"]["divergent"] = divergent_threshold;
        if (declared_alpha)
            j["declared"]["alpha"] = *declared_alpha;
        else
            j["declared"]["alpha"] = nullptr;
        if (declared_s)
            j["declared"]["s"] = *declared_s;
        else
            j["declared"]["s"] = nullptr;
        j["atom_cap"] = atom_cap;
        j["threads"] = threads;
        j["out"] = out_dir;
        return j;
    }

    /// The scientific configuration: everything that determines the numbers.
    /// Where the report is written and how many workers crunch it are
    /// execution details and stay out of the provenance hash.
    Json provenance_json() const {
        Json j = to_json();
        j.erase("out");
        j.erase("threads");
        return j;
    }

    static ExperimentConfig from_json(const Json& j) {
        ExperimentConfig c;
        try {
            if (j.contains("fractal")) {
                const auto& f = j.at("fractal");
                if (f.contains("variant"))
                    require(f.at("variant").get<std::string>() == "sierpinski-gasket",
                            "config: only the sierpinski-gasket flagship is supported");
                if (f.contains("levels")) c.levels = f.at("levels").get<std::vector<int>>();
            }
            if (j.contains("p")) c.p_grid = j.at("p").get<std::vector<double>>();
            if (j.contains("gamma")) c.gamma_grid = j.at("gamma").get<std::vector<double>>();
            if (j.contains("beta")) c.beta_grid = j.at("beta").get<std::vector<double>>();
            if (j.contains("sampler")) {
                const auto& s = j.at("sampler");
                if (s.contains("balls")) c.ball_count = s.at("balls").get<std::size_t>();
                if (s.contains("seed")) c.seed = s.at("seed").get<std::uint64_t>();
                if (s.contains("rmin_cells")) c.rmin_cells = s.at("rmin_cells").get<double>();
                if (s.contains("rmax_fraction"))
                    c.rmax_fraction = s.at("rmax_fraction").get<double>();
            }
            if (j.contains("thresholds")) {
                const auto& t = j.at("thresholds");
                if (t.contains("stable")) c.stable_threshold = t.at("stable").get<double>();
                if (t.contains("divergent"))
                    c.divergent_threshold = t.at("divergent").get<double>();
            }
            if (j.contains("declared")) {
                const auto& d = j.at("declared");
                if (d.contains("alpha")) {
                    if (d.at("alpha").is_null())
                        c.declared_alpha.reset();
                    else
                        c.declared_alpha = d.at("alpha").get<double>();
                }
                if (d.contains("s")) {
                    if (d.at("s").is_null())
                        c.declared_s.reset();
                    else
                        c.declared_s = d.at("s").get<double>();
                }
            }
            if (j.contains("atom_cap")) c.atom_cap = j.at("atom_cap").get<std::size_t>();
            if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
            if (j.contains("out")) c.out_dir = j.at("out").get<std::string>();
        } catch (const Json::exception& e) {
            throw Error(std::string("config: ") + e.what());
        }
        c.validate();
        return c;
    }

    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream in(path);
        require(in.good(), "config: cannot open '" + path + "'");
        Json j;
        try {
            in >> j;
        } catch (const Json::exception& e) {
            throw Error(std::string("config: parse error in '") + path + "': " + e.what());
        }
        return from_json(j);
    }
};

/// FNV-1a over the canonical provenance dump; pinned into reports so a
/// report can be traced back to the exact scientific configuration.
inline std::string config_hash(const ExperimentConfig& c) {
    const std::string s = c.provenance_json().dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace ahlfors
