#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "ahlfors/core/space.hpp"
#include "ahlfors/core/subset.hpp"
#include "ahlfors/util/error.hpp"

namespace ahlfors {

/// Shortest round-trip decimal form; identical bytes for identical doubles,
/// which is what keeps emitted reports byte-stable across runs.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& tok, const std::string& context) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = tok.data() + tok.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    const auto res = std::from_chars(b, e, v);
    require(res.ec == std::errc{}, "csv: cannot parse number '" + tok + "' in " + context);
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

/// Generic table writer: one header row, then formatted cells.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        require(out_.good(), "csv: cannot open '" + path + "' for writing");
    }
    void header(const std::vector<std::string>& names) { row_strings(names); }
    void row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }
    template <typename... Ts>
    void row(const Ts&... cells) {
        std::vector<std::string> s;
        (s.push_back(cell(cells)), ...);
        row_strings(s);
    }

private:
    static std::string cell(double v) { return format_double(v); }
    static std::string cell(int v) { return std::to_string(v); }
    static std::string cell(std::size_t v) { return std::to_string(v); }
    static std::string cell(const std::string& v) { return v; }
    static std::string cell(const char* v) { return v; }
    std::ofstream out_;
};

/// Point cloud: header x1..xD,mass. NaN coordinates and non-positive or
/// NaN masses are rejected.
inline void write_point_cloud(const std::string& path, const MetricMeasureSpace& space) {
    require(space.is_euclidean(), "write_point_cloud: table-metric spaces have no coordinates");
    CsvWriter w(path);
    std::vector<std::string> head;
    for (std::size_t a = 0; a < space.dim(); ++a) head.push_back("x" + std::to_string(a + 1));
    head.push_back("mass");
    w.header(head);
    for (std::size_t i = 0; i < space.size(); ++i) {
        std::vector<std::string> cells;
        const auto p = space.point(i);
        for (std::size_t a = 0; a < space.dim(); ++a) cells.push_back(format_double(p[a]));
        cells.push_back(format_double(space.mass(i)));
        w.row_strings(cells);
    }
}

inline MetricMeasureSpace read_point_cloud(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "csv: cannot open '" + path + "'");
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), "csv: empty file '" + path + "'");
    const auto head = split_csv_line(line);
    require(head.size() >= 2 && head.back() == "mass",
            "csv: expected header x1..xD,mass in '" + path + "'");
    const std::size_t dim = head.size() - 1;
    std::vector<double> coords, masses;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        require(cells.size() == dim + 1,
                "csv: wrong column count at line " + std::to_string(lineno) + " of " + path);
        for (std::size_t a = 0; a < dim; ++a) {
            const double v = parse_double(cells[a], path);
            require(!std::isnan(v), "csv: NaN coordinate at line " + std::to_string(lineno));
            coords.push_back(v);
        }
        const double m = parse_double(cells[dim], path);
        require(!std::isnan(m) && m > 0,
                "csv: mass must be positive at line " + std::to_string(lineno));
        masses.push_back(m);
    }
    return MetricMeasureSpace::euclidean(std::move(coords), dim, std::move(masses));
}

/// Subset file: one atom index per row (optional "index" header).
inline std::vector<std::size_t> read_subset_indices(const std::string& path, std::size_t n_atoms) {
    std::ifstream in(path);
    require(in.good(), "csv: cannot open '" + path + "'");
    std::vector<std::size_t> idx;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && !line.empty() && !std::isdigit(static_cast<unsigned char>(line[0])))
            continue;  // header
        const double v = parse_double(split_csv_line(line)[0], path);
        require(v >= 0 && v == std::floor(v), "csv: subset indices must be non-negative integers");
        const auto i = static_cast<std::size_t>(v);
        require(i < n_atoms, "csv: subset index out of range at line " + std::to_string(lineno));
        idx.push_back(i);
    }
    require(!idx.empty(), "csv: empty subset file '" + path + "'");
    return idx;
}

/// Segment-list geometry file: rows ax,ay,bx,by (optional header).
inline std::vector<Segment> read_segments(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "csv: cannot open '" + path + "'");
    std::vector<Segment> segs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.find("ax") != std::string::npos) continue;
        const auto cells = split_csv_line(line);
        require(cells.size() == 4, "csv: segment rows need 4 columns (ax,ay,bx,by)");
        Segment s;
        s.a = {parse_double(cells[0], path), parse_double(cells[1], path)};
        s.b = {parse_double(cells[2], path), parse_double(cells[3], path)};
        for (const double v : {s.a[0], s.a[1], s.b[0], s.b[1]})
            require(!std::isnan(v), "csv: NaN in segment file at line " + std::to_string(lineno));
        segs.push_back(s);
    }
    require(!segs.empty(), "csv: empty segment file '" + path + "'");
    return segs;
}

}  // namespace ahlfors
