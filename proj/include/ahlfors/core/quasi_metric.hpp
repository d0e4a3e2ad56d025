#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "ahlfors/util/error.hpp"
#include "ahlfors/util/rng.hpp"

namespace ahlfors {

/// Distance structure of a space: either the Euclidean metric of the
/// ambient coordinates (triangle constant exactly 1) or an explicit
/// distance table with a declared triangle constant K >= 1.
class QuasiMetric {
public:
    enum class Kind { euclidean, table };

    static QuasiMetric euclidean() {
        QuasiMetric m;
        m.kind_ = Kind::euclidean;
        m.triangle_constant_ = 1.0;
        return m;
    }

    /// Table of pairwise distances, row-major n x n. Symmetry, identity of
    /// indiscernibles and the K-inequality are checked here: symmetry and
    /// the diagonal exhaustively, the triangle inequality on all triples
    /// when n is small and on 10^4 sampled triples otherwise.
    static QuasiMetric from_table(std::vector<double> distances, std::size_t n, double k) {
        require(k >= 1.0, "QuasiMetric: triangle constant must be >= 1");
        require(distances.size() == n * n, "QuasiMetric: table size mismatch");
        QuasiMetric m;
        m.kind_ = Kind::table;
        m.triangle_constant_ = k;
        m.table_ = std::move(distances);
        m.n_ = n;
        m.validate_table();
        return m;
    }

    Kind kind() const { return kind_; }
    double triangle_constant() const { return triangle_constant_; }
    std::size_t table_size() const { return n_; }

    double table_at(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }

private:
    void validate_table() const {
        for (std::size_t i = 0; i < n_; ++i) {
            require(table_at(i, i) == 0.0, "QuasiMetric: nonzero diagonal entry");
            for (std::size_t j = i + 1; j < n_; ++j) {
                const double d = table_at(i, j);
                require(d == table_at(j, i), "QuasiMetric: table not symmetric");
                require(d > 0.0 && std::isfinite(d), "QuasiMetric: off-diagonal must be positive finite");
            }
        }
        const auto check = [&](std::size_t x, std::size_t y, std::size_t z) {
            require(table_at(x, y) <= triangle_constant_ * (table_at(x, z) + table_at(z, y)) *
                                          (1.0 + 1e-12),
                    "QuasiMetric: K-triangle inequality violated");
        };
        if (n_ <= 40) {
            for (std::size_t x = 0; x < n_; ++x)
                for (std::size_t y = 0; y < n_; ++y)
                    for (std::size_t z = 0; z < n_; ++z) check(x, y, z);
        } else {
            CounterRng rng(0x7261647269756dULL);
            for (std::size_t t = 0; t < 10000; ++t) {
                check(rng.pick(0, t, n_), rng.pick(1, t, n_), rng.pick(2, t, n_));
            }
        }
    }

    Kind kind_ = Kind::euclidean;
    double triangle_constant_ = 1.0;
    std::vector<double> table_;
    std::size_t n_ = 0;
};

}  // namespace ahlfors
