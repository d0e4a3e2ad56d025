#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ahlfors {

/// Uniform-grid accelerator for fixed-radius queries on Euclidean point
/// clouds. Cells are sized so mean occupancy stays small; degenerate axes
/// (zero extent) collapse to a single slab. Candidate lists come back
/// unordered; callers sort after the exact distance filter.
class UniformGridIndex {
public:
    UniformGridIndex() = default;

    UniformGridIndex(std::span<const double> coords, std::size_t dim) : dim_(dim) {
        n_ = dim == 0 ? 0 : coords.size() / dim;
        if (n_ == 0) return;
        lo_.assign(dim, 0.0);
        hi_.assign(dim, 0.0);
        for (std::size_t a = 0; a < dim; ++a) {
            lo_[a] = hi_[a] = coords[a];
        }
        for (std::size_t i = 1; i < n_; ++i) {
            for (std::size_t a = 0; a < dim; ++a) {
                const double v = coords[i * dim + a];
                lo_[a] = std::min(lo_[a], v);
                hi_[a] = std::max(hi_[a], v);
            }
        }
        // Aim for ~1 atom per cell along each live axis.
        const auto target = static_cast<double>(n_);
        std::size_t live = 0;
        for (std::size_t a = 0; a < dim; ++a)
            if (hi_[a] > lo_[a]) ++live;
        const double per_axis = live == 0 ? 1.0 : std::pow(target, 1.0 / static_cast<double>(live));
        res_.assign(dim, 1);
        for (std::size_t a = 0; a < dim; ++a) {
            if (hi_[a] > lo_[a])
                res_[a] = std::max<std::size_t>(1, static_cast<std::size_t>(per_axis));
        }
        std::size_t cells = 1;
        for (std::size_t a = 0; a < dim; ++a) cells *= res_[a];
        buckets_.assign(cells, {});
        for (std::size_t i = 0; i < n_; ++i) {
            buckets_[cell_of(coords.subspan(i * dim, dim))].push_back(i);
        }
    }

    bool empty() const { return n_ == 0; }

    /// Indices of atoms whose cell intersects the axis-aligned box of the
    /// ball B(center, r); a superset of the exact answer.
    void candidates(std::span<const double> center, double r, std::vector<std::size_t>& out) const {
        out.clear();
        std::vector<std::size_t> clo(dim_), chi(dim_);
        for (std::size_t a = 0; a < dim_; ++a) {
            clo[a] = axis_cell(a, center[a] - r);
            chi[a] = axis_cell(a, center[a] + r);
        }
        std::vector<std::size_t> idx = clo;
        while (true) {
            std::size_t flat = 0;
            for (std::size_t a = 0; a < dim_; ++a) flat = flat * res_[a] + idx[a];
            const auto& b = buckets_[flat];
            out.insert(out.end(), b.begin(), b.end());
            std::size_t a = dim_;
            while (a > 0) {
                --a;
                if (idx[a] < chi[a]) {
                    ++idx[a];
                    for (std::size_t b2 = a + 1; b2 < dim_; ++b2) idx[b2] = clo[b2];
                    break;
                }
                if (a == 0) return;
            }
            if (dim_ == 0) return;
        }
    }

private:
    std::size_t axis_cell(std::size_t a, double v) const {
        if (res_[a] <= 1 || hi_[a] <= lo_[a]) return 0;
        const double t = (v - lo_[a]) / (hi_[a] - lo_[a]);
        const auto c = static_cast<long long>(std::floor(t * static_cast<double>(res_[a])));
        if (c < 0) return 0;
        if (c >= static_cast<long long>(res_[a])) return res_[a] - 1;
        return static_cast<std::size_t>(c);
    }

    std::size_t cell_of(std::span<const double> p) const {
        std::size_t flat = 0;
        for (std::size_t a = 0; a < dim_; ++a) flat = flat * res_[a] + axis_cell(a, p[a]);
        return flat;
    }

    std::size_t dim_ = 0;
    std::size_t n_ = 0;
    std::vector<double> lo_, hi_;
    std::vector<std::size_t> res_;
    std::vector<std::vector<std::size_t>> buckets_;
};

}  // namespace ahlfors
