#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace ahlfors {

/// Counter-based generator: draw k of stream s is a pure function of
/// (seed, s, k). Results are reproducible regardless of evaluation order
/// or thread count, which is what the samplers rely on.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
        std::uint64_t z = seed_;
        z = mix(z ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
        z = mix(z ^ (0xbf58476d1ce4e5b9ULL * (counter + 1)));
        return mix(z);
    }

    /// Uniform in [0, 1).
    double uniform(std::uint64_t stream, std::uint64_t counter) const {
        return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
    }

    /// Log-uniform in [lo, hi].
    double log_uniform(std::uint64_t stream, std::uint64_t counter, double lo, double hi) const {
        const double t = uniform(stream, counter);
        return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
    }

    /// Uniform index in [0, n).
    std::size_t pick(std::uint64_t stream, std::uint64_t counter, std::size_t n) const {
        const auto i = static_cast<std::size_t>(uniform(stream, counter) * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    /// k distinct indices out of [0, n), ascending. Partial Fisher-Yates
    /// driven by the counter stream.
    std::vector<std::size_t> sample_without_replacement(std::uint64_t stream, std::size_t n,
                                                        std::size_t k) const {
        if (k >= n) {
            std::vector<std::size_t> all(n);
            for (std::size_t i = 0; i < n; ++i) all[i] = i;
            return all;
        }
        std::vector<std::size_t> pool(n);
        for (std::size_t i = 0; i < n; ++i) pool[i] = i;
        std::vector<std::size_t> out(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + pick(stream, i, n - i);
            std::swap(pool[i], pool[j]);
            out[i] = pool[i];
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
};

}  // namespace ahlfors
