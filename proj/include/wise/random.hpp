#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <vector>

namespace wise {

/// SplitMix64 finalizer.
[[nodiscard]] std::uint64_t mix64(std::uint64_t x) noexcept;

/// Folds a list of integers into a master seed; used to give every
/// replication and permutation draw its own reproducible stream.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master,
                                        std::initializer_list<std::uint64_t> keys) noexcept;

/// FNV-1a, for turning setting names into seed keys.
[[nodiscard]] std::uint64_t hash_string(std::string_view s) noexcept;

/// Reproducible random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distributions are implemented here rather than taken from
/// <random> because the standard leaves their algorithms unspecified:
///   - uniform01: top 53 bits of one engine output, scaled to [0, 1)
///   - normal: Marsaglia polar method, spare value cached
///   - uniform_index: Lemire's multiply-shift with rejection
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    double normal();
    /// Uniform on {0, ..., bound-1}; bound > 0.
    std::uint64_t uniform_index(std::uint64_t bound);

    /// Fisher-Yates, drawing from the back.
    template <typename T>
    void shuffle(std::span<T> xs) {
        for (std::size_t i = xs.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(uniform_index(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Uniformly random permutation of {0, ..., n-1}.
[[nodiscard]] std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

}  // namespace wise
