#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace gevtrend {

/**
 * @brief Seeded, splittable random stream (xoshiro256** seeded through SplitMix64).
 *
 * Every stream is identified by a 64-bit key. `split(k)` derives a child stream
 * from the parent's key and `k` without touching the parent's state, so replicate
 * `i` of a Monte Carlo loop can be given `rng.split(i)` and produce the same
 * draws regardless of thread count or iteration order.
 *
 * All conversions to doubles and bounded integers are done here rather than through
 * <random> distributions, whose algorithms are implementation-defined.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0);

    /// Child stream keyed by `key`; the parent is left untouched.
    [[nodiscard]] Rng split(std::uint64_t key) const;
    [[nodiscard]] Rng split(std::initializer_list<std::uint64_t> keys) const;

    [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Uniform integer in [0, bound). `bound` must be positive.
    std::size_t below(std::size_t bound);

    /// Standard Gumbel variate by inversion.
    double std_gumbel();

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const std::size_t j = below(i);
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::uint64_t key_;
    std::array<std::uint64_t, 4> s_{};
};

/// Hash a double's bit pattern into a stream key (for keying by grid coordinates).
[[nodiscard]] std::uint64_t key_of(double value) noexcept;

}  // namespace gevtrend
