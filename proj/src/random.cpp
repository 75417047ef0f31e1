#include "gevtrend/random.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gevtrend {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL);
    splitmix64(s);
    return splitmix64(s);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : key_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
}

Rng Rng::split(std::uint64_t key) const { return Rng(mix(key_, key)); }

Rng Rng::split(std::initializer_list<std::uint64_t> keys) const {
    std::uint64_t k = key_;
    for (const auto part : keys) k = mix(k, part);
    return Rng(k);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
}

double Rng::uniform() {
    // 53 random bits placed at the centre of their cell: never 0, never 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be positive");
    // Lemire's nearly-divisionless rejection method.
    const auto b = static_cast<std::uint64_t>(bound);
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * b;
    auto low = static_cast<std::uint64_t>(m);
    if (low < b) {
        const std::uint64_t threshold = (0 - b) % b;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * b;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::size_t>(m >> 64);
}

double Rng::std_gumbel() { return -std::log(-std::log(uniform())); }

std::uint64_t key_of(double value) noexcept {
    if (value == 0.0) value = 0.0;  // fold -0 onto +0
    return std::bit_cast<std::uint64_t>(value);
}

}  // namespace gevtrend
