// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstdint>

namespace coopnet {

// Identifies one reproducible random stream. Streams are independent for
// distinct (master_seed, stream_index) pairs; the engine assigns one stream
// per trial so that results do not depend on worker count or scheduling.
struct SeedStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

namespace detail {

// splitmix64 output mix (Steele, Lea, Flood). Bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// xoshiro256++ generator seeded via a splitmix64 chain over the stream id.
// All outputs are fixed functions of the state bits: sequences are identical
// across platforms and compilers, which the CSV determinism contract needs.
// std::normal_distribution is not specified bit-for-bit, so the Gaussian
// transform below is spelled out explicitly.
class RandomStream {
  public:
    explicit RandomStream(SeedStream id) {
        // mix64 is bijective in stream_index, so streams of one master seed
        // never collide in their splitmix init state.
        std::uint64_t x = id.master_seed ^ detail::mix64(id.stream_index * 0x9e3779b97f4a7c15ull + 1);
        for (auto& word : state_) {
            x += 0x9e3779b97f4a7c15ull;
            word = detail::mix64(x);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53 significant bits.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), unbiased via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        assert(bound > 0);
        const std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
        std::uint64_t x = next_u64();
        while (x < min) x = next_u64();
        return x % bound;
    }

    // Circularly symmetric complex Gaussian, E|z|^2 = variance.
    // One Box-Muller pair per call; consumes exactly two uniforms.
    std::complex<double> next_complex_gaussian(double variance) {
        assert(variance >= 0.0);
        const double u1 = 1.0 - next_unit();  // (0, 1]: log stays finite
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.141592653589793238462643383279502884 * u2;
        const double scale = std::sqrt(variance / 2.0);
        return {scale * r * std::cos(theta), scale * r * std::sin(theta)};
    }

  private:
    std::uint64_t state_[4];
};

// One-shot draw; repeated calls with the same stream id return the same value.
inline std::complex<double> sample_complex_gaussian(SeedStream stream, double variance) {
    RandomStream rs(stream);
    return rs.next_complex_gaussian(variance);
}

}  // namespace coopnet
