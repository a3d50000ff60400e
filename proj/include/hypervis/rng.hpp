#pragma once

// Counter-based random streams.
//
// Every stream is addressed by (master seed, index, role). The index is
// typically a replication number and the role separates independent
// consumers inside one replication (obstacle field, ray directions, ...).
// Streams never overlap and their contents do not depend on the order in
// which they are created, so parallel replications are reproducible
// regardless of scheduling.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace hypervis {

/// Philox4x32-10 block function (Salmon et al., Random123).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr Counter block(Counter ctr, Key key) noexcept {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

enum class StreamRole : std::uint32_t {
    Field = 1,
    Rays = 2,
    Rotation = 3,
    Aux = 4,
};

/// UniformRandomBitGenerator over one Philox stream.
///
/// Counter layout: word 0 is the block index, word 1 the role, words 2-3
/// the 64-bit stream index. The key is derived from the master seed.
class Stream {
public:
    using result_type = std::uint64_t;

    Stream(std::uint64_t seed, std::uint64_t index, StreamRole role) noexcept
        : Stream(seed, index, static_cast<std::uint32_t>(role)) {}

    Stream(std::uint64_t seed, std::uint64_t index, std::uint32_t role) noexcept {
        const std::uint64_t k = splitmix64(seed);
        key_ = {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
        ctr_ = {0u, role, static_cast<std::uint32_t>(index),
                static_cast<std::uint32_t>(index >> 32)};
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept {
        if (pos_ == 2) {
            refill();
        }
        return buf_[pos_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in (0, 1].
    double uniform_pos() noexcept { return 1.0 - uniform(); }

    double normal() noexcept {
        // Box-Muller keeps the stream layout independent of the standard
        // library's distribution implementation.
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        constexpr double two_pi = 6.283185307179586476925286766559;
        const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
        const double phi = two_pi * uniform();
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    double exponential(double rate) noexcept { return -std::log(uniform_pos()) / rate; }

    std::uint64_t poisson(double mean) {
        if (mean <= 0.0) {
            return 0;
        }
        std::poisson_distribution<std::uint64_t> dist(mean);
        return dist(*this);
    }

private:
    void refill() noexcept {
        const auto out = Philox4x32::block(ctr_, key_);
        ++ctr_[0];
        buf_[0] = (std::uint64_t{out[1]} << 32) | out[0];
        buf_[1] = (std::uint64_t{out[3]} << 32) | out[2];
        pos_ = 0;
    }

    Philox4x32::Key key_{};
    Philox4x32::Counter ctr_{};
    std::array<std::uint64_t, 2> buf_{};
    int pos_ = 2;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace hypervis
