// Deterministic splittable random streams (SplitMix64 with per-stream gamma).
// Identical (seed, stream, call sequence) reproduce identical outputs on every
// platform; substreams are independent by construction.
#pragma once

#include "numeric.hpp"

#include <cstdint>

namespace thompson {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdULL;
    z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ULL;
    return z ^ (z >> 33);
}

inline std::uint64_t mix_gamma(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z = z ^ (z >> 31);
    z |= 1ULL; // gammas are odd
    if (__builtin_popcountll(z ^ (z >> 1)) < 24) z ^= 0xaaaaaaaaaaaaaaaaULL;
    return z;
}

} // namespace detail

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream = 0)
        : state_(detail::mix64(seed + 0x9e3779b97f4a7c15ULL * stream)),
          gamma_(detail::mix_gamma(seed ^ detail::mix64(stream + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() {
        state_ += gamma_;
        return detail::mix64(state_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, bound); bound > 0. Rejection keeps it exactly uniform.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bool() { return next_u64() >> 63; }

    /// Uniform big integer in [0, bound).
    BigInt below_big(const BigInt& bound) {
        if (bound <= 0) throw std::invalid_argument("below_big: bound must be positive");
        unsigned bits = static_cast<unsigned>(msb(bound)) + 1;
        for (;;) {
            BigInt r = 0;
            unsigned got = 0;
            while (got < bits) {
                unsigned take = std::min(64u, bits - got);
                std::uint64_t w = next_u64() >> (64 - take);
                r <<= take;
                r += w;
                got += take;
            }
            if (r < bound) return r;
        }
    }

    /// Independent substream; deterministic in (this stream's identity, idx).
    RngStream split(std::uint64_t idx) const {
        RngStream s(0);
        s.state_ = detail::mix64(state_ ^ detail::mix64(idx + 0xd1b54a32d192ed03ULL));
        s.gamma_ = detail::mix_gamma(gamma_ + idx);
        return s;
    }

private:
    std::uint64_t state_;
    std::uint64_t gamma_;
};

} // namespace thompson
