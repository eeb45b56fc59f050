#pragma once

#include <cstdint>

#include "dyadic.hpp"

namespace qlocal {

// SplitMix64: seedable and splittable.  split() derives an independent child
// stream, so per-task streams stay reproducible regardless of ordering.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    SplitMix64 split() { return SplitMix64(next() ^ 0x9E3779B97F4A7C15ULL); }

    bool next_bit() {
        if (bits_left_ == 0) {
            buffer_ = next();
            bits_left_ = 64;
        }
        bool b = buffer_ & 1;
        buffer_ >>= 1;
        --bits_left_;
        return b;
    }

    // Exact Bernoulli draw: returns 1 with probability exactly `bias`.
    // Compares a lazily drawn uniform U in [0,1) against the binary expansion
    // of bias, most significant digit first.
    bool bernoulli(const Dyadic& bias) {
        if (bias.is_zero()) return false;
        unsigned e = bias.denom_exp();
        if (e == 0) return true;  // bias must be 1 for a probability
        const mpz_class& n = bias.num();
        for (unsigned i = 0; i < e; ++i) {
            bool p_digit = mpz_tstbit(n.get_mpz_t(), e - 1 - i);
            bool u_digit = next_bit();
            if (u_digit != p_digit) return !u_digit && p_digit;
        }
        return false;  // U == bias prefix, so U >= bias
    }

    // Uniform integer in [0, 2^bits).
    mpz_class uniform_bits(unsigned bits) {
        mpz_class r = 0;
        unsigned done = 0;
        while (done < bits) {
            unsigned take = bits - done >= 64 ? 64 : bits - done;
            uint64_t w = next();
            if (take < 64) w &= (uint64_t{1} << take) - 1;
            mpz_class chunk(static_cast<unsigned long>(w >> 32));
            chunk <<= 32;
            chunk += static_cast<unsigned long>(w & 0xFFFFFFFFULL);
            r |= chunk << done;
            done += take;
        }
        return r;
    }

  private:
    uint64_t state_;
    uint64_t buffer_ = 0;
    int bits_left_ = 0;
};

}  // namespace qlocal
