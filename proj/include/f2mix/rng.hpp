#pragma once

#include <cstdint>

namespace f2mix {

// Counter-based generator in the SplitMix64 family.  A stream is a (key,
// counter) pair; next() hashes key+counter, so streams can be split into
// statistically independent children without sharing mutable state.  Children
// derived with the same (parent key, tag) are identical across runs, which is
// what makes parallel experiments reproducible: one child per trial, keyed by
// trial index.  Not cryptographic.
class SplitRng {
  public:
    explicit SplitRng(std::uint64_t seed) : key_(mix(seed ^ 0x9E3779B97F4A7C15ull)) {}

    std::uint64_t next() { return mix(key_ + (++ctr_) * 0x9E3779B97F4A7C15ull); }

    // Independent child stream; does not advance this stream.
    SplitRng split(std::uint64_t tag) const {
        SplitRng child(0);
        child.key_ = mix(mix(key_ ^ 0xD6E8FEB86659FD93ull) + tag * 0xBF58476D1CE4E5B9ull);
        child.ctr_ = 0;
        return child;
    }

    bool next_bit() { return next() >> 63; }

    // True with probability threshold / 2^64.
    bool below_threshold(std::uint64_t threshold) { return next() < threshold; }

    // Uniform in [0, bound), unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1)
            return 0;
        const std::uint64_t limit = bound * (~std::uint64_t(0) / bound);
        for (;;) {
            std::uint64_t r = next();
            if (r < limit)
                return r % bound;
        }
    }

    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

} // namespace f2mix
