#pragma once

#include <cstdint>
#include <random>

namespace paradigm {

/// mt19937_64 output is fixed by the standard but the <random>
/// distributions are not; these helpers keep sampled values identical
/// across standard libraries.
class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), by rejection.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    template <class Seq>
    void shuffle(Seq& seq) {
        for (size_t i = seq.size(); i > 1; --i) {
            std::swap(seq[i - 1], seq[static_cast<size_t>(below(i))]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace paradigm
