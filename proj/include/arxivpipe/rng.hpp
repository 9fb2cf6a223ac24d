#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace arxivpipe {

// Deterministic random source. mt19937_64 has a standardized output
// sequence, and the bounded draw below avoids the implementation-defined
// behavior of std::uniform_int_distribution / std::shuffle, so identical
// seeds give identical streams on every platform.
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    // Uniform draw in [0, n). Rejection sampling, no modulo bias.
    uint64_t below(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller (one value per call, deterministic).
    double normal() {
        double u1 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    std::mt19937_64 gen_;
};

// Fisher-Yates with the deterministic bounded draw.
template <typename T>
void det_shuffle(std::vector<T>& v, Rng& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        const size_t j = static_cast<size_t>(rng.below(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace arxivpipe
