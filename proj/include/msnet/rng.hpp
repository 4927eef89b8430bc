#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace msnet {

// Seeded generator with explicit bit-level draws. std::mt19937_64 output is
// pinned by the standard, but the std distributions are not; going through
// them would make "identical seeds -> identical output (bitwise)" depend on
// the standard library. All draws here are defined in terms of raw 64-bit
// words only.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 bits of mantissa.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform in [0, n). n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        // Rejection sampling on the top bits; unbiased and stdlib-independent.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    int next_int(int n) { return static_cast<int>(next_below(static_cast<std::uint64_t>(n))); }

    // k distinct values from 0..n-1, in draw order (partial Fisher-Yates).
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out;
        out.reserve(k);
        for (int i = 0; i < k && i < n; ++i) {
            const int j = i + next_int(n - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace msnet
