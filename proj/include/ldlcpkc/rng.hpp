#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace ldlcpkc::rng {

// splitmix64, used to derive independent stream seeds from one master seed.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive(uint64_t seed, uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 0x100001b3ULL));
}

// Deterministic random stream. mt19937_64 has a pinned output sequence in the
// standard, and all distribution logic is hand-rolled below, so fixed seeds
// give byte-identical results on any platform.
class Stream {
  public:
    explicit Stream(uint64_t seed) : eng_(seed) {}

    uint64_t u64() { return eng_(); }

    // unbiased integer in [0, bound) by rejection
    uint64_t below(uint64_t bound) {
        uint64_t limit = bound * ((~uint64_t{0}) / bound);
        for (;;) {
            uint64_t v = u64();
            if (v < limit) return v % bound;
        }
    }

    long uniform_int(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo) + 1));
    }

    bool coin() { return (u64() >> 63) != 0; }

    double unit() {  // [0, 1)
        return static_cast<double>(u64() >> 11) * 0x1.0p-53;
    }

    // N(0,1) by Box-Muller; second member of each pair is cached.
    double gauss() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = 1.0 - unit();  // (0, 1], keeps log finite
        double u2 = unit();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    std::vector<uint32_t> permutation(uint32_t n) {  // Fisher-Yates
        std::vector<uint32_t> p(n);
        for (uint32_t i = 0; i < n; ++i) p[i] = i;
        for (uint32_t i = n; i > 1; --i) {
            uint32_t j = static_cast<uint32_t>(below(i));
            std::swap(p[i - 1], p[j]);
        }
        return p;
    }

  private:
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace ldlcpkc::rng
