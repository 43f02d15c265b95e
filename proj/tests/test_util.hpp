#pragma once

#include <hessweave/ratpoly.hpp>

#include <cstdint>

namespace hwtest {

// xorshift64*: deterministic across platforms, seeded per test site.
struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    std::uint64_t next() {
        s ^= s >> 12;
        s ^= s << 25;
        s ^= s >> 27;
        return s * 0x2545F4914F6CDD1DULL;
    }
    // uniform in [lo, hi]
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    hessweave::Rational rational(long lo, long hi, long dmax = 4) {
        return hessweave::Rational(range(lo, hi), range(1, dmax));
    }
    hessweave::Rational nonzero_rational(long lo, long hi, long dmax = 4) {
        for (;;) {
            auto q = rational(lo, hi, dmax);
            if (q != 0) return q;
        }
    }
};

// Dense degree-d polynomial, every coefficient a nonzero small rational
// (so the leading form is automatically nonzero).
inline hessweave::BiPoly random_dense(Rng& rng, int d) {
    hessweave::BiPoly p;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; i + j <= d; ++j)
            p.add_term({i, j}, rng.nonzero_rational(-9, 9));
    return p;
}

}  // namespace hwtest
