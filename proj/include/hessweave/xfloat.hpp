#pragma once

#include "rational.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

namespace hessweave {

// Float with a 64-bit exponent: value = m * 2^e, m == 0 or |m| in [1,2).
// The huge exponent range is the point: patchworked polynomials mix monomial
// scales t^h * x^i far beyond double range.
struct XFloat {
    double m = 0.0;
    std::int64_t e = 0;

    static XFloat make(double mantissa, std::int64_t expo) {
        if (mantissa == 0.0) return {};
        int k;
        double f = std::frexp(mantissa, &k);  // |f| in [0.5,1), exact
        return {f * 2.0, expo + k - 1};
    }
    static XFloat of_double(double v) { return make(v, 0); }
    static XFloat zero() { return {}; }

    bool is_zero() const { return m == 0.0; }
    int sign() const { return m > 0 ? 1 : (m < 0 ? -1 : 0); }
};

namespace detail {
inline XFloat nudge_up(XFloat x) {
    if (x.is_zero()) return {1.0, -10000};
    return XFloat::make(std::nextafter(x.m, std::numeric_limits<double>::infinity()), x.e);
}
inline XFloat nudge_down(XFloat x) {
    if (x.is_zero()) return {-1.0, -10000};
    return XFloat::make(std::nextafter(x.m, -std::numeric_limits<double>::infinity()), x.e);
}
}  // namespace detail

inline bool xf_less(const XFloat& a, const XFloat& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb;
    if (sa == 0) return false;
    if (a.e != b.e) return (a.e < b.e) == (sa > 0);
    return a.m < b.m;
}

// dir = +1: result >= exact sum; dir = -1: result <= exact sum;
// dir = 0: round to nearest (relative error <= 2^-52 per op, no bound carried).
inline XFloat xf_add(XFloat a, XFloat b, int dir) {
    if (a.is_zero()) std::swap(a, b);
    if (b.is_zero()) return a;
    if (a.e < b.e) std::swap(a, b);
    std::int64_t d = a.e - b.e;
    if (d > 55) {
        // |b| < |a| * 2^-54 < half an ulp of a's mantissa: one nudge absorbs it.
        if (dir == 0) return a;
        return dir > 0 ? detail::nudge_up(a) : detail::nudge_down(a);
    }
    double s = a.m + std::ldexp(b.m, -static_cast<int>(d));
    XFloat r = XFloat::make(s, a.e);
    if (dir == 0 || r.is_zero()) {
        // Cancellation to exactly representable 0 is exact.
        return r;
    }
    return dir > 0 ? detail::nudge_up(r) : detail::nudge_down(r);
}

inline XFloat xf_mul(XFloat a, XFloat b, int dir) {
    if (a.is_zero() || b.is_zero()) return {};
    XFloat r = XFloat::make(a.m * b.m, a.e + b.e);
    if (dir == 0) return r;
    return dir > 0 ? detail::nudge_up(r) : detail::nudge_down(r);
}

inline XFloat xf_div(XFloat a, XFloat b, int dir) {
    if (a.is_zero()) return {};
    XFloat r = XFloat::make(a.m / b.m, a.e - b.e);
    if (dir == 0) return r;
    return dir > 0 ? detail::nudge_up(r) : detail::nudge_down(r);
}

inline XFloat xf_abs(XFloat a) { return {std::fabs(a.m), a.e}; }

inline XFloat xf_neg(XFloat a) { return {-a.m, a.e}; }

// Closed interval [lo, hi] with outward-rounded endpoints.
struct XInterval {
    XFloat lo, hi;

    static XInterval point(XFloat x) { return {x, x}; }
    static XInterval of_double(double v) { return point(XFloat::of_double(v)); }
    static XInterval hull(XFloat a, XFloat b) {
        return xf_less(a, b) ? XInterval{a, b} : XInterval{b, a};
    }

    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    // Certified sign: +1/-1 when the interval excludes zero, 0 when undecided.
    int certified_sign() const {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        return 0;
    }
};

inline XInterval xi_add(const XInterval& a, const XInterval& b) {
    return {xf_add(a.lo, b.lo, -1), xf_add(a.hi, b.hi, +1)};
}

inline XInterval xi_neg(const XInterval& a) { return {xf_neg(a.hi), xf_neg(a.lo)}; }

inline XInterval xi_sub(const XInterval& a, const XInterval& b) { return xi_add(a, xi_neg(b)); }

inline XInterval xi_mul(const XInterval& a, const XInterval& b) {
    XFloat lo, hi;
    bool first = true;
    for (const XFloat& x : {a.lo, a.hi})
        for (const XFloat& y : {b.lo, b.hi}) {
            XFloat pd = xf_mul(x, y, -1), pu = xf_mul(x, y, +1);
            if (first || xf_less(pd, lo)) lo = pd;
            if (first || xf_less(hi, pu)) hi = pu;
            first = false;
        }
    return {lo, hi};
}

inline XFloat xfloat_of_integer(const Integer& n, int dir) {
    if (n == 0) return {};
    const bool neg = n < 0;
    const Integer a = neg ? Integer(-n) : n;
    const auto bits = boost::multiprecision::msb(a);  // a in [2^bits, 2^(bits+1))
    if (bits <= 52) {
        return XFloat::make(static_cast<double>(neg ? -a.convert_to<std::int64_t>()
                                                    : a.convert_to<std::int64_t>()),
                            0);
    }
    const unsigned shift = static_cast<unsigned>(bits - 52);
    Integer top = a >> shift;  // 53 bits, exact in double
    bool rem = (top << shift) != a;
    double md = static_cast<double>(top.convert_to<std::int64_t>());
    // a in [top, top+1) * 2^shift
    if (rem && ((dir > 0) != neg)) md += 1.0;
    if (neg) md = -md;
    return XFloat::make(md, static_cast<std::int64_t>(shift));
}

inline XInterval xinterval_of_rational(const Rational& q) {
    const Integer n = num(q), d = den(q);
    if (n == 0) return XInterval::point(XFloat::zero());
    XFloat nlo = xfloat_of_integer(n, -1), nhi = xfloat_of_integer(n, +1);
    XFloat dlo = xfloat_of_integer(d, -1), dhi = xfloat_of_integer(d, +1);  // d > 0
    if (n > 0) return {xf_div(nlo, dhi, -1), xf_div(nhi, dlo, +1)};
    return {xf_div(nlo, dlo, -1), xf_div(nhi, dhi, +1)};
}

// Exact dyadic value m * 2^e as a Rational.
inline Rational rational_of_xfloat(const XFloat& x) {
    if (x.is_zero()) return Rational(0);
    double md = x.m;
    std::int64_t e = x.e;
    while (md != std::floor(md)) {
        md *= 2.0;
        --e;
    }
    Rational r(Integer(static_cast<std::int64_t>(md)));
    if (e >= 0)
        r *= Rational(Integer(1) << static_cast<unsigned>(e));
    else
        r /= Rational(Integer(1) << static_cast<unsigned>(-e));
    return r;
}

}  // namespace hessweave
