#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hessweave {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sign_of(const Rational& q) { return q.sign(); }
inline int sign_of(const Integer& n) { return n.sign(); }

// Canonical string form "num/den", den > 0, reduced. Used by all JSON output.
inline std::string to_fraction_string(const Rational& q) {
    return num(q).str() + "/" + den(q).str();
}

// Accepts "num/den" or a bare integer "num".
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer n(s.substr(0, slash));
        Integer d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal '" + s + "': " + e.what());
    }
}

inline Rational pow_rational(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    Integer n = num(base), d = den(base);
    if (e < 0) {
        if (n == 0) throw std::domain_error("0^negative");
        std::swap(n, d);
        if (n < 0) { n = -n; d = -d; }
        e = -e;
    }
    return Rational(boost::multiprecision::pow(n, static_cast<unsigned>(e)),
                    boost::multiprecision::pow(d, static_cast<unsigned>(e)));
}

// Smallest integer k with x <= 2^k, for x = num/den > 0.
inline std::int64_t ceil_log2(const Rational& x) {
    if (sign_of(x) <= 0) throw std::domain_error("ceil_log2 requires positive argument");
    const Integer n = num(x), d = den(x);
    auto le_pow2 = [&](std::int64_t k) {  // x <= 2^k ?
        return k >= 0 ? n <= (d << static_cast<unsigned>(k))
                      : (n << static_cast<unsigned>(-k)) <= d;
    };
    std::int64_t k = static_cast<std::int64_t>(boost::multiprecision::msb(n)) -
                     static_cast<std::int64_t>(boost::multiprecision::msb(d)) - 1;
    while (!le_pow2(k)) ++k;
    while (le_pow2(k - 1)) --k;
    return k;
}

}  // namespace hessweave
