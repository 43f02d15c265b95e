#pragma once

#include "rational.hpp"

#include <compare>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hessweave {

struct Exponent {
    int i = 0;
    int j = 0;
    auto operator<=>(const Exponent&) const = default;
};

enum class Var { X, Y };

// Univariate polynomial in t; the coefficient ring of ParamPoly.
struct TPoly {
    std::map<long, Rational> coeffs;  // t-power -> coefficient, no zeros stored

    TPoly() = default;
    static TPoly constant(Rational v) { return monomial(0, std::move(v)); }
    static TPoly monomial(long k, Rational v) {
        TPoly p;
        if (v != 0) p.coeffs.emplace(k, std::move(v));
        return p;
    }

    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const TPoly&) const = default;

    long min_exponent() const {
        if (is_zero()) throw std::domain_error("min_exponent of zero TPoly");
        return coeffs.begin()->first;
    }
    Rational coeff_at(long k) const {
        auto it = coeffs.find(k);
        return it == coeffs.end() ? Rational(0) : it->second;
    }
    Rational eval(const Rational& t0) const {
        // Horner over exponent gaps, highest power first.
        Rational acc(0);
        long prev = -1;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
            if (prev >= 0) acc *= pow_rational(t0, prev - it->first);
            acc += it->second;
            prev = it->first;
        }
        if (prev > 0) acc *= pow_rational(t0, prev);
        return acc;
    }
};

inline TPoly operator+(const TPoly& a, const TPoly& b) {
    TPoly r = a;
    for (const auto& [k, v] : b.coeffs) {
        Rational& c = r.coeffs[k];
        c += v;
        if (c == 0) r.coeffs.erase(k);
    }
    return r;
}
inline TPoly operator-(const TPoly& a) {
    TPoly r;
    for (const auto& [k, v] : a.coeffs) r.coeffs.emplace(k, -v);
    return r;
}
inline TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }
inline TPoly operator*(const TPoly& a, const TPoly& b) {
    TPoly r;
    for (const auto& [ka, va] : a.coeffs)
        for (const auto& [kb, vb] : b.coeffs) {
            Rational& c = r.coeffs[ka + kb];
            c += va * vb;
            if (c == 0) r.coeffs.erase(ka + kb);
        }
    return r;
}

namespace detail {
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const TPoly& c) { return c.is_zero(); }
inline Rational coeff_scale(const Rational& c, long s) { return c * s; }
inline TPoly coeff_scale(const TPoly& c, long s) {
    TPoly r;
    for (const auto& [k, v] : c.coeffs)
        if (Rational sv = v * s; sv != 0) r.coeffs.emplace(k, std::move(sv));
    return r;
}
}  // namespace detail

// Sparse polynomial in X, Y over coefficient ring C (Rational or TPoly).
template <class C>
struct Poly2 {
    std::map<Exponent, C> terms;  // canonical: lex-ordered keys, no zero coefficients

    Poly2() = default;
    static Poly2 monomial(int i, int j, C c) {
        Poly2 p;
        if (!detail::coeff_is_zero(c)) p.terms.emplace(Exponent{i, j}, std::move(c));
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Poly2&) const = default;

    void add_term(Exponent e, const C& c) {
        if (detail::coeff_is_zero(c)) return;
        auto [it, fresh] = terms.try_emplace(e, c);
        if (!fresh) {
            it->second = it->second + c;
            if (detail::coeff_is_zero(it->second)) terms.erase(it);
        }
    }
    C coeff(int i, int j) const {
        auto it = terms.find(Exponent{i, j});
        return it == terms.end() ? C{} : it->second;
    }
    std::vector<Exponent> support() const {
        std::vector<Exponent> s;
        s.reserve(terms.size());
        for (const auto& [e, c] : terms) s.push_back(e);
        return s;
    }
};

template <class C>
Poly2<C> operator+(const Poly2<C>& a, const Poly2<C>& b) {
    Poly2<C> r = a;
    for (const auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}
template <class C>
Poly2<C> operator-(const Poly2<C>& a) {
    Poly2<C> r;
    for (const auto& [e, c] : a.terms) r.terms.emplace(e, -c);
    return r;
}
template <class C>
Poly2<C> operator-(const Poly2<C>& a, const Poly2<C>& b) {
    return a + (-b);
}
template <class C>
Poly2<C> operator*(const Poly2<C>& a, const Poly2<C>& b) {
    Poly2<C> r;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            r.add_term(Exponent{ea.i + eb.i, ea.j + eb.j}, ca * cb);
    return r;
}

using BiPoly = Poly2<Rational>;
using ParamPoly = Poly2<TPoly>;

template <class C>
Poly2<C> partial(const Poly2<C>& p, Var v) {
    Poly2<C> r;
    for (const auto& [e, c] : p.terms) {
        if (v == Var::X) {
            if (e.i == 0) continue;
            r.add_term(Exponent{e.i - 1, e.j}, detail::coeff_scale(c, e.i));
        } else {
            if (e.j == 0) continue;
            r.add_term(Exponent{e.i, e.j - 1}, detail::coeff_scale(c, e.j));
        }
    }
    return r;
}

// Hess(Q) = Q_XX * Q_YY - Q_XY^2
template <class C>
Poly2<C> hessian(const Poly2<C>& p) {
    Poly2<C> px = partial(p, Var::X), py = partial(p, Var::Y);
    Poly2<C> pxx = partial(px, Var::X), pyy = partial(py, Var::Y), pxy = partial(px, Var::Y);
    return pxx * pyy - pxy * pxy;
}

inline BiPoly specialize_t(const ParamPoly& p, const Rational& t0) {
    BiPoly r;
    for (const auto& [e, c] : p.terms) r.add_term(e, c.eval(t0));
    return r;
}

// Promote a BiPoly to a ParamPoly with t-free coefficients.
inline ParamPoly as_param(const BiPoly& p) {
    ParamPoly r;
    for (const auto& [e, c] : p.terms) r.terms.emplace(e, TPoly::constant(c));
    return r;
}

inline Rational eval(const BiPoly& p, const Rational& x, const Rational& y) {
    // Horner in X; inner coefficients are polynomials in Y evaluated on the fly.
    Rational acc(0);
    int cur_i = -1;
    Rational row(0);
    std::vector<std::pair<Exponent, Rational>> ts(p.terms.begin(), p.terms.end());
    // Iterate highest X-power first.
    for (auto it = ts.rbegin(); it != ts.rend(); ++it) {
        const auto& [e, c] = *it;
        if (e.i != cur_i) {
            if (cur_i >= 0) acc += row * pow_rational(x, cur_i);
            row = 0;
            cur_i = e.i;
        }
        row += c * pow_rational(y, e.j);
    }
    if (cur_i >= 0) acc += row * pow_rational(x, cur_i);
    return acc;
}

inline int eval_sign(const BiPoly& p, const Rational& x, const Rational& y) {
    return sign_of(eval(p, x, y));
}

inline int total_degree(const BiPoly& p) {
    if (p.is_zero()) throw std::domain_error("total_degree of zero polynomial");
    int d = 0;
    for (const auto& [e, c] : p.terms) d = std::max(d, e.i + e.j);
    return d;
}

inline int degree_in(const BiPoly& p, Var v) {
    if (p.is_zero()) throw std::domain_error("degree_in of zero polynomial");
    int d = 0;
    for (const auto& [e, c] : p.terms) d = std::max(d, v == Var::X ? e.i : e.j);
    return d;
}

// Coefficient of var^k, as a polynomial in the other variable.
inline BiPoly coeff_of_power(const BiPoly& p, Var v, int k) {
    BiPoly r;
    for (const auto& [e, c] : p.terms) {
        if (v == Var::X && e.i == k) r.add_term(Exponent{0, e.j}, c);
        if (v == Var::Y && e.j == k) r.add_term(Exponent{e.i, 0}, c);
    }
    return r;
}

// Largest X^a Y^b dividing p.
inline Exponent monomial_content(const BiPoly& p) {
    if (p.is_zero()) throw std::domain_error("monomial_content of zero polynomial");
    int mi = p.terms.begin()->first.i, mj = p.terms.begin()->first.j;
    for (const auto& [e, c] : p.terms) {
        mi = std::min(mi, e.i);
        mj = std::min(mj, e.j);
    }
    return {mi, mj};
}

inline BiPoly divide_monomial(const BiPoly& p, Exponent m) {
    BiPoly r;
    for (const auto& [e, c] : p.terms) {
        if (e.i < m.i || e.j < m.j) throw std::domain_error("monomial does not divide");
        r.terms.emplace(Exponent{e.i - m.i, e.j - m.j}, c);
    }
    return r;
}

inline std::string to_string(const BiPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : p.terms) {
        if (!first) os << " + ";
        os << "(" << c << ")";
        if (e.i) os << "*X^" << e.i;
        if (e.j) os << "*Y^" << e.j;
        first = false;
    }
    return os.str();
}

}  // namespace hessweave
