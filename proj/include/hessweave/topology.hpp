#pragma once

#include "ratpoly.hpp"
#include "xfloat.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hessweave {

// Quadrant order everywhere: index 0..3 = (+,+), (+,-), (-,+), (-,-);
// first sign is X, second is Y.
enum class Quadrant : int { PP = 0, PN = 1, NP = 2, NN = 3 };

inline int x_sign_of(Quadrant q) { return (q == Quadrant::PP || q == Quadrant::PN) ? 1 : -1; }
inline int y_sign_of(Quadrant q) { return (q == Quadrant::PP || q == Quadrant::NP) ? 1 : -1; }

// Log-scale sampling window: n points per axis at |coord| = 2^u with u evenly
// spaced in [-K, K]. Each sample is snapped to an exact dyadic (53-bit mantissa)
// so signs can be certified exactly.
struct Window {
    Quadrant quadrant = Quadrant::PP;
    Rational K = 8;
    int n = 512;
};

struct SignGrid {
    Window window;
    std::vector<signed char> signs;  // n*n; index iy*n + ix, |X| and |Y| ascending

    int at(int ix, int iy) const {
        return signs[static_cast<std::size_t>(iy) * window.n + ix];
    }
};

struct CensusComponent {
    bool compact = false;
    int quadrant = -1;  // 0..3 when strictly inside one open quadrant, else -1
    // bounding box in global cell indices (cells 0..2n-1 per axis; axis sample at n)
    long min_cx = 0, max_cx = 0, min_cy = 0, max_cy = 0;
    // deterministic subsample of this component's sign-change cells, (cx, cy)
    std::vector<std::pair<long, long>> cells;
};

struct ComponentCensus {
    int compact_in_R2 = 0;
    std::array<int, 4> per_quadrant{};  // PP, PN, NP, NN (compact and quadrant-pure)
    int boundary_touching = 0;
    int resolution = 0;  // n per quadrant axis; the global grid is (2n+1)^2
    Rational K = 0;
    bool stable = false;  // census at 2n identical
    std::vector<CensusComponent> components;
};

inline bool census_equal(const ComponentCensus& a, const ComponentCensus& b) {
    return a.compact_in_R2 == b.compact_in_R2 && a.per_quadrant == b.per_quadrant &&
           a.boundary_touching == b.boundary_touching;
}

namespace detail {

// Magnitudes 2^{u_i}, u_i = K*(2i+1-n)/n, i = 0..n-1 (ascending). Each returned
// XFloat *is* the sample point (an exact dyadic), not an approximation of it.
inline std::vector<XFloat> log_mag_samples(const Rational& K, int n) {
    std::vector<XFloat> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        Rational u = K * Rational(2 * i + 1 - n) / n;
        Integer nu = num(u), du = den(u);
        Integer fl = nu / du;
        if (fl * du != nu && ((nu < 0) != (du < 0))) --fl;
        double frac = Rational(u - Rational(fl)).convert_to<double>();
        double m = std::exp2(frac);
        if (m >= 2.0) m = std::nextafter(2.0, 1.0);
        if (m < 1.0) m = 1.0;
        out.push_back(XFloat{m, fl.convert_to<std::int64_t>()});
    }
    return out;
}

// 2n+1 signed coordinates: negative magnitudes descending, exact zero, then
// positive magnitudes ascending. Index n is the coordinate axis.
inline std::vector<XFloat> global_coords(const Rational& K, int n) {
    auto mags = log_mag_samples(K, n);
    std::vector<XFloat> out(2 * n + 1);
    for (int i = 0; i < n; ++i) {
        out[i] = xf_neg(mags[n - 1 - i]);
        out[n + 1 + i] = mags[i];
    }
    out[n] = XFloat::zero();
    return out;
}

// Exact dyadic integer value v * 2^sh.
struct Dyadic {
    Integer v = 0;
    std::int64_t sh = 0;

    bool is_zero() const { return v == 0; }
    int sign() const { return v == 0 ? 0 : (v > 0 ? 1 : -1); }
};

inline void dy_normalize(Dyadic& a) {
    if (a.v == 0) {
        a.sh = 0;
        return;
    }
    unsigned tz = boost::multiprecision::lsb(a.v < 0 ? Integer(-a.v) : a.v);
    if (tz) {
        a.v >>= tz;
        a.sh += tz;
    }
}

inline Dyadic dy_of_xfloat(const XFloat& x) {
    if (x.is_zero()) return {};
    double md = x.m;
    std::int64_t e = x.e;
    while (md != std::floor(md)) {
        md *= 2.0;
        --e;
    }
    Dyadic d{Integer(static_cast<std::int64_t>(md)), e};
    dy_normalize(d);
    return d;
}

inline Dyadic dy_mul(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.v * b.v, a.sh + b.sh};
}

inline Dyadic dy_add(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Dyadic r;
    if (a.sh <= b.sh)
        r = {a.v + (b.v << static_cast<unsigned>(b.sh - a.sh)), a.sh};
    else
        r = {(a.v << static_cast<unsigned>(a.sh - b.sh)) + b.v, b.sh};
    dy_normalize(r);
    return r;
}

// Terms of F bucketed by X-exponent, with three coefficient forms: nearest
// XFloat (fast screen), |XFloat| (running condition sum), and denominator-
// cleared integers (exact fallback).
struct TermGroup {
    int i = 0;
    std::vector<int> js;  // descending
    std::vector<XFloat> cs;
    std::vector<XFloat> ca;
    std::vector<Integer> cz;
};

struct GridTerms {
    std::vector<TermGroup> groups;  // ascending i
    int term_count = 0;
    int max_j = 0;
};

inline GridTerms grid_terms(const BiPoly& F) {
    GridTerms g;
    Integer L = 1;
    for (const auto& [e, c] : F.terms) L = boost::multiprecision::lcm(L, den(c));
    std::map<int, TermGroup> by_i;
    for (const auto& [e, c] : F.terms) {
        TermGroup& tg = by_i[e.i];
        tg.i = e.i;
        tg.js.push_back(e.j);
        XFloat mid = xinterval_of_rational(c).lo;
        tg.cs.push_back(mid);
        tg.ca.push_back(xf_abs(mid));
        tg.cz.push_back(num(c) * (L / den(c)));
        ++g.term_count;
        g.max_j = std::max(g.max_j, e.j);
    }
    for (auto& [i, tg] : by_i) {
        std::reverse(tg.js.begin(), tg.js.end());
        std::reverse(tg.cs.begin(), tg.cs.end());
        std::reverse(tg.ca.begin(), tg.ca.end());
        std::reverse(tg.cz.begin(), tg.cz.end());
        g.groups.push_back(std::move(tg));
    }
    return g;
}

// Exact signs along grid rows. Fast path: round-to-nearest XFloat Horner for
// the value together with the same-shaped sum of absolute values C; the sign is
// certified when |value| > theta*C with theta dominating the accumulated
// rounding (every op is correctly rounded, so the classic Horner bound
// gamma_k*C with k = chain length applies). Anything not certified is decided
// by exact integer-dyadic evaluation.
class RowEvaluator {
  public:
    RowEvaluator(const BiPoly& F, std::vector<XFloat> xs, std::vector<XFloat> ys)
        : terms_(grid_terms(F)), xs_(std::move(xs)), ys_(std::move(ys)) {
        const std::size_t G = terms_.groups.size(), NX = xs_.size();
        long chain = 2L * terms_.term_count + terms_.max_j + (G ? terms_.groups.back().i : 0) + 16;
        theta_ = XFloat::make(static_cast<double>(8 * chain), -52);
        xpow_.resize(G * NX);
        for (std::size_t c = 0; c < NX; ++c) {
            XFloat acc{1.0, 0};
            int cur = 0;
            for (std::size_t gi = 0; gi < G; ++gi) {
                for (; cur < terms_.groups[gi].i; ++cur) acc = xf_mul(acc, xs_[c], 0);
                xpow_[gi * NX + c] = acc;
            }
        }
        xdy_.resize(NX);
        for (std::size_t c = 0; c < NX; ++c) xdy_[c] = dy_of_xfloat(xs_[c]);
        rowR_.resize(G);
        rowA_.resize(G);
        rowZ_.resize(G);
    }

    void set_row(std::size_t iy) {
        iy_ = iy;
        const XFloat y = ys_[iy];
        const XFloat ay = xf_abs(y);
        for (std::size_t gi = 0; gi < terms_.groups.size(); ++gi) {
            const TermGroup& tg = terms_.groups[gi];
            XFloat r = XFloat::zero(), a = XFloat::zero();
            int prev = -1;
            for (std::size_t k = 0; k < tg.js.size(); ++k) {
                if (prev >= 0)
                    for (int q = tg.js[k]; q < prev; ++q) {
                        r = xf_mul(r, y, 0);
                        a = xf_mul(a, ay, 0);
                    }
                r = xf_add(r, tg.cs[k], 0);
                a = xf_add(a, tg.ca[k], 0);
                prev = tg.js[k];
            }
            for (int q = 0; q < prev; ++q) {
                r = xf_mul(r, y, 0);
                a = xf_mul(a, ay, 0);
            }
            rowR_[gi] = r;
            rowA_[gi] = a;
        }
        row_exact_ready_ = false;
    }

    int sign_at(std::size_t ix) {
        const std::size_t G = terms_.groups.size(), NX = xs_.size();
        XFloat s = XFloat::zero(), c = XFloat::zero();
        for (std::size_t gi = 0; gi < G; ++gi) {
            const XFloat xp = xpow_[gi * NX + ix];
            if (xp.is_zero() || rowA_[gi].is_zero()) continue;
            s = xf_add(s, xf_mul(rowR_[gi], xp, 0), 0);
            c = xf_add(c, xf_mul(rowA_[gi], xf_abs(xp), 0), 0);
        }
        if (c.is_zero()) return 0;  // every term vanishes exactly here
        if (xf_less(xf_mul(c, theta_, 0), xf_abs(s))) return s.sign();
        return exact_sign(ix);
    }

  private:
    int exact_sign(std::size_t ix) {
        const std::size_t G = terms_.groups.size();
        if (!row_exact_ready_) {
            const Dyadic yd = dy_of_xfloat(ys_[iy_]);
            for (std::size_t gi = 0; gi < G; ++gi) {
                const TermGroup& tg = terms_.groups[gi];
                Dyadic r;
                int prev = -1;
                for (std::size_t k = 0; k < tg.js.size(); ++k) {
                    if (prev >= 0)
                        for (int q = tg.js[k]; q < prev; ++q) r = dy_mul(r, yd);
                    r = dy_add(r, Dyadic{tg.cz[k], 0});
                    prev = tg.js[k];
                }
                for (int q = 0; q < prev; ++q) r = dy_mul(r, yd);
                rowZ_[gi] = r;
            }
            row_exact_ready_ = true;
        }
        const Dyadic& xd = xdy_[ix];
        Dyadic acc;
        int prev = -1;
        for (std::size_t gi = G; gi-- > 0;) {
            int i = terms_.groups[gi].i;
            if (prev >= 0)
                for (int q = i; q < prev; ++q) acc = dy_mul(acc, xd);
            acc = dy_add(acc, rowZ_[gi]);
            prev = i;
        }
        if (prev > 0)
            for (int q = 0; q < prev; ++q) acc = dy_mul(acc, xd);
        return acc.sign();
    }

    GridTerms terms_;
    std::vector<XFloat> xs_, ys_;
    std::vector<XFloat> xpow_;  // X^{group i} per column
    std::vector<Dyadic> xdy_;
    std::vector<XFloat> rowR_, rowA_;
    std::vector<Dyadic> rowZ_;
    std::size_t iy_ = 0;
    bool row_exact_ready_ = false;
    XFloat theta_;
};

// Row evaluator for the full axis-stitched grid. Columns come in mirror pairs
// (-|x|, +|x|): splitting groups by x-exponent parity gives both column values
// from one sweep (even sum E, odd sum O: right = E+O, left = E-O), and the
// condition sum is shared. The axis column x=0 only sees the i=0 group.
class GlobalEvaluator {
  public:
    GlobalEvaluator(const BiPoly& F, const Rational& K, int n)
        : terms_(grid_terms(F)), mags_(log_mag_samples(K, n)), n_(n) {
        const std::size_t G = terms_.groups.size();
        long chain = 2L * terms_.term_count + terms_.max_j + (G ? terms_.groups.back().i : 0) + 16;
        theta_ = XFloat::make(static_cast<double>(8 * chain), -52);
        zero_group_ = -1;
        for (std::size_t gi = 0; gi < G; ++gi)
            if (terms_.groups[gi].i == 0) zero_group_ = static_cast<int>(gi);
        xpow_.resize(G * n_);
        for (int c = 0; c < n_; ++c) {
            XFloat acc{1.0, 0};
            int cur = 0;
            for (std::size_t gi = 0; gi < G; ++gi) {
                for (; cur < terms_.groups[gi].i; ++cur) acc = xf_mul(acc, mags_[c], 0);
                xpow_[gi * n_ + c] = acc;
            }
        }
        xdy_.resize(n_);
        for (int c = 0; c < n_; ++c) xdy_[c] = dy_of_xfloat(mags_[c]);
        rowR_.resize(G);
        rowA_.resize(G);
        rowZ_.resize(G);
    }

    long width() const { return 2L * n_ + 1; }

    // iy in [0, 2n]: row n is the y=0 axis, rows below/above are -/+ magnitudes.
    void set_row(long iy) {
        XFloat y = XFloat::zero();
        ydy_ = Dyadic{};
        if (iy != n_) {
            const int k = iy < n_ ? static_cast<int>(n_ - 1 - iy) : static_cast<int>(iy - n_ - 1);
            y = iy < n_ ? xf_neg(mags_[k]) : mags_[k];
            ydy_ = xdy_[k];
            if (iy < n_) ydy_.v = -ydy_.v;
        }
        const XFloat ay = xf_abs(y);
        for (std::size_t gi = 0; gi < terms_.groups.size(); ++gi) {
            const TermGroup& tg = terms_.groups[gi];
            XFloat r = XFloat::zero(), a = XFloat::zero();
            int prev = -1;
            for (std::size_t k = 0; k < tg.js.size(); ++k) {
                if (prev >= 0)
                    for (int q = tg.js[k]; q < prev; ++q) {
                        r = xf_mul(r, y, 0);
                        a = xf_mul(a, ay, 0);
                    }
                r = xf_add(r, tg.cs[k], 0);
                a = xf_add(a, tg.ca[k], 0);
                prev = tg.js[k];
            }
            for (int q = 0; q < prev; ++q) {
                r = xf_mul(r, y, 0);
                a = xf_mul(a, ay, 0);
            }
            rowR_[gi] = r;
            rowA_[gi] = a;
        }
        row_exact_ready_ = false;
    }

    // Writes all 2n+1 signs of the current row (index 0 = most negative x).
    void row_signs(signed char* out) {
        const std::size_t G = terms_.groups.size();
        for (int k = 0; k < n_; ++k) {
            XFloat E = XFloat::zero(), O = XFloat::zero(), c = XFloat::zero();
            for (std::size_t gi = 0; gi < G; ++gi) {
                if (rowA_[gi].is_zero()) continue;
                const XFloat xp = xpow_[gi * n_ + k];
                const XFloat term = xf_mul(rowR_[gi], xp, 0);
                if (terms_.groups[gi].i % 2 == 0)
                    E = xf_add(E, term, 0);
                else
                    O = xf_add(O, term, 0);
                c = xf_add(c, xf_mul(rowA_[gi], xp, 0), 0);
            }
            const long right = n_ + 1 + k, left = n_ - 1 - k;
            if (c.is_zero()) {
                out[right] = 0;
                out[left] = 0;
                continue;
            }
            const XFloat tau = xf_mul(c, theta_, 0);
            const XFloat sr = xf_add(E, O, 0), sl = xf_add(E, xf_neg(O), 0);
            out[right] = static_cast<signed char>(
                xf_less(tau, xf_abs(sr)) ? sr.sign() : exact_sign(k, +1));
            out[left] = static_cast<signed char>(
                xf_less(tau, xf_abs(sl)) ? sl.sign() : exact_sign(k, -1));
        }
        if (zero_group_ < 0) {
            out[n_] = 0;
        } else if (rowA_[zero_group_].is_zero()) {
            out[n_] = 0;
        } else {
            const XFloat s0 = rowR_[zero_group_];
            const XFloat tau0 = xf_mul(rowA_[zero_group_], theta_, 0);
            if (xf_less(tau0, xf_abs(s0))) {
                out[n_] = static_cast<signed char>(s0.sign());
            } else {
                ensure_exact_row();
                out[n_] = static_cast<signed char>(rowZ_[zero_group_].sign());
            }
        }
    }

  private:
    void ensure_exact_row() {
        if (row_exact_ready_) return;
        for (std::size_t gi = 0; gi < terms_.groups.size(); ++gi) {
            const TermGroup& tg = terms_.groups[gi];
            Dyadic r;
            int prev = -1;
            for (std::size_t k = 0; k < tg.js.size(); ++k) {
                if (prev >= 0)
                    for (int q = tg.js[k]; q < prev; ++q) r = dy_mul(r, ydy_);
                r = dy_add(r, Dyadic{tg.cz[k], 0});
                prev = tg.js[k];
            }
            for (int q = 0; q < prev; ++q) r = dy_mul(r, ydy_);
            rowZ_[gi] = r;
        }
        row_exact_ready_ = true;
    }

    int exact_sign(int k, int xsgn) {
        ensure_exact_row();
        Dyadic xd = xdy_[k];
        if (xsgn < 0) xd.v = -xd.v;
        Dyadic acc;
        int prev = -1;
        for (std::size_t gi = terms_.groups.size(); gi-- > 0;) {
            int i = terms_.groups[gi].i;
            if (prev >= 0)
                for (int q = i; q < prev; ++q) acc = dy_mul(acc, xd);
            acc = dy_add(acc, rowZ_[gi]);
            prev = i;
        }
        if (prev > 0)
            for (int q = 0; q < prev; ++q) acc = dy_mul(acc, xd);
        return acc.sign();
    }

    GridTerms terms_;
    std::vector<XFloat> mags_;
    int n_;
    int zero_group_;
    std::vector<XFloat> xpow_;
    std::vector<Dyadic> xdy_;
    std::vector<XFloat> rowR_, rowA_;
    std::vector<Dyadic> rowZ_;
    Dyadic ydy_;
    bool row_exact_ready_ = false;
    XFloat theta_;
};

}  // namespace detail

inline SignGrid sign_grid(const BiPoly& F, const Window& w) {
    if (F.is_zero()) throw std::invalid_argument("sign_grid: zero polynomial");
    if (w.n < 16) throw std::invalid_argument("sign_grid: resolution must be >= 16");
    if (!(w.K > 0)) throw std::invalid_argument("sign_grid: window bound must be positive");
    auto mags = detail::log_mag_samples(w.K, w.n);
    std::vector<XFloat> xs = mags, ys = mags;
    if (x_sign_of(w.quadrant) < 0)
        for (auto& v : xs) v = xf_neg(v);
    if (y_sign_of(w.quadrant) < 0)
        for (auto& v : ys) v = xf_neg(v);
    detail::RowEvaluator ev(F, std::move(xs), std::move(ys));
    SignGrid g{w, std::vector<signed char>(static_cast<std::size_t>(w.n) * w.n)};
    for (int iy = 0; iy < w.n; ++iy) {
        ev.set_row(iy);
        for (int ix = 0; ix < w.n; ++ix)
            g.signs[static_cast<std::size_t>(iy) * w.n + ix] =
                static_cast<signed char>(ev.sign_at(ix));
    }
    return g;
}

namespace detail {

// Union-find over streamed marching-squares cells; per root keeps the bounding
// box, boundary contact, and a capped, stride-thinned cell subsample.
class CellUnionFind {
  public:
    static constexpr std::size_t kCellCap = 4096;

    struct Info {
        long min_cx, max_cx, min_cy, max_cy;
        bool boundary = false;
        long stride = 1, seen = 0;
        std::vector<std::pair<long, long>> cells;
    };

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    int make(long c0, long c1, long cy, bool boundary) {
        int id = static_cast<int>(parent_.size());
        parent_.push_back(id);
        info_.push_back(Info{c0, c1, cy, cy, boundary, 1, 0, {}});
        return id;
    }

    int unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return a;
        if (a > b) std::swap(a, b);
        parent_[b] = a;
        Info& ia = info_[a];
        Info& ib = info_[b];
        ia.min_cx = std::min(ia.min_cx, ib.min_cx);
        ia.max_cx = std::max(ia.max_cx, ib.max_cx);
        ia.min_cy = std::min(ia.min_cy, ib.min_cy);
        ia.max_cy = std::max(ia.max_cy, ib.max_cy);
        ia.boundary = ia.boundary || ib.boundary;
        ia.seen += ib.seen;
        ia.stride = std::max(ia.stride, ib.stride);
        ia.cells.insert(ia.cells.end(), ib.cells.begin(), ib.cells.end());
        ib.cells.clear();
        ib.cells.shrink_to_fit();
        thin(ia);
        return a;
    }

    void add_cells(int root, long c0, long c1, long cy) {
        root = find(root);
        Info& in = info_[root];
        in.min_cx = std::min(in.min_cx, c0);
        in.max_cx = std::max(in.max_cx, c1);
        in.min_cy = std::min(in.min_cy, cy);
        in.max_cy = std::max(in.max_cy, cy);
        for (long c = c0; c <= c1; ++c) {
            if (in.seen % in.stride == 0) {
                in.cells.emplace_back(c, cy);
                thin(in);
            }
            ++in.seen;
        }
    }

    std::vector<int> roots() {
        std::vector<int> r;
        for (int x = 0; x < static_cast<int>(parent_.size()); ++x)
            if (find(x) == x) r.push_back(x);
        return r;
    }

    const Info& info(int root) const { return info_[root]; }

  private:
    void thin(Info& in) {
        while (in.cells.size() > kCellCap) {
            std::vector<std::pair<long, long>> kept;
            kept.reserve(in.cells.size() / 2 + 1);
            for (std::size_t k = 0; k < in.cells.size(); k += 2) kept.push_back(in.cells[k]);
            in.cells = std::move(kept);
            in.stride *= 2;
        }
    }

    std::vector<int> parent_;
    std::vector<Info> info_;
};

inline bool cell_crossed(int a, int b, int c, int d) {
    return (a > 0 || b > 0 || c > 0 || d > 0) && (a < 0 || b < 0 || c < 0 || d < 0);
}

// One census pass at a fixed resolution (no doubling audit).
inline ComponentCensus census_once(const BiPoly& F, const Rational& K, int n) {
    const long N = 2L * n + 1;
    GlobalEvaluator ev(F, K, n);
    std::vector<signed char> prev(N), cur(N);
    std::vector<int> prev_lab(N - 1, -1), cur_lab(N - 1, -1);
    CellUnionFind uf;
    for (long iy = 0; iy < N; ++iy) {
        ev.set_row(iy);
        ev.row_signs(cur.data());
        if (iy > 0) {
            const long cy = iy - 1;
            std::fill(cur_lab.begin(), cur_lab.end(), -1);
            for (long cx = 0; cx < N - 1;) {
                if (!cell_crossed(prev[cx], prev[cx + 1], cur[cx], cur[cx + 1])) {
                    ++cx;
                    continue;
                }
                const long c0 = cx;
                while (cx < N - 1 && cell_crossed(prev[cx], prev[cx + 1], cur[cx], cur[cx + 1]))
                    ++cx;
                const long c1 = cx - 1;
                int root = uf.make(c0, c1, cy, c0 == 0 || c1 == N - 2 || cy == 0 || cy == N - 2);
                for (long q = c0; q <= c1; ++q)
                    if (prev_lab[q] >= 0) root = uf.unite(root, prev_lab[q]);
                for (long q = c0; q <= c1; ++q) cur_lab[q] = root;
                uf.add_cells(root, c0, c1, cy);
            }
            std::swap(prev_lab, cur_lab);
        }
        std::swap(prev, cur);
    }

    ComponentCensus cen;
    cen.resolution = n;
    cen.K = K;
    for (int r : uf.roots()) {
        const auto& in = uf.info(r);
        CensusComponent comp;
        comp.min_cx = in.min_cx;
        comp.max_cx = in.max_cx;
        comp.min_cy = in.min_cy;
        comp.max_cy = in.max_cy;
        comp.cells = in.cells;
        if (in.boundary) {
            ++cen.boundary_touching;
        } else {
            comp.compact = true;
            ++cen.compact_in_R2;
            const int sx = in.min_cx >= n + 1 ? 1 : (in.max_cx <= n - 2 ? -1 : 0);
            const int sy = in.min_cy >= n + 1 ? 1 : (in.max_cy <= n - 2 ? -1 : 0);
            if (sx != 0 && sy != 0) {
                comp.quadrant = (sx > 0 ? 0 : 2) + (sy > 0 ? 0 : 1);
                ++cen.per_quadrant[comp.quadrant];
            }
        }
        cen.components.push_back(std::move(comp));
    }
    std::sort(cen.components.begin(), cen.components.end(),
              [](const CensusComponent& a, const CensusComponent& b) {
                  return std::tie(a.min_cy, a.min_cx, a.max_cy, a.max_cx) <
                         std::tie(b.min_cy, b.min_cx, b.max_cy, b.max_cx);
              });
    return cen;
}

}  // namespace detail

// Marching-squares census on the global grid (four quadrants stitched through
// exact axis samples), with a doubled-resolution audit for the stability flag.
inline ComponentCensus count_components(const BiPoly& F, const Rational& K, int n,
                                        bool audit = true) {
    if (F.is_zero()) throw std::invalid_argument("count_components: zero polynomial");
    if (n < 16) throw std::invalid_argument("count_components: resolution must be >= 16");
    if (!(K > 0)) throw std::invalid_argument("count_components: window bound must be positive");
    ComponentCensus cen = detail::census_once(F, K, n);
    if (audit) cen.stable = census_equal(cen, detail::census_once(F, K, 2 * n));
    return cen;
}

// b^2 - 4ac for F = a*var^2 + b*var + c.
inline BiPoly quadratic_discriminant(const BiPoly& F, Var var) {
    if (F.is_zero() || degree_in(F, var) != 2)
        throw std::invalid_argument("quadratic_discriminant: degree in variable is not 2");
    BiPoly a = coeff_of_power(F, var, 2);
    BiPoly b = coeff_of_power(F, var, 1);
    BiPoly c = coeff_of_power(F, var, 0);
    return b * b - BiPoly::monomial(0, 0, Rational(4)) * a * c;
}

enum class EmptyFamily { OnePlusY, XPlusY, XPlusY2, OnePlusX };
enum class OvalFamily { XPlusYPlusY2, XYPlusXPlusY2, OnePlusXPlusY };

inline BiPoly empty_family_poly(EmptyFamily f) {
    const Rational one(1);
    switch (f) {
        case EmptyFamily::OnePlusY:
            return BiPoly::monomial(0, 0, one) + BiPoly::monomial(0, 1, one);
        case EmptyFamily::XPlusY:
            return BiPoly::monomial(1, 0, one) + BiPoly::monomial(0, 1, one);
        case EmptyFamily::XPlusY2:
            return BiPoly::monomial(1, 0, one) + BiPoly::monomial(0, 2, one);
        case EmptyFamily::OnePlusX:
            return BiPoly::monomial(0, 0, one) + BiPoly::monomial(1, 0, one);
    }
    throw std::invalid_argument("empty_family_poly: bad family");
}

inline BiPoly oval_family_poly(OvalFamily f) {
    const Rational one(1);
    switch (f) {
        case OvalFamily::XPlusYPlusY2:
            return BiPoly::monomial(1, 0, one) + BiPoly::monomial(0, 1, one) +
                   BiPoly::monomial(0, 2, one);
        case OvalFamily::XYPlusXPlusY2:
            return BiPoly::monomial(1, 1, one) + BiPoly::monomial(1, 0, one) +
                   BiPoly::monomial(0, 2, one);
        case OvalFamily::OnePlusXPlusY:
            return BiPoly::monomial(0, 0, one) + BiPoly::monomial(1, 0, one) +
                   BiPoly::monomial(0, 1, one);
    }
    throw std::invalid_argument("oval_family_poly: bad family");
}

namespace detail {

// True iff D < 0 everywhere on the punctured line/plane: D must be a monomial
// with even exponents times a negative constant.
inline bool everywhere_negative(const BiPoly& D) {
    if (D.is_zero()) return false;
    Exponent m = monomial_content(D);
    BiPoly rest = divide_monomial(D, m);
    if (rest.terms.size() != 1) return false;
    const auto& [e, c] = *rest.terms.begin();
    return e.i == 0 && e.j == 0 && c < 0 && m.i % 2 == 0 && m.j % 2 == 0;
}

inline bool grid_one_sign(const BiPoly& F, const Rational& K, int n) {
    int common = 0;
    for (Quadrant q : {Quadrant::PP, Quadrant::PN, Quadrant::NP, Quadrant::NN}) {
        SignGrid g = sign_grid(F, Window{q, K, n});
        for (signed char s : g.signs) {
            if (s == 0) return false;
            if (common == 0) common = s;
            if (s != common) return false;
        }
    }
    return true;
}

}  // namespace detail

// Hess(X^i Y^j * family) has no real points in (R*)^2: certify via the
// negative-discriminant argument on the monomial-stripped quotient, and
// cross-check with an all-one-sign grid. True iff both certify.
inline bool check_empty_piece(int i, int j, EmptyFamily family, int n = 256) {
    if (i < 2 || j < 2) throw std::invalid_argument("check_empty_piece: need i, j >= 2");
    BiPoly H = hessian(BiPoly::monomial(i, j, Rational(1)) * empty_family_poly(family));
    if (H.is_zero()) return false;
    BiPoly H0 = divide_monomial(H, monomial_content(H));
    bool disc_ok = false;
    for (Var v : {Var::X, Var::Y}) {
        if (degree_in(H0, v) != 2) continue;
        if (detail::everywhere_negative(quadratic_discriminant(H0, v))) {
            disc_ok = true;
            break;
        }
    }
    return disc_ok && detail::grid_one_sign(H, Rational(8), n);
}

// Hess(X^i Y^j * family) consists of exactly one compact oval in (R*)^2:
// (a) the X-discriminant of the stripped quotient is, after stripping its own
// monomial, a Y-quadratic with positive discriminant (two distinct real roots);
// (b) the census finds exactly one compact component, stably.
inline bool check_oval_piece(int i, int j, OvalFamily family, int n = 512) {
    if (i < 2 || j < 2) throw std::invalid_argument("check_oval_piece: need i, j >= 2");
    BiPoly H = hessian(BiPoly::monomial(i, j, Rational(1)) * oval_family_poly(family));
    if (H.is_zero()) return false;
    BiPoly H0 = divide_monomial(H, monomial_content(H));
    if (degree_in(H0, Var::X) != 2) return false;
    BiPoly D = quadratic_discriminant(H0, Var::X);
    if (D.is_zero()) return false;
    BiPoly D0 = divide_monomial(D, monomial_content(D));
    if (degree_in(D0, Var::X) != 0 || degree_in(D0, Var::Y) != 2) return false;
    BiPoly disc2 = quadratic_discriminant(D0, Var::Y);
    bool disc_ok = !disc2.is_zero() && disc2.terms.size() == 1 &&
                   disc2.terms.begin()->first == Exponent{0, 0} &&
                   disc2.terms.begin()->second > 0;
    if (!disc_ok) return false;
    ComponentCensus cen = count_components(H, Rational(12), n);
    return cen.compact_in_R2 == 1 && cen.stable;
}

// Interval extension of F over a coordinate rectangle.
inline XInterval eval_interval(const BiPoly& F, const XInterval& X, const XInterval& Y) {
    auto xi_pow = [](const XInterval& b, int k) {
        XInterval r = XInterval::point(XFloat{1.0, 0});
        for (int q = 0; q < k; ++q) r = xi_mul(r, b);
        return r;
    };
    XInterval acc = XInterval::point(XFloat::zero());
    int prev_i = -1;
    auto it = F.terms.rbegin();
    while (it != F.terms.rend()) {
        const int gi = it->first.i;
        XInterval row = XInterval::point(XFloat::zero());
        int prev_j = -1;
        while (it != F.terms.rend() && it->first.i == gi) {
            if (prev_j >= 0) row = xi_mul(row, xi_pow(Y, prev_j - it->first.j));
            row = xi_add(row, xinterval_of_rational(it->second));
            prev_j = it->first.j;
            ++it;
        }
        if (prev_j > 0) row = xi_mul(row, xi_pow(Y, prev_j));
        if (prev_i >= 0) acc = xi_mul(acc, xi_pow(X, prev_i - gi));
        acc = xi_add(acc, row);
        prev_i = gi;
    }
    if (prev_i > 0) acc = xi_mul(acc, xi_pow(X, prev_i));
    return acc;
}

namespace detail {

// --- exact dyadic interval arithmetic (slow tier of grad_cover) ---
//
// Near the folds of a patchworked Hessian the leading monomials cancel to a
// relative depth ~ t^gap, far below double's 2^-52 rounding floor, so XFloat
// intervals can neither certify signs there nor even represent boxes that
// thin.  The exact tier carries interval endpoints as dyadics and evaluates
// term-by-term with no rounding at all: enclosure width shrinks linearly with
// box width, so bisection always converges on a sign.

inline Dyadic dy_neg(const Dyadic& a) { return {-a.v, a.sh}; }
inline Dyadic dy_half(const Dyadic& a) { return a.is_zero() ? a : Dyadic{a.v, a.sh - 1}; }

inline bool dy_less(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb;
    if (sa == 0) return false;
    if (a.sh <= b.sh) return a.v < (b.v << static_cast<unsigned>(b.sh - a.sh));
    return (a.v << static_cast<unsigned>(a.sh - b.sh)) < b.v;
}

inline Dyadic dy_pow(const Dyadic& a, int k) {
    if (k == 0) return {Integer(1), 0};
    if (a.is_zero()) return {};
    return {boost::multiprecision::pow(a.v, static_cast<unsigned>(k)),
            a.sh * static_cast<std::int64_t>(k)};
}

struct DyInterval {
    Dyadic lo, hi;
};

inline DyInterval di_add(const DyInterval& a, const DyInterval& b) {
    return {dy_add(a.lo, b.lo), dy_add(a.hi, b.hi)};
}

inline DyInterval di_mul(const DyInterval& a, const DyInterval& b) {
    const Dyadic p[4] = {dy_mul(a.lo, b.lo), dy_mul(a.lo, b.hi), dy_mul(a.hi, b.lo),
                         dy_mul(a.hi, b.hi)};
    DyInterval r{p[0], p[0]};
    for (int q = 1; q < 4; ++q) {
        if (dy_less(p[q], r.lo)) r.lo = p[q];
        if (dy_less(r.hi, p[q])) r.hi = p[q];
    }
    return r;
}

// Parity-aware power: tight for intervals not straddling zero.
inline DyInterval di_pow(const DyInterval& b, int k) {
    if (k == 0) return {Dyadic{Integer(1), 0}, Dyadic{Integer(1), 0}};
    Dyadic pl = dy_pow(b.lo, k), ph = dy_pow(b.hi, k);
    if (k % 2 == 1) return {pl, ph};
    if (b.lo.sign() >= 0) return {pl, ph};
    if (b.hi.sign() <= 0) return {ph, pl};
    return {Dyadic{}, dy_less(pl, ph) ? ph : pl};
}

struct DyTerm {
    int i = 0, j = 0;
    DyInterval c;
};

struct DyTermList {
    std::vector<DyTerm> terms;
    int deg_x = 0, deg_y = 0;
};

// Coefficients become exact dyadics when the denominator is a power of two
// (always the case for t = 1/2^e specializations); otherwise an outward
// 192-fractional-bit rounding keeps the evaluation sound.
inline DyInterval dyinterval_of_rational(const Rational& q) {
    const Integer n = num(q), d = den(q);
    if (d == 1) {
        Dyadic x{n, 0};
        dy_normalize(x);
        return {x, x};
    }
    const unsigned tz = boost::multiprecision::lsb(d);
    if ((Integer(1) << tz) == d) {
        Dyadic x{n, -static_cast<std::int64_t>(tz)};
        dy_normalize(x);
        return {x, x};
    }
    const unsigned P = 192;
    const Integer scaled = n << P;
    Integer fl = scaled / d;
    if (fl * d != scaled && scaled < 0) --fl;
    Dyadic lo{fl, -static_cast<std::int64_t>(P)}, hi{fl + 1, -static_cast<std::int64_t>(P)};
    dy_normalize(lo);
    dy_normalize(hi);
    return {lo, hi};
}

inline DyTermList dyadic_terms(const BiPoly& F) {
    DyTermList out;
    out.terms.reserve(F.terms.size());
    for (const auto& [e, c] : F.terms) {
        out.terms.push_back({e.i, e.j, dyinterval_of_rational(c)});
        out.deg_x = std::max(out.deg_x, e.i);
        out.deg_y = std::max(out.deg_y, e.j);
    }
    return out;
}

inline int dyadic_box_sign(const DyTermList& F, const DyInterval& X, const DyInterval& Y) {
    std::vector<DyInterval> px(F.deg_x + 1), py(F.deg_y + 1);
    for (int k = 0; k <= F.deg_x; ++k) px[k] = di_pow(X, k);
    for (int k = 0; k <= F.deg_y; ++k) py[k] = di_pow(Y, k);
    DyInterval acc{};
    for (const DyTerm& t : F.terms) acc = di_add(acc, di_mul(t.c, di_mul(px[t.i], py[t.j])));
    if (acc.lo.sign() > 0) return 1;
    if (acc.hi.sign() < 0) return -1;
    return 0;
}

inline bool smooth_cover_exact(const DyTermList& f, const DyTermList& fx, const DyTermList& fy,
                               const DyInterval& X, const DyInterval& Y, int depth,
                               long& budget) {
    if (--budget < 0) return false;
    if (dyadic_box_sign(fx, X, Y) != 0) return true;
    if (dyadic_box_sign(fy, X, Y) != 0) return true;
    if (dyadic_box_sign(f, X, Y) != 0) return true;
    if (depth == 0) return false;
    // Split the dimension with the larger relative width: box geometry is
    // log-scaled, so equal relative (not absolute) widths is what keeps the
    // enclosure shrinking in both directions.
    const Dyadic wx = dy_add(X.hi, dy_neg(X.lo)), wy = dy_add(Y.hi, dy_neg(Y.lo));
    auto max_abs = [](const DyInterval& I) {
        Dyadic a = I.lo.sign() < 0 ? dy_neg(I.lo) : I.lo;
        Dyadic b = I.hi.sign() < 0 ? dy_neg(I.hi) : I.hi;
        return dy_less(a, b) ? b : a;
    };
    if (!dy_less(dy_mul(wx, max_abs(Y)), dy_mul(wy, max_abs(X)))) {
        const Dyadic mid = dy_half(dy_add(X.lo, X.hi));
        return smooth_cover_exact(f, fx, fy, DyInterval{X.lo, mid}, Y, depth - 1, budget) &&
               smooth_cover_exact(f, fx, fy, DyInterval{mid, X.hi}, Y, depth - 1, budget);
    }
    const Dyadic mid = dy_half(dy_add(Y.lo, Y.hi));
    return smooth_cover_exact(f, fx, fy, X, DyInterval{Y.lo, mid}, depth - 1, budget) &&
           smooth_cover_exact(f, fx, fy, X, DyInterval{mid, Y.hi}, depth - 1, budget);
}

constexpr int kGradScreenDepth = 64;  // XFloat phase
constexpr int kGradExactDepth = 512;  // dyadic phase

inline DyInterval di_of_xinterval(const XInterval& I) {
    return {dy_of_xfloat(I.lo), dy_of_xfloat(I.hi)};
}

// Certifies that the box contains no singular point of {F = 0}: every sub-box
// of the cover gets a nonzero certified sign for F_X, F_Y, or F itself.  The
// F disjunct matters: a critical point of F lying in the cell but off the
// curve (F != 0 there) is harmless for smoothness, yet it makes the plain
// gradient condition uncertifiable at any budget.
inline bool smooth_cover(const BiPoly& F, const BiPoly& FX, const BiPoly& FY,
                         const DyTermList& fd, const DyTermList& fxd, const DyTermList& fyd,
                         const XInterval& X, const XInterval& Y, int depth, long& budget) {
    if (--budget < 0) return false;
    if (eval_interval(FX, X, Y).certified_sign() != 0) return true;
    if (eval_interval(FY, X, Y).certified_sign() != 0) return true;
    if (eval_interval(F, X, Y).certified_sign() != 0) return true;
    const XFloat wx = xf_add(X.hi, xf_neg(X.lo), +1);
    const XFloat wy = xf_add(Y.hi, xf_neg(Y.lo), +1);
    auto max_abs = [](const XInterval& I) {
        XFloat a = xf_abs(I.lo), b = xf_abs(I.hi);
        return xf_less(a, b) ? b : a;
    };
    const XFloat mx = max_abs(X), my = max_abs(Y);
    // An interval is "thin" once its relative width is below 2^-30 (or it has
    // a zero endpoint, where relative width never improves).  Thin boxes go
    // to the exact tier: double rounding floors any further XFloat progress.
    const XFloat thin{1.0, -30};
    auto is_thin = [&](const XInterval& I, const XFloat& w, const XFloat& m) {
        return I.lo.is_zero() || I.hi.is_zero() || !xf_less(xf_mul(m, thin, 0), w);
    };
    const bool tx = is_thin(X, wx, mx), ty = is_thin(Y, wy, my);
    if (tx && ty)
        return smooth_cover_exact(fd, fxd, fyd, di_of_xinterval(X), di_of_xinterval(Y),
                                  kGradExactDepth, budget);
    if (depth == 0) return false;
    const XFloat half{1.0, -1};
    const bool split_x = tx ? false : (ty ? true : !xf_less(xf_mul(wx, my, 0), xf_mul(wy, mx, 0)));
    if (split_x) {
        XFloat mid = xf_mul(xf_add(X.lo, X.hi, 0), half, 0);
        if (!(xf_less(X.lo, mid) && xf_less(mid, X.hi)))
            return smooth_cover_exact(fd, fxd, fyd, di_of_xinterval(X), di_of_xinterval(Y),
                                      kGradExactDepth, budget);
        return smooth_cover(F, FX, FY, fd, fxd, fyd, XInterval{X.lo, mid}, Y, depth - 1,
                            budget) &&
               smooth_cover(F, FX, FY, fd, fxd, fyd, XInterval{mid, X.hi}, Y, depth - 1, budget);
    }
    XFloat mid = xf_mul(xf_add(Y.lo, Y.hi, 0), half, 0);
    if (!(xf_less(Y.lo, mid) && xf_less(mid, Y.hi)))
        return smooth_cover_exact(fd, fxd, fyd, di_of_xinterval(X), di_of_xinterval(Y),
                                  kGradExactDepth, budget);
    return smooth_cover(F, FX, FY, fd, fxd, fyd, X, XInterval{Y.lo, mid}, depth - 1, budget) &&
           smooth_cover(F, FX, FY, fd, fxd, fyd, X, XInterval{mid, Y.hi}, depth - 1, budget);
}

}  // namespace detail

struct SmoothnessReport {
    struct ComponentResult {
        int component = -1;
        bool compact = false;
        bool pass = true;
        long cells_checked = 0;
        std::pair<long, long> failed_cell{-1, -1};
    };
    bool all_pass = true;
    long cells_checked = 0;
    std::vector<ComponentResult> per_component;
};

// Falsifier, not a proof: for sampled sign-change cells of each detected
// component, certify by interval bisection that the cell contains no point
// with F = 0 and (F_X, F_Y) = (0,0), i.e. no singular point of the curve.
inline SmoothnessReport smoothness_spotcheck(const BiPoly& F, const ComponentCensus& census,
                                             int samples) {
    const BiPoly FX = partial(F, Var::X), FY = partial(F, Var::Y);
    const detail::DyTermList Fd = detail::dyadic_terms(F);
    const detail::DyTermList FXd = detail::dyadic_terms(FX), FYd = detail::dyadic_terms(FY);
    const auto coords = detail::global_coords(census.K, census.resolution);
    SmoothnessReport rep;
    for (std::size_t ci = 0; ci < census.components.size(); ++ci) {
        const CensusComponent& comp = census.components[ci];
        SmoothnessReport::ComponentResult res;
        res.component = static_cast<int>(ci);
        res.compact = comp.compact;
        const std::size_t total = comp.cells.size();
        const std::size_t m = std::min<std::size_t>(std::max(samples, 0), total);
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t idx = (m <= 1) ? 0 : k * (total - 1) / (m - 1);
            const auto [cx, cy] = comp.cells[idx];
            XInterval X = XInterval::hull(coords[cx], coords[cx + 1]);
            XInterval Y = XInterval::hull(coords[cy], coords[cy + 1]);
            ++rep.cells_checked;
            ++res.cells_checked;
            long budget = 1L << 21;
            if (!detail::smooth_cover(F, FX, FY, Fd, FXd, FYd, X, Y, detail::kGradScreenDepth,
                                      budget)) {
                res.pass = false;
                res.failed_cell = {cx, cy};
                break;
            }
        }
        rep.all_pass = rep.all_pass && res.pass;
        rep.per_component.push_back(res);
    }
    return rep;
}

}  // namespace hessweave
