#pragma once

#include "ratpoly.hpp"
#include "simplex.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hessweave {

struct LatticePoint {
    int x = 0;
    int y = 0;
    auto operator<=>(const LatticePoint&) const = default;
};

inline long long cross(LatticePoint o, LatticePoint a, LatticePoint b) {
    return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
           static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

// dim 2: CCW starting at the lexicographic minimum; dim 1: [min,max]; dim 0: [p].
struct Polygon {
    std::vector<LatticePoint> vertices;
    int dim() const {
        return vertices.size() >= 3 ? 2 : static_cast<int>(vertices.size()) - 1;
    }
    bool operator==(const Polygon&) const = default;
};

inline Polygon convex_hull(std::vector<LatticePoint> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) throw std::invalid_argument("convex hull of empty set");
    if (pts.size() == 1) return {pts};
    std::vector<LatticePoint> lo, hi;
    for (const auto& p : pts) {
        while (lo.size() >= 2 && cross(lo[lo.size() - 2], lo.back(), p) <= 0) lo.pop_back();
        lo.push_back(p);
    }
    for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
        while (hi.size() >= 2 && cross(hi[hi.size() - 2], hi.back(), *it) <= 0) hi.pop_back();
        hi.push_back(*it);
    }
    lo.pop_back();
    hi.pop_back();
    lo.insert(lo.end(), hi.begin(), hi.end());
    if (lo.size() == 2 && lo[0] == lo[1]) lo.pop_back();
    return {lo};
}

inline bool on_segment(LatticePoint a, LatticePoint b, LatticePoint p) {
    return cross(a, b, p) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

inline bool in_polygon(const Polygon& poly, LatticePoint p) {
    const auto& v = poly.vertices;
    if (v.size() == 1) return p == v[0];
    if (v.size() == 2) return on_segment(v[0], v[1], p);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (cross(v[i], v[(i + 1) % v.size()], p) < 0) return false;
    return true;
}

inline std::vector<LatticePoint> lattice_points_of(const Polygon& poly) {
    int x0 = poly.vertices[0].x, x1 = x0, y0 = poly.vertices[0].y, y1 = y0;
    for (const auto& p : poly.vertices) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    std::vector<LatticePoint> out;
    for (int x = x0; x <= x1; ++x)
        for (int y = y0; y <= y1; ++y)
            if (in_polygon(poly, {x, y})) out.push_back({x, y});
    return out;
}

inline long long area2(const Polygon& poly) {
    const auto& v = poly.vertices;
    long long a = 0;
    for (std::size_t k = 1; k + 1 < v.size(); ++k) a += cross(v[0], v[k], v[k + 1]);
    return a;
}

struct Cell {
    Polygon polygon;
    int dim = 2;
    std::vector<LatticePoint> lattice_points;  // sorted; for subdivision cells: on-face only
};

inline bool same_polygon(const Cell& a, const Cell& b) { return a.polygon == b.polygon; }

inline Cell cell_from_vertices(const std::vector<LatticePoint>& verts) {
    Polygon poly = convex_hull(verts);
    return {poly, poly.dim(), lattice_points_of(poly)};
}

inline bool unimodular(const Cell& c) {
    return c.dim == 2 && c.polygon.vertices.size() == 3 && std::abs(area2(c.polygon)) == 1;
}

struct Lifting {
    std::map<LatticePoint, Rational> heights;
};

struct Subdivision {
    Polygon polygon;
    std::vector<Cell> cells;  // all dims: 2-cells first, then 1-cells, then 0-cells

    std::vector<const Cell*> cells_of_dim(int d) const {
        std::vector<const Cell*> out;
        for (const auto& c : cells)
            if (c.dim == d) out.push_back(&c);
        return out;
    }
    const Cell* find(const Polygon& poly) const {
        for (const auto& c : cells)
            if (c.polygon == poly) return &c;
        return nullptr;
    }
};

struct AffineSupport {
    Rational alpha, beta, gamma;
    Rational at(LatticePoint p) const { return alpha * p.x + beta * p.y + gamma; }
};

template <class C>
Polygon newton_polygon(const Poly2<C>& p) {
    if (p.is_zero()) throw std::domain_error("newton polygon of zero polynomial");
    std::vector<LatticePoint> pts;
    for (const auto& [e, c] : p.terms) pts.push_back({e.i, e.j});
    return convex_hull(std::move(pts));
}

inline Polygon minkowski_sum(const Polygon& a, const Polygon& b) {
    std::vector<LatticePoint> sums;
    sums.reserve(a.vertices.size() * b.vertices.size());
    for (const auto& p : a.vertices)
        for (const auto& q : b.vertices) sums.push_back({p.x + q.x, p.y + q.y});
    return convex_hull(std::move(sums));
}

namespace detail {

inline AffineSupport plane_through(LatticePoint p, LatticePoint q, LatticePoint r,
                                   const std::map<LatticePoint, Rational>& h) {
    const Rational z1 = h.at(p), z2 = h.at(q), z3 = h.at(r);
    const long long det = cross(p, q, r);
    Rational a = ((z2 - z1) * (r.y - p.y) - (z3 - z1) * (q.y - p.y)) / Rational(det);
    Rational b = (Rational(q.x - p.x) * (z3 - z1) - Rational(r.x - p.x) * (z2 - z1)) /
                 Rational(det);
    Rational c = z1 - a * p.x - b * p.y;
    return {a, b, c};
}

// Lower convex chain of lifted points along a segment a->b (1D lower hull in
// (param, height)); returns the chain point sequence.
inline std::vector<LatticePoint> lower_chain(LatticePoint a, LatticePoint b,
                                             const std::map<LatticePoint, Rational>& h) {
    std::vector<LatticePoint> on;
    for (const auto& [p, z] : h)
        if (on_segment(a, b, p)) on.push_back(p);
    auto param = [&](LatticePoint p) {
        return static_cast<long long>(p.x - a.x) * (b.x - a.x) +
               static_cast<long long>(p.y - a.y) * (b.y - a.y);
    };
    std::sort(on.begin(), on.end(),
              [&](LatticePoint u, LatticePoint v) { return param(u) < param(v); });
    std::vector<LatticePoint> chain;
    for (const auto& p : on) {
        while (chain.size() >= 2) {
            LatticePoint p1 = chain[chain.size() - 2], p2 = chain.back();
            // p2 on-or-above chord p1->p  =>  drop p2
            Rational lhs = (h.at(p2) - h.at(p1)) * Rational(param(p) - param(p1));
            Rational rhs = (h.at(p) - h.at(p1)) * Rational(param(p2) - param(p1));
            if (lhs >= rhs)
                chain.pop_back();
            else
                break;
        }
        chain.push_back(p);
    }
    return chain;
}

struct Facet {
    Polygon polygon;
    AffineSupport plane;
    std::vector<LatticePoint> on;  // sorted lifted points on the plane
};

inline std::vector<Facet> lower_facets(const std::map<LatticePoint, Rational>& h,
                                       const Polygon& hull) {
    std::vector<LatticePoint> pts;
    for (const auto& [p, z] : h) pts.push_back(p);
    std::map<std::vector<LatticePoint>, Facet> facets;
    std::vector<std::pair<LatticePoint, LatticePoint>> todo;
    const auto& hv = hull.vertices;
    for (std::size_t i = 0; i < hv.size(); ++i) {
        auto chain = lower_chain(hv[i], hv[(i + 1) % hv.size()], h);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            todo.emplace_back(chain[k], chain[k + 1]);
    }
    std::set<std::pair<LatticePoint, LatticePoint>> seen;
    while (!todo.empty()) {
        auto [p, q] = todo.back();
        todo.pop_back();
        if (!seen.insert({p, q}).second) continue;
        std::optional<LatticePoint> best;
        std::optional<AffineSupport> best_plane;
        for (const auto& r : pts) {
            if (cross(p, q, r) <= 0) continue;
            if (!best) {
                best = r;
                best_plane = plane_through(p, q, r, h);
                continue;
            }
            if (h.at(r) < best_plane->at(r)) {
                best = r;
                best_plane = plane_through(p, q, r, h);
            }
        }
        if (!best) continue;  // boundary edge facing outward
        std::vector<LatticePoint> on;
        for (const auto& s : pts)
            if (h.at(s) == best_plane->at(s)) on.push_back(s);
        std::sort(on.begin(), on.end());
        Polygon poly = convex_hull(on);
        auto [it, fresh] = facets.try_emplace(poly.vertices);
        if (fresh) {
            it->second = {poly, *best_plane, on};
            const auto& fv = poly.vertices;
            for (std::size_t k = 0; k < fv.size(); ++k)
                todo.emplace_back(fv[(k + 1) % fv.size()], fv[k]);
        }
    }
    std::vector<Facet> out;
    out.reserve(facets.size());
    for (auto& [key, f] : facets) out.push_back(std::move(f));
    return out;
}

}  // namespace detail

// Subdivision induced by an arbitrary lifting: linearity domains of the lower
// hull of {(p, h(p))}, with 1- and 0-dimensional faces included.
inline Subdivision subdivision_of_lifting(const Lifting& l) {
    const auto& h = l.heights;
    if (h.empty()) throw std::invalid_argument("empty lifting");
    std::vector<LatticePoint> pts;
    for (const auto& [p, z] : h) pts.push_back(p);
    Polygon hull = convex_hull(pts);
    Subdivision sub;
    sub.polygon = hull;
    std::map<std::vector<LatticePoint>, Cell> faces1;
    std::set<LatticePoint> verts0;

    if (hull.dim() == 0) {
        sub.cells.push_back({hull, 0, {hull.vertices[0]}});
        return sub;
    }
    if (hull.dim() == 1) {
        auto chain = detail::lower_chain(hull.vertices[0], hull.vertices[1], h);
        for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
            LatticePoint a = chain[k], b = chain[k + 1];
            Polygon seg = convex_hull({a, b});
            std::vector<LatticePoint> on;
            for (const auto& [p, z] : h) {
                if (!on_segment(a, b, p)) continue;
                // on the lifted chord a->b ?
                Rational za = h.at(a), zb = h.at(b);
                long long ta = 0,
                          tb = static_cast<long long>(b.x - a.x) * (b.x - a.x) +
                               static_cast<long long>(b.y - a.y) * (b.y - a.y);
                long long tp = static_cast<long long>(p.x - a.x) * (b.x - a.x) +
                               static_cast<long long>(p.y - a.y) * (b.y - a.y);
                if ((z - za) * Rational(tb - ta) == (zb - za) * Rational(tp - ta))
                    on.push_back(p);
            }
            std::sort(on.begin(), on.end());
            faces1.try_emplace(seg.vertices, Cell{seg, 1, on});
            verts0.insert(a);
            verts0.insert(b);
        }
        for (auto& [key, c] : faces1) sub.cells.push_back(std::move(c));
        for (const auto& v : verts0) sub.cells.push_back({Polygon{{v}}, 0, {v}});
        return sub;
    }

    auto facets = detail::lower_facets(h, hull);
    std::sort(facets.begin(), facets.end(), [](const detail::Facet& a, const detail::Facet& b) {
        return a.polygon.vertices < b.polygon.vertices;
    });
    for (const auto& f : facets) {
        sub.cells.push_back({f.polygon, 2, f.on});
        const auto& fv = f.polygon.vertices;
        for (std::size_t k = 0; k < fv.size(); ++k) {
            LatticePoint a = fv[k], b = fv[(k + 1) % fv.size()];
            Polygon seg = convex_hull({a, b});
            std::vector<LatticePoint> on;
            for (const auto& s : f.on)
                if (on_segment(a, b, s)) on.push_back(s);
            std::sort(on.begin(), on.end());
            faces1.try_emplace(seg.vertices, Cell{seg, 1, on});
            verts0.insert(a);
            verts0.insert(b);
        }
    }
    for (auto& [key, c] : faces1) sub.cells.push_back(std::move(c));
    for (const auto& v : verts0) sub.cells.push_back({Polygon{{v}}, 0, {v}});
    return sub;
}

// Heights = lowest t-exponent per coefficient; subdivision = its lower hull.
inline std::pair<Lifting, Subdivision> lower_subdivision(const ParamPoly& p) {
    if (p.is_zero()) throw std::domain_error("lower subdivision of zero polynomial");
    Lifting l;
    for (const auto& [e, c] : p.terms)
        l.heights.emplace(LatticePoint{e.i, e.j}, Rational(c.min_exponent()));
    Subdivision s = subdivision_of_lifting(l);
    return {std::move(l), std::move(s)};
}

// `sub` must be the subdivision induced by `l` (callers that already hold it
// avoid the recomputation).
inline AffineSupport support_for_cell(const Lifting& l, const Subdivision& sub, const Cell& c) {
    const Cell* found = sub.find(c.polygon);
    if (!found || found->dim != c.dim)
        throw std::invalid_argument("cell is not a cell of the lifting's subdivision");

    if (c.dim == 2) {
        const auto& v = c.polygon.vertices;
        return detail::plane_through(v[0], v[1], v[2], l.heights);
    }

    // Lower-dimensional cells: canonical representative of the support family.
    // Maximize the strictness margin capped at 1, then minimize |alpha|, then
    // |beta|, then pick the lexicographically smallest (alpha, beta).
    const auto& face_pts = found->lattice_points;
    auto on_face = [&](LatticePoint p) {
        return std::binary_search(face_pts.begin(), face_pts.end(), p);
    };
    // Variables: a+, a-, b+, b-, g+, g-, z  (all >= 0).
    const std::size_t NA = 0, NAm = 1, NB = 2, NBm = 3, NG = 4, NGm = 5, NZ = 6;
    auto lin_row = [&](LatticePoint p, Rational zcoef) {
        std::vector<Rational> r(7, Rational(0));
        r[NA] = p.x;
        r[NAm] = -p.x;
        r[NB] = p.y;
        r[NBm] = -p.y;
        r[NG] = 1;
        r[NGm] = -1;
        r[NZ] = zcoef;
        return r;
    };
    LinearProgram base;
    base.num_vars = 7;
    for (const auto& v : c.polygon.vertices)
        base.add_row(lin_row(v, Rational(0)), LinearProgram::Rel::EQ, l.heights.at(v));
    for (const auto& [p, z] : l.heights)
        if (!on_face(p)) base.add_row(lin_row(p, Rational(1)), LinearProgram::Rel::LE, z);
    {
        std::vector<Rational> zr(7, Rational(0));
        zr[NZ] = 1;
        base.add_row(zr, LinearProgram::Rel::LE, Rational(1));
    }
    auto run = [&](LinearProgram lp, std::vector<Rational> obj) {
        lp.objective = std::move(obj);
        LPResult r = solve_lp(lp);
        if (r.status != LPResult::Status::OPTIMAL)
            throw std::logic_error("canonical support LP failed");
        return r;
    };
    auto unit = [&](std::size_t k, Rational v) {
        std::vector<Rational> r(7, Rational(0));
        r[k] = v;
        return r;
    };
    // Phase A: maximize z.
    std::vector<Rational> obj(7, Rational(0));
    obj[NZ] = -1;
    Rational zstar = -run(base, obj).value;
    LinearProgram lp = base;
    lp.add_row(unit(NZ, Rational(1)), LinearProgram::Rel::GE, zstar);
    // Phase B/C: minimize |alpha| then |beta|.
    obj = std::vector<Rational>(7, Rational(0));
    obj[NA] = obj[NAm] = 1;
    Rational astar = run(lp, obj).value;
    {
        std::vector<Rational> r(7, Rational(0));
        r[NA] = r[NAm] = 1;
        lp.add_row(r, LinearProgram::Rel::LE, astar);
    }
    obj = std::vector<Rational>(7, Rational(0));
    obj[NB] = obj[NBm] = 1;
    Rational bstar = run(lp, obj).value;
    {
        std::vector<Rational> r(7, Rational(0));
        r[NB] = r[NBm] = 1;
        lp.add_row(r, LinearProgram::Rel::LE, bstar);
    }
    // Phase D/E: lexicographic tie-break on (alpha, beta).
    obj = std::vector<Rational>(7, Rational(0));
    obj[NA] = 1;
    obj[NAm] = -1;
    Rational alpha = run(lp, obj).value;
    {
        std::vector<Rational> r(7, Rational(0));
        r[NA] = 1;
        r[NAm] = -1;
        lp.add_row(r, LinearProgram::Rel::EQ, alpha);
    }
    obj = std::vector<Rational>(7, Rational(0));
    obj[NB] = 1;
    obj[NBm] = -1;
    LPResult fin = run(lp, obj);
    Rational beta = fin.value;
    Rational gamma = fin.x[NG] - fin.x[NGm];
    return {alpha, beta, gamma};
}

inline AffineSupport support_for_cell(const Lifting& l, const Cell& c) {
    return support_for_cell(l, subdivision_of_lifting(l), c);
}

// t=0 limit of t^{-gamma} P(t^{-alpha} X, t^{-beta} Y): keeps the coefficient
// of t^{L(i,j)} in a_{i,j}(t) exactly where the support touches the lift.
inline BiPoly truncate(const ParamPoly& p, const Cell& c, const AffineSupport& L) {
    for (const auto& v : c.polygon.vertices) {
        auto it = p.terms.find(Exponent{v.x, v.y});
        if (it == p.terms.end() || Rational(it->second.min_exponent()) != L.at(v))
            throw std::invalid_argument("invalid support: cell vertex not on lifted face");
    }
    BiPoly out;
    for (const auto& [e, a] : p.terms) {
        LatticePoint pt{e.i, e.j};
        Rational delta = Rational(a.min_exponent()) - L.at(pt);
        if (sign_of(delta) < 0)
            throw std::invalid_argument("invalid support: lifted point below support plane");
        if (delta == 0) {
            if (!in_polygon(c.polygon, pt))
                throw std::invalid_argument("invalid support: touches points outside cell");
            out.add_term(e, a.coeffs.begin()->second);
        }
    }
    return out;
}

// Restriction of a BiPoly to the terms supported inside a cell (trivial lift).
inline BiPoly restrict_to_cell(const BiPoly& p, const Cell& c) {
    BiPoly out;
    for (const auto& [e, v] : p.terms)
        if (in_polygon(c.polygon, {e.i, e.j})) out.add_term(e, v);
    return out;
}

}  // namespace hessweave
