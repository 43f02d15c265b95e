#pragma once

#include "newton.hpp"
#include "ratpoly.hpp"
#include "simplex.hpp"
#include "topology.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hessweave {

enum class PieceKind { T1, T2, STRIP, FILLER };
enum class LayoutMode { Literal, Simplex };

inline const char* to_string(PieceKind k) {
    switch (k) {
        case PieceKind::T1: return "T1";
        case PieceKind::T2: return "T2";
        case PieceKind::STRIP: return "STRIP";
        case PieceKind::FILLER: return "FILLER";
    }
    return "?";
}

struct Piece {
    Cell cell;
    BiPoly poly;  // support = the cell's lattice points
    PieceKind kind = PieceKind::FILLER;
};

struct Layout {
    std::vector<Piece> pieces;
    Polygon ambient;  // convex hull of all piece cells; empty when there are none
    int degree_param = 0;
};

namespace detail {

inline BiPoly all_ones_poly(const std::vector<LatticePoint>& pts) {
    BiPoly p;
    for (const auto& q : pts) p.add_term({q.x, q.y}, Rational(1));
    return p;
}

inline Piece make_piece(PieceKind kind, std::vector<LatticePoint> verts, BiPoly poly) {
    Cell c = cell_from_vertices(verts);
    return {std::move(c), std::move(poly), kind};
}

// Strict separation test for convex polygons: interiors intersect iff no edge
// line of either polygon has the other entirely on its outer closed side.
inline bool interiors_overlap(const Polygon& A, const Polygon& B) {
    auto separated_by_edge_of = [](const Polygon& P, const Polygon& Q) {
        const auto& v = P.vertices;
        for (std::size_t k = 0; k < v.size(); ++k) {
            bool all_out = true;
            for (const auto& q : Q.vertices)
                if (cross(v[k], v[(k + 1) % v.size()], q) > 0) {
                    all_out = false;
                    break;
                }
            if (all_out) return true;
        }
        return false;
    };
    return !separated_by_edge_of(A, B) && !separated_by_edge_of(B, A);
}

}  // namespace detail

// The construction's tiles: T1/T2 over 2<=i,j<=d-2 and the strip along y=2.
inline Layout paper_layout(int d, LayoutMode mode) {
    if (d < 4) throw std::invalid_argument("paper_layout: need d >= 4");
    const Rational one(1);
    std::vector<Piece> pieces;
    auto xiyj = [&](int i, int j) { return BiPoly::monomial(i, j, one); };
    for (int i = 2; i <= d - 2; ++i)
        for (int j = 2; j <= d - 2; ++j) {
            pieces.push_back(detail::make_piece(
                PieceKind::T1, {{i + 1, j}, {i, j + 1}, {i, j + 2}},
                xiyj(i, j) * (xiyj(1, 0) + xiyj(0, 1) + xiyj(0, 2))));
            pieces.push_back(detail::make_piece(
                PieceKind::T2, {{i + 1, j + 1}, {i + 1, j}, {i, j + 2}},
                xiyj(i, j) * (xiyj(1, 1) + xiyj(1, 0) + xiyj(0, 2))));
        }
    for (int k = 2; k <= d - 1; ++k)
        pieces.push_back(detail::make_piece(PieceKind::STRIP, {{k, 2}, {k + 1, 2}, {k, 3}},
                                            xiyj(k, 2) * (xiyj(0, 0) + xiyj(1, 0) + xiyj(0, 1))));
    if (mode == LayoutMode::Simplex) {
        std::erase_if(pieces, [d](const Piece& p) {
            for (const auto& v : p.cell.polygon.vertices)
                if (v.x + v.y > d) return true;
            return false;
        });
    }
    Layout l;
    l.degree_param = d;
    if (!pieces.empty()) {
        std::vector<LatticePoint> all;
        for (const auto& p : pieces)
            for (const auto& v : p.cell.polygon.vertices) all.push_back(v);
        l.ambient = convex_hull(all);
    }
    l.pieces = std::move(pieces);
    return l;
}

inline int predicted_ovals(const Layout& l) {
    int n = 0;
    for (const auto& p : l.pieces)
        if (p.kind != PieceKind::FILLER) ++n;
    return n;
}

namespace detail {

// The degree-parameterized convex height candidate; its lower subdivision
// contains every layout cell for the paper layouts (checked before use).
inline Lifting quadratic_candidate(int d, const std::vector<LatticePoint>& pts) {
    Lifting l;
    Rational mn;
    bool first = true;
    for (const auto& p : pts) {
        Rational q = Rational(3 * p.x * p.x + 3 * p.x * p.y + p.y * p.y) -
                     Rational(6 * d - 2) * p.x - Rational(3 * d + 1) * p.y;
        if (first || q < mn) mn = q;
        first = false;
        l.heights[p] = q;
    }
    for (auto& [p, h] : l.heights) h -= mn;
    return l;
}

inline std::set<std::vector<LatticePoint>> cell_key_set(const Subdivision& sub) {
    std::set<std::vector<LatticePoint>> keys;
    for (const Cell* c : sub.cells_of_dim(2)) keys.insert(c->polygon.vertices);
    return keys;
}

inline std::set<std::vector<LatticePoint>> cell_key_set(const Layout& l) {
    std::set<std::vector<LatticePoint>> keys;
    for (const auto& p : l.pieces) keys.insert(p.cell.polygon.vertices);
    return keys;
}

// Largest per-cell |alpha|, |beta| over the 2-cells of a subdivision.
inline Rational max_fold_slope(const Lifting& l, const Subdivision& sub) {
    Rational m(0);
    for (const Cell* c : sub.cells_of_dim(2)) {
        const auto& v = c->polygon.vertices;
        AffineSupport s = plane_through(v[0], v[1], v[2], l.heights);
        Rational a = s.alpha < 0 ? Rational(-s.alpha) : s.alpha;
        Rational b = s.beta < 0 ? Rational(-s.beta) : s.beta;
        m = std::max(m, std::max(a, b));
    }
    return m;
}

struct FoldRow {
    std::map<LatticePoint, Rational> coef;
    LatticePoint a, b;  // the interior edge, for certificates

    Rational at(const std::map<LatticePoint, Rational>& h) const {
        Rational s(0);
        for (const auto& [p, c] : coef) s += c * h.at(p);
        return s;
    }
};

// One row per interior edge: the opposite vertex of one side must lift at
// least 1 above the other side's plane. With unimodular cells on both sides
// the margin value is orientation-symmetric.
inline std::vector<FoldRow> fold_rows(const std::vector<std::vector<LatticePoint>>& tris) {
    auto third = [](const std::vector<LatticePoint>& t, LatticePoint a, LatticePoint b) {
        for (const auto& v : t)
            if (v != a && v != b) return v;
        throw std::logic_error("degenerate triangle");
    };
    std::map<std::pair<LatticePoint, LatticePoint>, std::vector<std::size_t>> edge_cells;
    for (std::size_t k = 0; k < tris.size(); ++k) {
        const auto& t = tris[k];
        for (std::size_t e = 0; e < t.size(); ++e) {
            LatticePoint u = t[e], v = t[(e + 1) % t.size()];
            if (v < u) std::swap(u, v);
            edge_cells[{u, v}].push_back(k);
        }
    }
    std::vector<FoldRow> rows;
    for (const auto& [edge, cells] : edge_cells) {
        if (cells.size() != 2) continue;
        const auto [a, b] = edge;
        LatticePoint q1 = third(tris[cells[0]], a, b);
        LatticePoint q2 = third(tris[cells[1]], a, b);
        const Rational det{cross(a, b, q1)};
        FoldRow row;
        row.a = a;
        row.b = b;
        row.coef[q2] += 1;
        row.coef[a] -= Rational(cross(q2, b, q1)) / det;
        row.coef[b] -= Rational(cross(a, q2, q1)) / det;
        row.coef[q1] -= Rational(cross(a, b, q2)) / det;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

// Fill ambient \ pieces with all-(+1) lattice triangles. The primary path uses
// the quadratic candidate's own subdivision (when it refines the pieces); the
// fallback is a greedy lattice triangulation of the complement.
inline Layout complete_layout(const Layout& l) {
    for (std::size_t i = 0; i < l.pieces.size(); ++i)
        for (std::size_t j = i + 1; j < l.pieces.size(); ++j)
            if (detail::interiors_overlap(l.pieces[i].cell.polygon, l.pieces[j].cell.polygon))
                throw std::invalid_argument("complete_layout: piece cells overlap");
    if (l.pieces.empty()) return l;

    std::vector<LatticePoint> allv;
    for (const auto& p : l.pieces)
        for (const auto& v : p.cell.polygon.vertices) allv.push_back(v);
    Polygon hull = convex_hull(allv);
    long long piece_area = 0;
    for (const auto& p : l.pieces) piece_area += area2(p.cell.polygon);
    Layout out = l;
    out.ambient = hull;
    if (piece_area == area2(hull)) return out;  // pieces already tile their hull

    const std::vector<LatticePoint> pts = lattice_points_of(hull);
    const auto piece_keys = detail::cell_key_set(l);
    std::vector<std::vector<LatticePoint>> filler_cells;

    bool done = false;
    if (l.degree_param >= 4) {
        Lifting cand = detail::quadratic_candidate(l.degree_param, pts);
        Subdivision sub = subdivision_of_lifting(cand);
        auto cand_keys = detail::cell_key_set(sub);
        bool contains_all = true;
        for (const auto& k : piece_keys)
            if (!cand_keys.count(k)) {
                contains_all = false;
                break;
            }
        if (contains_all) {
            for (const Cell* c : sub.cells_of_dim(2))
                if (!piece_keys.count(c->polygon.vertices))
                    filler_cells.push_back(c->polygon.vertices);
            done = true;
        }
    }
    if (!done) {
        // Greedy: piece edges are forced; admit the shortest non-crossing
        // primitive segments that avoid piece interiors; faces = empty triangles.
        for (const auto& p : l.pieces)
            if (p.cell.polygon.vertices.size() != 3)
                throw std::invalid_argument("complete_layout: non-triangle piece");
        auto proper_cross = [](LatticePoint a, LatticePoint b, LatticePoint c, LatticePoint d) {
            auto sgn = [](long long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
            int d1 = sgn(cross(a, b, c)), d2 = sgn(cross(a, b, d));
            int d3 = sgn(cross(c, d, a)), d4 = sgn(cross(c, d, b));
            return d1 * d2 < 0 && d3 * d4 < 0;
        };
        std::set<std::pair<LatticePoint, LatticePoint>> edges;
        auto add_edge = [&](LatticePoint u, LatticePoint v) {
            if (v < u) std::swap(u, v);
            edges.insert({u, v});
        };
        for (const auto& p : l.pieces) {
            const auto& v = p.cell.polygon.vertices;
            for (std::size_t k = 0; k < v.size(); ++k) add_edge(v[k], v[(k + 1) % v.size()]);
        }
        auto strictly_inside_piece = [&](LatticePoint u, LatticePoint v) {
            // Test the doubled midpoint against doubled piece polygons.
            for (const auto& p : l.pieces) {
                const auto& w = p.cell.polygon.vertices;
                bool in = true;
                for (std::size_t k = 0; k < w.size(); ++k) {
                    LatticePoint a = w[k], b = w[(k + 1) % w.size()];
                    long long cr =
                        static_cast<long long>(2 * b.x - 2 * a.x) * (u.y + v.y - 2 * a.y) -
                        static_cast<long long>(2 * b.y - 2 * a.y) * (u.x + v.x - 2 * a.x);
                    if (cr <= 0) {
                        in = false;
                        break;
                    }
                }
                if (in) return true;
            }
            return false;
        };
        struct Cand {
            long long len2;
            LatticePoint u, v;
            bool operator<(const Cand& o) const {
                return std::tie(len2, u, v) < std::tie(o.len2, o.u, o.v);
            }
        };
        std::vector<Cand> cands;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                const LatticePoint u = pts[i], v = pts[j];
                const long long dx = v.x - u.x, dy = v.y - u.y;
                bool primitive = true;  // no third lattice point on the open segment
                for (const auto& w : pts)
                    if (w != u && w != v && on_segment(u, v, w)) {
                        primitive = false;
                        break;
                    }
                if (!primitive) continue;
                cands.push_back({dx * dx + dy * dy, u, v});
            }
        std::sort(cands.begin(), cands.end());
        for (const auto& c : cands) {
            if (edges.count({c.u, c.v})) continue;
            if (strictly_inside_piece(c.u, c.v)) continue;
            bool ok = true;
            for (const auto& [a, b] : edges)
                if (proper_cross(c.u, c.v, a, b)) {
                    ok = false;
                    break;
                }
            if (ok) add_edge(c.u, c.v);
        }
        auto has_edge = [&](LatticePoint u, LatticePoint v) {
            if (v < u) std::swap(u, v);
            return edges.count({u, v}) > 0;
        };
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                for (std::size_t k = j + 1; k < pts.size(); ++k) {
                    const LatticePoint a = pts[i], b = pts[j], c = pts[k];
                    if (cross(a, b, c) == 0) continue;
                    if (!has_edge(a, b) || !has_edge(b, c) || !has_edge(a, c)) continue;
                    Polygon tri = convex_hull({a, b, c});
                    bool empty = true;
                    for (const auto& w : pts)
                        if (w != a && w != b && w != c && in_polygon(tri, w)) {
                            empty = false;
                            break;
                        }
                    if (!empty) continue;
                    if (piece_keys.count(tri.vertices)) continue;
                    filler_cells.push_back(tri.vertices);
                }
    }

    std::sort(filler_cells.begin(), filler_cells.end());
    long long filler_area = 0;
    for (const auto& fc : filler_cells) {
        Cell cell = cell_from_vertices(fc);
        filler_area += area2(cell.polygon);
        BiPoly poly = detail::all_ones_poly(cell.lattice_points);
        out.pieces.push_back({std::move(cell), std::move(poly), PieceKind::FILLER});
    }
    if (piece_area + filler_area != area2(hull))
        throw std::logic_error("complete_layout: filler area does not balance");
    return out;
}

// Integer heights realizing the layout as a lower subdivision. Primary path:
// the quadratic candidate followed by a greedy corner shave (decrement single
// heights while every fold margin stays >= 1, the cell set is unchanged, and
// the max fold slope does not grow). Fallback: exact LP with unit margins.
inline Lifting solve_heights(const Layout& l) {
    if (l.pieces.empty()) throw std::invalid_argument("solve_heights: empty layout");
    long long piece_area = 0;
    for (const auto& p : l.pieces) piece_area += area2(p.cell.polygon);
    std::vector<LatticePoint> allv;
    for (const auto& p : l.pieces)
        for (const auto& v : p.cell.polygon.vertices) allv.push_back(v);
    Polygon hull = convex_hull(allv);
    if (piece_area != area2(hull))
        throw std::invalid_argument("solve_heights: pieces do not tile their hull");
    const std::vector<LatticePoint> pts = lattice_points_of(hull);
    const auto target_keys = detail::cell_key_set(l);

    {
        // Trivial case: one piece covering everything.
        Lifting zero;
        for (const auto& p : pts) zero.heights[p] = 0;
        if (target_keys.size() == 1 &&
            detail::cell_key_set(subdivision_of_lifting(zero)) == target_keys)
            return zero;
    }

    if (l.degree_param >= 4) {
        Lifting cand = detail::quadratic_candidate(l.degree_param, pts);
        Subdivision sub = subdivision_of_lifting(cand);
        if (detail::cell_key_set(sub) == target_keys) {
            std::vector<std::vector<LatticePoint>> tris;
            for (const auto& k : target_keys) tris.push_back(k);
            const auto rows = detail::fold_rows(tris);
            auto& h = cand.heights;
            Rational cur_slope = detail::max_fold_slope(cand, sub);
            bool improved = true;
            while (improved) {
                improved = false;
                for (const auto& p : pts) {
                    if (h.at(p) == 0) continue;
                    Lifting trial = cand;
                    trial.heights[p] -= 1;
                    bool feasible = true;
                    for (const auto& row : rows)
                        if (row.at(trial.heights) < 1) {
                            feasible = false;
                            break;
                        }
                    if (!feasible) continue;
                    Subdivision tsub = subdivision_of_lifting(trial);
                    if (detail::cell_key_set(tsub) != target_keys) continue;
                    Rational tslope = detail::max_fold_slope(trial, tsub);
                    if (tslope > cur_slope) continue;
                    cand = std::move(trial);
                    cur_slope = tslope;
                    improved = true;
                }
            }
            return cand;
        }
    }

    // LP: minimize sum of heights subject to fold margins >= 1 on interior
    // edges and coplanarity inside each cell; then scale to integers.
    std::map<LatticePoint, std::size_t> idx;
    for (const auto& p : pts) idx[p] = idx.size();
    std::vector<std::vector<LatticePoint>> tris;
    for (const auto& k : target_keys) tris.push_back(k);
    const auto rows = detail::fold_rows(tris);
    LinearProgram lp;
    lp.num_vars = pts.size();
    auto lp_row = [&](const std::map<LatticePoint, Rational>& coef) {
        std::vector<Rational> r(pts.size(), Rational(0));
        for (const auto& [p, c] : coef) r[idx.at(p)] += c;
        return r;
    };
    for (const auto& row : rows) lp.add_row(lp_row(row.coef), LinearProgram::Rel::GE, Rational(1));
    for (const auto& p : l.pieces) {
        const auto& v = p.cell.polygon.vertices;
        for (const auto& w : p.cell.lattice_points) {
            if (w == v[0] || w == v[1] || w == v[2]) continue;
            // h(w) = plane through the three lifted vertices, i.e. the affine
            // combination w = la*v0 + lb*v1 + lc*v2 transfers to heights.
            const Rational det{cross(v[0], v[1], v[2])};
            std::map<LatticePoint, Rational> coef;
            coef[w] += 1;
            coef[v[0]] -= Rational(cross(w, v[1], v[2])) / det;
            coef[v[1]] -= Rational(cross(v[0], w, v[2])) / det;
            coef[v[2]] -= Rational(cross(v[0], v[1], w)) / det;
            lp.add_row(lp_row(coef), LinearProgram::Rel::EQ, Rational(0));
        }
    }
    lp.objective = std::vector<Rational>(pts.size(), Rational(1));
    LPResult res = solve_lp(lp);
    if (res.status != LPResult::Status::OPTIMAL) {
        std::string msg = "solve_heights: infeasible layout";
        for (std::size_t r : res.infeasible_rows)
            if (r < rows.size()) {
                msg += "; violating edge (" + std::to_string(rows[r].a.x) + "," +
                       std::to_string(rows[r].a.y) + ")-(" + std::to_string(rows[r].b.x) + "," +
                       std::to_string(rows[r].b.y) + ")";
                break;
            }
        throw std::runtime_error(msg);
    }
    Integer denom_lcm = 1;
    for (const auto& v : res.x) denom_lcm = boost::multiprecision::lcm(denom_lcm, den(v));
    Lifting out;
    for (const auto& p : pts) out.heights[p] = res.x[idx.at(p)] * Rational(denom_lcm);
    if (detail::cell_key_set(subdivision_of_lifting(out)) != target_keys)
        throw std::logic_error("solve_heights: recomputed subdivision mismatch");
    return out;
}

// Q_t from layout + heights: a_{i,j}(t) = c_{i,j} t^{nu(i,j)}.
inline ParamPoly assemble(const Layout& l, const Lifting& v) {
    std::map<Exponent, Rational> coeff;
    for (const auto& p : l.pieces)
        for (const auto& [e, c] : p.poly.terms) {
            auto [it, fresh] = coeff.try_emplace(e, c);
            if (!fresh && it->second != c)
                throw std::invalid_argument(
                    "assemble: coefficient conflict at (" + std::to_string(e.i) + "," +
                    std::to_string(e.j) + ")");
        }
    ParamPoly q;
    for (const auto& [e, c] : coeff) {
        auto it = v.heights.find({e.i, e.j});
        if (it == v.heights.end())
            throw std::invalid_argument("assemble: lifting missing a support point");
        if (den(it->second) != 1 || it->second < 0)
            throw std::invalid_argument("assemble: heights must be nonnegative integers");
        q.add_term(e, TPoly::monomial(num(it->second).convert_to<long>(), c));
    }
    return q;
}

struct GluingReport {
    struct CellRecord {
        Polygon cell;
        bool eligible = false;
        bool hessian_cell_found = false;
        bool exact_equal = false;
    };
    std::vector<CellRecord> cells;
    bool overall_pass = true;
};

// The gluing identity: for every 2-cell of tau_nu inside {x>=2, y>=2}, the
// hessian of the truncation reappears as a truncation of the hessian.
inline GluingReport verify_hessian_gluing(const ParamPoly& Q) {
    GluingReport rep;
    if (Q.is_zero()) return rep;
    auto [lift, sub] = lower_subdivision(Q);
    ParamPoly H = hessian(Q);
    std::optional<std::pair<Lifting, Subdivision>> hsub;
    if (!H.is_zero()) hsub.emplace(lower_subdivision(H));
    for (const Cell* c : sub.cells_of_dim(2)) {
        GluingReport::CellRecord rec;
        rec.cell = c->polygon;
        rec.eligible = true;
        for (const auto& v : c->polygon.vertices)
            if (v.x < 2 || v.y < 2) rec.eligible = false;
        if (!rec.eligible) {
            rep.cells.push_back(rec);
            continue;
        }
        BiPoly qc = truncate(Q, *c, support_for_cell(lift, sub, *c));
        BiPoly hq = hessian(qc);
        if (!hq.is_zero() && hsub) {
            const Cell* hc = hsub->second.find(newton_polygon(hq));
            if (hc) {
                rec.hessian_cell_found = true;
                rec.exact_equal =
                    truncate(H, *hc, support_for_cell(hsub->first, hsub->second, *hc)) == hq;
            }
        }
        rep.overall_pass = rep.overall_pass && rec.hessian_cell_found && rec.exact_equal;
        rep.cells.push_back(rec);
    }
    return rep;
}

struct TopologySettings {
    int base_resolution = 512;   // grid points per quadrant axis at the first t
    Rational window_margin = 6;  // octaves beyond the fold-slope extent
    int max_refinements = 12;
    int resolution_cap = 16384;
};

// Deepen t = 1/2, 1/4, 1/16, ... (squared denominator) until two consecutive
// censuses agree and reach the predicted count; returns the first t of the
// stabilized pair and its doubling-audited census. The window grows like the
// fold slopes times log2(1/t); resolution scales to keep octave density fixed.
inline std::pair<Rational, ComponentCensus> select_t(const ParamPoly& Q, int predicted,
                                                     const TopologySettings& cfg = {}) {
    if (predicted < 0) throw std::invalid_argument("select_t: predicted must be >= 0");
    if (Q.is_zero()) throw std::invalid_argument("select_t: zero polynomial");
    auto [lift, sub] = lower_subdivision(Q);
    const Rational slope = detail::max_fold_slope(lift, sub);
    ParamPoly H = hessian(Q);
    if (H.is_zero()) throw std::invalid_argument("select_t: hessian is identically zero");

    auto window_of = [&](long e) { return cfg.window_margin + slope * e; };
    const Rational K1 = window_of(1);
    auto resolution_of = [&](long e) {
        Rational need = Rational(cfg.base_resolution) * window_of(e) / K1;
        Integer nn = num(need) / den(need);
        if (Rational(nn) < need) ++nn;
        if (nn % 2 != 0) ++nn;
        if (nn > cfg.resolution_cap)
            throw std::runtime_error("select_t: resolution cap exceeded before stabilization");
        return static_cast<int>(nn.convert_to<long>());
    };

    long prev_e = 0;
    ComponentCensus prev;
    long e = 1;
    for (int iter = 0; iter <= cfg.max_refinements; ++iter, e *= 2) {
        const Rational t(Integer(1), Integer(1) << static_cast<unsigned>(e));
        BiPoly F = specialize_t(H, t);
        ComponentCensus cen = detail::census_once(F, window_of(e), resolution_of(e));
        if (iter > 0 && census_equal(prev, cen) && cen.compact_in_R2 >= predicted) {
            const Rational tstar(Integer(1), Integer(1) << static_cast<unsigned>(prev_e));
            ComponentCensus final_census = count_components(
                specialize_t(H, tstar), window_of(prev_e), resolution_of(prev_e), true);
            return {tstar, final_census};
        }
        prev = std::move(cen);
        prev_e = e;
    }
    throw std::runtime_error("select_t: no stabilization within the refinement cap");
}

}  // namespace hessweave
