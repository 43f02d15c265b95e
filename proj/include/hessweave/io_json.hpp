#pragma once

#include "newton.hpp"
#include "patchwork.hpp"
#include "ratpoly.hpp"
#include "topology.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace hessweave {

using Json = nlohmann::ordered_json;

inline Json point_json(const LatticePoint& p) { return Json::array({p.x, p.y}); }

inline Json polygon_json(const Polygon& poly) {
    Json out = Json::array();
    for (const auto& v : poly.vertices) out.push_back(point_json(v));
    return out;
}

inline Json poly_to_json(const BiPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms)
        terms.push_back({{"e", Json::array({e.i, e.j})}, {"c", to_fraction_string(c)}});
    return {{"vars", Json::array({"X", "Y"})}, {"terms", std::move(terms)}};
}

inline Json poly_to_json(const ParamPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms) {
        Json powers = Json::array();
        for (const auto& [k, v] : c.coeffs) powers.push_back(Json::array({k, to_fraction_string(v)}));
        terms.push_back({{"e", Json::array({e.i, e.j})}, {"c", std::move(powers)}});
    }
    return {{"vars", Json::array({"X", "Y", "t"})}, {"terms", std::move(terms)}};
}

namespace detail {

inline void require_vars(const Json& j, std::size_t arity) {
    static const char* names[] = {"X", "Y", "t"};
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        throw std::invalid_argument("polynomial JSON: need \"vars\" and \"terms\"");
    const Json& vars = j.at("vars");
    if (!vars.is_array() || vars.size() != arity)
        throw std::invalid_argument("polynomial JSON: unexpected \"vars\"");
    for (std::size_t k = 0; k < arity; ++k)
        if (vars.at(k) != names[k]) throw std::invalid_argument("polynomial JSON: unexpected \"vars\"");
}

inline Exponent exponent_of_json(const Json& e) {
    if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("polynomial JSON: \"e\" must be [i,j]");
    return {e.at(0).get<int>(), e.at(1).get<int>()};
}

}  // namespace detail

inline bool is_param_poly_json(const Json& j) {
    return j.is_object() && j.contains("vars") && j.at("vars").is_array() && j.at("vars").size() == 3;
}

inline BiPoly bipoly_from_json(const Json& j) {
    detail::require_vars(j, 2);
    BiPoly p;
    for (const Json& t : j.at("terms"))
        p.add_term(detail::exponent_of_json(t.at("e")),
                   parse_rational(t.at("c").get<std::string>()));
    return p;
}

inline ParamPoly parampoly_from_json(const Json& j) {
    detail::require_vars(j, 3);
    ParamPoly p;
    for (const Json& t : j.at("terms")) {
        TPoly c;
        for (const Json& kv : t.at("c")) {
            if (!kv.is_array() || kv.size() != 2)
                throw std::invalid_argument("polynomial JSON: t-coefficient must be [k,\"num/den\"]");
            long k = kv.at(0).get<long>();
            if (k < 0) throw std::invalid_argument("polynomial JSON: negative t-power");
            c = c + TPoly::monomial(k, parse_rational(kv.at(1).get<std::string>()));
        }
        p.add_term(detail::exponent_of_json(t.at("e")), c);
    }
    return p;
}

inline Json subdivision_to_json(const Lifting& lift, const Subdivision& sub) {
    Json cells = Json::array();
    for (const Cell& c : sub.cells)
        cells.push_back({{"dim", c.dim}, {"verts", polygon_json(c.polygon)}});
    Json heights = Json::array();
    for (const auto& [p, h] : lift.heights)
        heights.push_back(Json::array({p.x, p.y, to_fraction_string(h)}));
    return {{"polygon", polygon_json(sub.polygon)},
            {"cells", std::move(cells)},
            {"heights", std::move(heights)}};
}

inline Json layout_to_json(const Layout& l, LayoutMode mode) {
    Json pieces = Json::array();
    for (const Piece& p : l.pieces)
        pieces.push_back({{"kind", to_string(p.kind)},
                          {"cell", polygon_json(p.cell.polygon)},
                          {"poly", poly_to_json(p.poly)}});
    return {{"d", l.degree_param},
            {"mode", mode == LayoutMode::Literal ? "literal" : "simplex"},
            {"pieces", std::move(pieces)}};
}

inline Json census_to_json(const ComponentCensus& c) {
    return {{"compact_in_R2", c.compact_in_R2},
            {"per_quadrant", Json::array({c.per_quadrant[0], c.per_quadrant[1], c.per_quadrant[2],
                                          c.per_quadrant[3]})},
            {"boundary_touching", c.boundary_touching},
            {"resolution", c.resolution},
            {"stable", c.stable}};
}

inline Json gluing_report_to_json(const GluingReport& rep) {
    Json cells = Json::array();
    for (const auto& r : rep.cells)
        cells.push_back({{"cell", polygon_json(r.cell)},
                         {"eligible", r.eligible},
                         {"hessian_cell_found", r.hessian_cell_found},
                         {"exact_equal", r.exact_equal}});
    return {{"overall_pass", rep.overall_pass}, {"cells", std::move(cells)}};
}

inline Json smoothness_to_json(const SmoothnessReport& rep) {
    Json comps = Json::array();
    for (const auto& r : rep.per_component)
        comps.push_back({{"component", r.component},
                         {"compact", r.compact},
                         {"pass", r.pass},
                         {"cells_checked", r.cells_checked}});
    return {{"all_pass", rep.all_pass},
            {"cells_checked", rep.cells_checked},
            {"per_component", std::move(comps)}};
}

}  // namespace hessweave
