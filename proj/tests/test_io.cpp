#include "hessweave/io_json.hpp"
#include "hessweave/svg.hpp"

#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace hessweave;

TEST_CASE("BiPoly JSON round-trips bit-exactly", "[io]") {
    hwtest::Rng rng(7001);
    for (int rep = 0; rep < 25; ++rep) {
        BiPoly p;
        int terms = 1 + static_cast<int>(rng.range(0, 8));
        for (int k = 0; k < terms; ++k)
            p.add_term({static_cast<int>(rng.range(0, 9)), static_cast<int>(rng.range(0, 9))},
                       rng.nonzero_rational(-99, 99, 40));
        Json j = poly_to_json(p);
        REQUIRE(bipoly_from_json(j) == p);
        // Through text as well.
        REQUIRE(bipoly_from_json(Json::parse(j.dump())) == p);
    }
}

TEST_CASE("ParamPoly JSON round-trips bit-exactly", "[io]") {
    hwtest::Rng rng(7002);
    for (int rep = 0; rep < 25; ++rep) {
        ParamPoly p;
        int terms = 1 + static_cast<int>(rng.range(0, 6));
        for (int k = 0; k < terms; ++k) {
            TPoly c;
            int powers = 1 + static_cast<int>(rng.range(0, 3));
            for (int q = 0; q < powers; ++q)
                c = c + TPoly::monomial(rng.range(0, 40), rng.nonzero_rational(-99, 99, 40));
            if (c.is_zero()) continue;
            p.add_term({static_cast<int>(rng.range(0, 9)), static_cast<int>(rng.range(0, 9))}, c);
        }
        if (p.is_zero()) continue;
        Json j = poly_to_json(p);
        REQUIRE(parampoly_from_json(Json::parse(j.dump())) == p);
    }
}

TEST_CASE("polynomial JSON is canonical and validated", "[io]") {
    BiPoly p;
    p.add_term({2, 1}, Rational(1, 3));
    p.add_term({0, 5}, Rational(-2));
    p.add_term({2, 0}, Rational(7));
    Json j = poly_to_json(p);
    REQUIRE(j["vars"] == Json::array({"X", "Y"}));
    // lexicographic on (i, j)
    REQUIRE(j["terms"][0]["e"] == Json::array({0, 5}));
    REQUIRE(j["terms"][1]["e"] == Json::array({2, 0}));
    REQUIRE(j["terms"][2]["e"] == Json::array({2, 1}));
    REQUIRE(j["terms"][0]["c"] == "-2/1");

    REQUIRE_THROWS_AS(bipoly_from_json(Json::parse("{}")), std::invalid_argument);
    REQUIRE_THROWS_AS(bipoly_from_json(Json::parse(R"({"vars":["X"],"terms":[]})")),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(bipoly_from_json(Json::parse(R"({"vars":["Y","X"],"terms":[]})")),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(
        parampoly_from_json(Json::parse(
            R"({"vars":["X","Y","t"],"terms":[{"e":[0,0],"c":[[-1,"1/1"]]}]})")),
        std::invalid_argument);
    REQUIRE(is_param_poly_json(Json::parse(R"({"vars":["X","Y","t"],"terms":[]})")));
    REQUIRE(!is_param_poly_json(Json::parse(R"({"vars":["X","Y"],"terms":[]})")));
}

TEST_CASE("subdivision and census JSON schemas", "[io]") {
    ParamPoly q;
    q.add_term({0, 0}, TPoly::monomial(0, 1));
    q.add_term({1, 0}, TPoly::monomial(0, 1));
    q.add_term({0, 1}, TPoly::monomial(0, 1));
    q.add_term({1, 1}, TPoly::monomial(1, 1));
    auto [lift, sub] = lower_subdivision(q);
    Json j = subdivision_to_json(lift, sub);
    REQUIRE(j.contains("polygon"));
    REQUIRE(j.contains("cells"));
    REQUIRE(j.contains("heights"));
    REQUIRE(j["polygon"].size() == 4);
    int two_cells = 0;
    for (const auto& c : j["cells"])
        if (c["dim"] == 2) ++two_cells;
    REQUIRE(two_cells == 2);
    REQUIRE(j["heights"][0] == Json::array({0, 0, "0/1"}));

    BiPoly circle;
    circle.add_term({2, 0}, 1);
    circle.add_term({0, 2}, 1);
    circle.add_term({0, 0}, -1);
    ComponentCensus cen = count_components(circle, Rational(4), 64, true);
    Json cj = census_to_json(cen);
    REQUIRE(cj.size() == 5);
    REQUIRE(cj["compact_in_R2"] == 1);
    REQUIRE(cj["per_quadrant"] == Json::array({0, 0, 0, 0}));
    REQUIRE(cj["boundary_touching"] == 0);
    REQUIRE(cj["resolution"] == 64);
    REQUIRE(cj["stable"] == true);
}

TEST_CASE("layout and gluing report JSON", "[io]") {
    Layout l = complete_layout(paper_layout(4, LayoutMode::Literal));
    Json j = layout_to_json(l, LayoutMode::Literal);
    REQUIRE(j["d"] == 4);
    REQUIRE(j["mode"] == "literal");
    REQUIRE(j["pieces"].size() == 4);
    REQUIRE(j["pieces"][0].contains("kind"));
    REQUIRE(j["pieces"][0].contains("cell"));
    REQUIRE(j["pieces"][0]["poly"].contains("terms"));

    GluingReport rep = verify_hessian_gluing(assemble(l, solve_heights(l)));
    Json gj = gluing_report_to_json(rep);
    REQUIRE(gj["overall_pass"] == true);
    REQUIRE(gj["cells"].size() == 4);
    for (const auto& c : gj["cells"]) {
        REQUIRE(c["eligible"] == true);
        REQUIRE(c["hessian_cell_found"] == true);
        REQUIRE(c["exact_equal"] == true);
    }
}

TEST_CASE("SVG emitters are deterministic and well-formed", "[io]") {
    Layout l = complete_layout(paper_layout(5, LayoutMode::Literal));
    ParamPoly q = assemble(l, solve_heights(l));
    auto [lift, sub] = lower_subdivision(q);
    std::string svg1 = subdivision_svg(sub);
    std::string svg2 = subdivision_svg(sub);
    REQUIRE(svg1 == svg2);
    REQUIRE(svg1.rfind("<svg ", 0) == 0);
    REQUIRE(svg1.find("</svg>") != std::string::npos);
    std::size_t paths = 0;
    for (std::size_t pos = 0; (pos = svg1.find("<path", pos)) != std::string::npos; ++pos)
        ++paths;
    REQUIRE(paths == 13);  // one per 2-cell

    BiPoly circle;
    circle.add_term({2, 0}, 1);
    circle.add_term({0, 2}, 1);
    circle.add_term({0, 0}, -1);
    ComponentCensus cen = count_components(circle, Rational(4), 64, false);
    std::string cs1 = curve_svg(cen);
    REQUIRE(cs1 == curve_svg(cen));
    REQUIRE(cs1.find("stroke=\"#1b6ca8\"") != std::string::npos);
    REQUIRE(cs1.find("viewBox=\"0 0 128 128\"") != std::string::npos);
}
