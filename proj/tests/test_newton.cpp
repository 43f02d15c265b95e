#include <hessweave/newton.hpp>

#include <catch_amalgamated.hpp>

#include "test_util.hpp"

using namespace hessweave;

static BiPoly mono(int i, int j, long n, long d = 1) {
    return BiPoly::monomial(i, j, Rational(n, d));
}

// X + Y + Y^2 style tri-term builder
static ParamPoly pterm(std::initializer_list<std::tuple<int, int, long, long>> items) {
    // (i, j, t-power, coeff)
    ParamPoly p;
    for (auto [i, j, k, c] : items) p.add_term({i, j}, TPoly::monomial(k, Rational(c)));
    return p;
}

TEST_CASE("newton polygon examples") {
    BiPoly p = mono(1, 0, 1) + mono(0, 1, 1) + mono(0, 2, 1);
    Polygon t = newton_polygon(p);
    CHECK(t.vertices == std::vector<LatticePoint>{{0, 1}, {1, 0}, {0, 2}});
    CHECK(t.dim() == 2);

    Polygon pt = newton_polygon(mono(2, 2, 5));
    CHECK(pt.vertices == std::vector<LatticePoint>{{2, 2}});
    CHECK(pt.dim() == 0);

    BiPoly sq = mono(0, 0, 1) + mono(1, 0, 1) + mono(0, 1, 1) + mono(1, 1, 1);
    Polygon s = newton_polygon(sq);
    CHECK(s.vertices == std::vector<LatticePoint>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    CHECK_THROWS_AS(newton_polygon(BiPoly{}), std::domain_error);
}

TEST_CASE("convex hull canonical ordering") {
    Polygon h = convex_hull({{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}});
    CHECK(h.vertices == std::vector<LatticePoint>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    Polygon seg = convex_hull({{1, 1}, {3, 3}, {2, 2}});
    CHECK(seg.vertices == std::vector<LatticePoint>{{1, 1}, {3, 3}});
    CHECK(seg.dim() == 1);
}

TEST_CASE("lattice points and area") {
    Polygon tri = convex_hull({{0, 0}, {2, 0}, {0, 2}});
    auto pts = lattice_points_of(tri);
    CHECK(pts.size() == 6);
    CHECK(area2(tri) == 4);
}

TEST_CASE("minkowski sum examples") {
    Polygon t = convex_hull({{0, 0}, {1, 0}, {0, 1}});
    Polygon tt = minkowski_sum(t, t);
    CHECK(tt.vertices == std::vector<LatticePoint>{{0, 0}, {2, 0}, {0, 2}});
    Polygon shift = minkowski_sum(t, convex_hull({{3, 5}}));
    CHECK(shift.vertices == std::vector<LatticePoint>{{3, 5}, {4, 5}, {3, 6}});
    Polygon sq = minkowski_sum(convex_hull({{0, 0}, {1, 0}}), convex_hull({{0, 0}, {0, 1}}));
    CHECK(sq.vertices == std::vector<LatticePoint>{{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

TEST_CASE("minkowski sum properties") {
    hwtest::Rng rng(23);
    auto rand_poly_pos = [&](int d) {
        BiPoly p;
        for (int k = 0; k < 6; ++k)
            p.add_term({static_cast<int>(rng.range(0, d)), static_cast<int>(rng.range(0, d))},
                       Rational(rng.range(1, 9)));
        return p;
    };
    for (int rep = 0; rep < 10; ++rep) {
        BiPoly p = rand_poly_pos(3), q = rand_poly_pos(3);
        CHECK(newton_polygon(p * q) == minkowski_sum(newton_polygon(p), newton_polygon(q)));
        BiPoly r = rand_poly_pos(2);
        Polygon a = newton_polygon(p), b = newton_polygon(q), c = newton_polygon(r);
        CHECK(minkowski_sum(a, b) == minkowski_sum(b, a));
        CHECK(minkowski_sum(minkowski_sum(a, b), c) == minkowski_sum(a, minkowski_sum(b, c)));
    }
}

TEST_CASE("lower subdivision: 1+X+Y+tXY") {
    ParamPoly p = pterm({{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}});
    auto [lift, sub] = lower_subdivision(p);
    CHECK(lift.heights.at({1, 1}) == Rational(1));
    auto two = sub.cells_of_dim(2);
    REQUIRE(two.size() == 2);
    CHECK(two[0]->polygon.vertices == std::vector<LatticePoint>{{0, 0}, {1, 0}, {0, 1}});
    CHECK(two[1]->polygon.vertices == std::vector<LatticePoint>{{0, 1}, {1, 0}, {1, 1}});
    // supports
    AffineSupport s0 = support_for_cell(lift, *two[0]);
    CHECK((s0.alpha == 0 && s0.beta == 0 && s0.gamma == 0));
    AffineSupport s1 = support_for_cell(lift, *two[1]);
    CHECK((s1.alpha == 1 && s1.beta == 1 && s1.gamma == -1));
    // truncations
    CHECK(truncate(p, *two[1], s1) == mono(1, 0, 1) + mono(0, 1, 1) + mono(1, 1, 1));
    CHECK(truncate(p, *two[0], s0) == mono(0, 0, 1) + mono(1, 0, 1) + mono(0, 1, 1));
}

TEST_CASE("lower subdivision: trivial lift is one cell") {
    BiPoly q = mono(0, 0, 1) + mono(2, 0, 1) + mono(0, 2, 1) + mono(1, 0, 3);
    auto [lift, sub] = lower_subdivision(as_param(q));
    auto two = sub.cells_of_dim(2);
    REQUIRE(two.size() == 1);
    CHECK(two[0]->polygon == sub.polygon);
    CHECK(two[0]->lattice_points.size() == 4);  // only lifted points, on face
}

TEST_CASE("lower subdivision: X+tY segment") {
    ParamPoly p = pterm({{1, 0, 0, 1}, {0, 1, 1, 1}});
    auto [lift, sub] = lower_subdivision(p);
    CHECK(sub.polygon.dim() == 1);
    auto ones = sub.cells_of_dim(1);
    REQUIRE(ones.size() == 1);
    CHECK(ones[0]->polygon.vertices == std::vector<LatticePoint>{{0, 1}, {1, 0}});
    AffineSupport s = support_for_cell(lift, *ones[0]);
    CHECK((s.alpha == 0 && s.beta == 1 && s.gamma == 0));
    CHECK(truncate(p, *ones[0], s) == mono(1, 0, 1) + mono(0, 1, 1));
}

TEST_CASE("truncation independence of support choice") {
    ParamPoly p = pterm({{1, 0, 0, 1}, {0, 1, 1, 1}});
    auto [lift, sub] = lower_subdivision(p);
    const Cell& edge = *sub.cells_of_dim(1)[0];
    // any member of the family (s, 1+s, -s) is a valid support
    for (long s : {-2L, 1L, 3L}) {
        AffineSupport L{Rational(s), Rational(1 + s), Rational(-s)};
        CHECK(truncate(p, edge, L) == mono(1, 0, 1) + mono(0, 1, 1));
    }
    AffineSupport bad{Rational(5), Rational(0), Rational(0)};
    CHECK_THROWS_AS(truncate(p, edge, bad), std::invalid_argument);
}

TEST_CASE("subdivision well-formedness: areas add up") {
    hwtest::Rng rng(31);
    for (int rep = 0; rep < 8; ++rep) {
        ParamPoly p;
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                p.add_term({i, j}, TPoly::monomial(rng.range(0, 4), Rational(rng.range(1, 5))));
        auto [lift, sub] = lower_subdivision(p);
        long long total = 0;
        for (const Cell* c : sub.cells_of_dim(2)) total += area2(c->polygon);
        CHECK(total == area2(sub.polygon));
        // every 1-cell is an edge of the subdivision complex; every lifted point
        // appears in some cell's lattice points only if on the lower face
        for (const Cell* c : sub.cells_of_dim(2)) {
            AffineSupport s = support_for_cell(lift, *c);
            for (const auto& q : c->lattice_points)
                CHECK(s.at(q) == lift.heights.at(q));
            for (const auto& [q, h] : lift.heights)
                CHECK(s.at(q) <= h);
        }
    }
}

TEST_CASE("re-lifting the subdivision supports reproduces the cells") {
    ParamPoly p = pterm({{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 1, 1},
                         {2, 0, 1, 1}, {0, 2, 2, 1}, {2, 2, 3, 1}, {2, 1, 2, 1},
                         {1, 2, 2, 1}});
    auto [lift, sub] = lower_subdivision(p);
    Subdivision again = subdivision_of_lifting(lift);
    REQUIRE(sub.cells.size() == again.cells.size());
    for (std::size_t k = 0; k < sub.cells.size(); ++k)
        CHECK(sub.cells[k].polygon == again.cells[k].polygon);
}

TEST_CASE("support_for_cell rejects non-cells") {
    ParamPoly p = pterm({{0, 0, 0, 1}, {1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 1, 1}});
    auto [lift, sub] = lower_subdivision(p);
    Cell fake = cell_from_vertices({{0, 0}, {1, 0}, {1, 1}});  // crosses the fold
    CHECK_THROWS_AS(support_for_cell(lift, fake), std::invalid_argument);
}

TEST_CASE("monomial polynomial: dim-0 subdivision") {
    auto [lift, sub] = lower_subdivision(pterm({{2, 2, 1, 3}}));
    CHECK(sub.polygon.dim() == 0);
    REQUIRE(sub.cells.size() == 1);
    CHECK(sub.cells[0].dim == 0);
}

TEST_CASE("segment with above-chord midpoint") {
    // heights 0, 1, 0 on (0,0),(1,0),(2,0): lower hull skips the middle
    ParamPoly p = pterm({{0, 0, 0, 1}, {1, 0, 1, 1}, {2, 0, 0, 1}});
    auto [lift, sub] = lower_subdivision(p);
    auto ones = sub.cells_of_dim(1);
    REQUIRE(ones.size() == 1);
    CHECK(ones[0]->polygon.vertices == std::vector<LatticePoint>{{0, 0}, {2, 0}});
    CHECK(ones[0]->lattice_points == std::vector<LatticePoint>{{0, 0}, {2, 0}});
    // and with height 0 in the middle it lies on the face
    ParamPoly q = pterm({{0, 0, 0, 1}, {1, 0, 0, 1}, {2, 0, 0, 1}});
    auto [lq, sq] = lower_subdivision(q);
    auto e = sq.cells_of_dim(1);
    REQUIRE(e.size() == 1);
    CHECK(e[0]->lattice_points.size() == 3);
}
