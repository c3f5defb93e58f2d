#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "sbc/cubature.hpp"
#include "sbc/testfns.hpp"

using namespace sbc;

namespace {

const std::vector<Point2> kSquare{{0, 0}, {1, 0}, {1, 1}, {0, 1}};

std::vector<Point2> vertices(const Region& r) {
    std::vector<Point2> v;
    for (const Curve& c : r.curves()) v.push_back(c.start());
    return v;
}

std::vector<Point2> dense_boundary(const Region& r, int per_curve) {
    std::vector<Point2> out;
    for (const Curve& c : r.curves())
        for (int k = 0; k < per_curve; ++k) out.push_back(c.eval_unchecked(static_cast<double>(k) / per_curve));
    return out;
}

}  // namespace

TEST_CASE("closure is enforced") {
    CHECK_THROWS_AS(Region({Curve::segment({0, 0}, {1, 0}), Curve::segment({1, 0}, {0, 1}),
                            Curve::segment({0, 1}, {0, 1e-9})}),
                    std::invalid_argument);
    CHECK_NOTHROW(Region({Curve::segment({0, 0}, {1, 0}), Curve::segment({1, 0}, {0, 1}),
                          Curve::segment({0, 1}, {0, 1e-13})}));
    CHECK_NOTHROW(Region({Curve::segment({0, 0}, {1, 0}), Curve::segment({1, 0}, {0, 1}),
                          Curve::segment({0, 1}, {0, 1e-9})},
                         RegionOptions{1e-8, true}));
    CHECK_THROWS_AS(Region(std::vector<Curve>{}), std::invalid_argument);
}

TEST_CASE("zero-length segments and clockwise loops are rejected") {
    CHECK_THROWS_AS(polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);
    CHECK_NOTHROW(Region({Curve::segment({0, 0}, {0, 1}), Curve::segment({0, 1}, {1, 0}),
                          Curve::segment({1, 0}, {0, 0})},
                         RegionOptions{1e-12, false}));
}

TEST_CASE("resolve_center") {
    const Region sq = polygon(kSquare);
    const Point2 va = resolve_center(sq, center::VertexAverage{});
    CHECK(va.x == 0.5);
    CHECK(va.y == 0.5);
    const Point2 o = resolve_center(sq, center::Origin{});
    CHECK(o.x == 0.0);
    CHECK(o.y == 0.0);
    CHECK(resolve_center(sq, center::Vertex{2}).x == 1.0);
    CHECK(resolve_center(sq, center::Custom{{3, -4}}).y == -4.0);
    CHECK_THROWS_AS(resolve_center(sq, center::Vertex{4}), std::invalid_argument);

    const Region bez = lookup_geometry("bezier").make();
    const Point2 b = resolve_center(bez, center::VertexAverage{});
    CHECK(std::abs(b.x - (0 + 10.0 / 13 + 10.0 / 13 + 0) / 4) < 1e-15);
    CHECK(std::abs(b.y - (3.0 / 26 + 3.0 / 26 + 23.0 / 26 + 23.0 / 26) / 4) < 1e-15);
}

TEST_CASE("decompose") {
    const Region bez = lookup_geometry("bezier").make();
    const auto tris = decompose(bez, {0.3, 0.4});
    REQUIRE(tris.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(tris[i].x0.x == 0.3);
        CHECK(norm(tris[i].curve.start() - bez.curves()[i].start()) == 0.0);
    }
    // x0 at a triangle vertex: the two incident edges have zero perpendicular distance.
    const Region t3 = lookup_geometry("T3").make();
    int zero = 0;
    for (const CurvedTriangle& tri : decompose(t3, {0, 0}))
        if (std::abs(edge_data(tri.curve.as_segment(), tri.x0).ell) < 1e-15) ++zero;
    CHECK(zero == 2);
}

TEST_CASE("star convexity examples") {
    const Region sq = polygon(kSquare);
    CHECK(is_star_convex(sq, {0.5, 0.5}));
    CHECK_FALSE(is_star_convex(sq, {5, 5}));
    const Region dart = lookup_geometry("quad_nonconvex").make();
    CHECK(is_star_convex(dart, {0.4, 0.4}));
    CHECK_FALSE(is_star_convex(dart, {1.0, 0.3}));
    CHECK_THROWS_AS(is_star_convex(sq, {0.5, 0.5}, 1), std::invalid_argument);
}

TEST_CASE("star convexity agrees with a visibility oracle") {
    std::mt19937_64 rng(11);
    for (const char* name : {"quad_nonconvex", "decagon_nonconvex", "hexagon_convex", "bezier", "deltoid"}) {
        const Region r = lookup_geometry(name).make();
        const bool poly = r.all_segments();
        const std::vector<Point2> boundary = poly ? vertices(r) : dense_boundary(r, 400);
        std::uniform_real_distribution<double> ux(r.bbox_min().x, r.bbox_max().x), uy(r.bbox_min().y, r.bbox_max().y);
        int tested = 0, star = 0;
        while (tested < 60) {
            const Point2 x0{ux(rng), uy(rng)};
            if (!oracle::inside_polygon(boundary, x0)) continue;
            ++tested;
            const bool expect = oracle::visible_from(boundary, x0);
            star += expect;
            CHECK_MESSAGE(is_star_convex(r, x0, 512) == expect, name << " x0=(" << x0.x << "," << x0.y << ")");
        }
        if (std::string(name) == "hexagon_convex") CHECK(star == tested);
    }
}

TEST_CASE("signed area is independent of x0 and flips under reversal") {
    for (const char* name : {"bezier", "deltoid", "circle", "T4", "decagon_nonconvex", "egg"}) {
        const Region r = lookup_geometry(name).make();
        const double a0 = signed_area(r.curves(), {0, 0});
        const double a1 = signed_area(r.curves(), resolve_center(r, center::VertexAverage{}));
        const double a2 = signed_area(r.curves(), {10, -3});
        CHECK(a0 > 0.0);
        CHECK(std::abs(a1 - a0) <= 1e-12 * a0);
        CHECK(std::abs(a2 - a0) <= 1e-12 * a0);
        const Region rev = r.reversed();
        CHECK(std::abs(signed_area(rev.curves(), {0.1, 0.2}) + a0) <= 1e-12 * a0);
    }
    CHECK(std::abs(signed_area(lookup_geometry("decagon_nonconvex").make().curves(), {0, 0}) -
                   oracle::polygon_area(vertices(lookup_geometry("decagon_nonconvex").make()))) < 1e-13);
}

TEST_CASE("bounding box and scale") {
    const Region sq = polygon(kSquare);
    CHECK(sq.bbox_min().x == 0.0);
    CHECK(sq.bbox_max().y == 1.0);
    CHECK(std::abs(sq.scale() - std::sqrt(2.0)) < 1e-15);
    CHECK(sq.all_segments());
    CHECK_FALSE(lookup_geometry("T4").make().all_segments());
}
