#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"
#include "sbc/singular.hpp"
#include "sbc/testfns.hpp"

using namespace sbc;

namespace {

std::vector<Point2> vertices(const Region& r) {
    std::vector<Point2> v;
    for (const Curve& c : r.curves()) v.push_back(c.start());
    return v;
}

// Forward difference of order k along direction v with step h.
double forward_difference(const ScalarField& f, Point2 x, Vec2 v, double h, int k) {
    double s = 0.0;
    for (int i = 0; i <= k; ++i)
        s += ((k - i) % 2 ? -1.0 : 1.0) * boost::math::binomial_coefficient<double>(k, i) * f(x + (i * h) * v);
    return s;
}

}  // namespace

TEST_CASE("lookup examples") {
    const double f = lookup_function("fF1").field({0.5, 0.5});
    CHECK(std::isfinite(f));
    CHECK(f > 0.0);
    const auto t3 = vertices(lookup_geometry("T3").make());
    REQUIRE(t3.size() == 3);
    CHECK(norm(t3[2] - Point2{0.5, std::sqrt(3.0) / 2}) < 1e-15);
    for (Point2 x : {Point2{0, 0}, Point2{3, -7}}) CHECK(lookup_function("fC1").field(x) == 1.0);
    CHECK(std::holds_alternative<const NamedGeometry*>(lookup("bezier")));
    CHECK(std::holds_alternative<const NamedFunction*>(lookup("fS3")));
}

TEST_CASE("unknown names list what is available") {
    try {
        lookup_function("nope");
        FAIL("expected NotFoundError");
    } catch (const NotFoundError& e) {
        CHECK(std::string(e.what()).find("fF1") != std::string::npos);
    }
    CHECK_THROWS_AS(lookup_geometry("fF1"), NotFoundError);
    CHECK_THROWS_AS(lookup("zzz"), NotFoundError);
}

TEST_CASE("registry names are unique and geometries valid") {
    std::set<std::string> names;
    for (const auto& f : builtin_functions()) CHECK(names.insert(f.name).second);
    for (const auto& g : builtin_geometries()) {
        CHECK(names.insert(g.name).second);
        CHECK_NOTHROW(g.make());
    }
    for (const char* n : {"fF1", "fF2", "fF3", "fC1", "fC2", "fC3", "fC4", "fS1", "fS2", "fS3", "fS4", "fS5", "fS6",
                          "p0", "p5", "g1", "g2", "bezier", "deltoid", "circle", "egg", "T1", "T2", "T3", "T4"})
        CHECK_MESSAGE(names.count(n) == 1, n);
}

TEST_CASE("polynomial metadata matches the field and its degree") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const NamedFunction& f : builtin_functions()) {
        if (!f.polynomial) continue;
        const int d = f.polynomial->degree();
        for (int k = 0; k < 10; ++k) {
            const Point2 x{u(rng), u(rng)};
            const double a = f.field(x), b = (*f.polynomial)(x);
            CHECK(std::abs(a - b) <= 1e-14 * std::max(1.0, std::abs(a)));
            Vec2 v{u(rng), u(rng)};
            v = v / norm(v);
            const double h = 0.05;
            double mag = 0.0;
            for (int i = 0; i <= d + 1; ++i) mag = std::max(mag, std::abs(f.field(x + (i * h) * v)));
            CHECK_MESSAGE(std::abs(forward_difference(f.field, x, v, h, d + 1)) <= 1e-9 * std::max(1.0, mag), f.name);
            if (d > 0) CHECK(std::abs(forward_difference(f.field, x, v, h, d)) > 1e-9);
        }
    }
}

TEST_CASE("singular functions keep a finite numerator near the singular point") {
    for (const NamedFunction& f : builtin_functions()) {
        if (!f.singular) continue;
        for (int k = 0; k < 8; ++k) {
            const double th = 2 * std::numbers::pi * (k + 0.3) / 8;
            const double r = 1e-6;
            const Point2 x = f.singular->xc + Vec2{r * std::cos(th), r * std::sin(th)};
            const double scaled = std::pow(r, f.singular->beta) * f.field(x);
            CHECK_MESSAGE(std::isfinite(scaled), f.name);
            CHECK(std::abs(scaled - f.singular->numerator(x)) <= 1e-12 * std::max(1.0, std::abs(scaled)));
        }
    }
}

TEST_CASE("fS5 is homogeneous of degree -1") {
    const NamedFunction& f = lookup_function("fS5");
    REQUIRE(f.homogeneous_degree);
    CHECK(*f.homogeneous_degree == -1.0);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1.0, 1.0), l(0.1, 10.0);
    for (int k = 0; k < 50; ++k) {
        const Point2 x{u(rng), u(rng)};
        const double lam = l(rng);
        CHECK(std::abs(f.field(lam * x) - f.field(x) / lam) <= 1e-10 * std::abs(f.field(x) / lam));
    }
}

TEST_CASE("rescaled polygons fit the unit square") {
    for (const char* n : {"quad_convex_unit", "hexagon_convex_unit", "quad_nonconvex_unit", "decagon_nonconvex_unit"}) {
        const Region r = lookup_geometry(n).make();
        CHECK(r.bbox_min().x == doctest::Approx(0.0));
        CHECK(r.bbox_min().y == doctest::Approx(0.0));
        CHECK(std::max(r.bbox_max().x, r.bbox_max().y) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(franke_rescaled(lookup_geometry("bezier").make()), std::invalid_argument);
}

TEST_CASE("crack enrichment and shape functions") {
    CHECK(std::abs(crack_enrichment({0, 1}, {0, 0}) - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(crack_enrichment({-1, 1e-300}, {0, 0}) - 1.0) < 1e-15);
    CHECK(std::abs(crack_enrichment({-1, -1e-300}, {0, 0}) + 1.0) < 1e-15);
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const auto n = bilinear_shape(u(rng), u(rng));
        CHECK(std::abs(n[0] + n[1] + n[2] + n[3] - 1.0) < 1e-15);
    }
    const auto corner = bilinear_shape(1, 1);
    CHECK(corner[2] == 1.0);
    CHECK(corner[0] == 0.0);
}

TEST_CASE("inverse bilinear map round trips") {
    const XfemProblem p = xfem_integrands(XfemElement::Omega1, 0.1);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const double xi = u(rng), eta = u(rng);
        const auto n = bilinear_shape(xi, eta);
        Point2 x{};
        for (int i = 0; i < 4; ++i) x += n[i] * p.nodes[i];
        const Vec2 back = inverse_bilinear(p.nodes, x);
        CHECK(std::abs(back.x - xi) < 1e-13);
        CHECK(std::abs(back.y - eta) < 1e-13);
    }
}

TEST_CASE("X-FEM setup") {
    for (XfemElement e : {XfemElement::Omega1, XfemElement::Omega2}) {
        const XfemProblem p = xfem_integrands(e, 1e-2);
        CHECK(p.integrands.size() == 16);
        CHECK(p.numerators.size() == 16);
        CHECK(p.beta == 0.5);
        CHECK(p.tip.x == 1e-2);
        CHECK(p.tip.y == 0.5);
        const std::vector<Point2> quad(p.nodes.begin(), p.nodes.end());
        CHECK(std::abs(signed_area(p.region.curves(), {0, 0}) - oracle::polygon_area(quad)) < 1e-14);
        CHECK_THROWS_AS(p.integrands[0](p.tip), EvaluationError);
    }
    // The crack ray meets the shared edge of Omega2 at (0, 1/2).
    const auto v = vertices(xfem_integrands(XfemElement::Omega2, 0.1).region);
    CHECK(v.size() == 5);
    bool found = false;
    for (Point2 q : v) found = found || norm(q - Point2{0, 0.5}) < 1e-15;
    CHECK(found);
    CHECK_THROWS_AS(xfem_integrands(XfemElement::Omega2, 0.0), std::invalid_argument);
}

TEST_CASE("X-FEM integrands match finite differences of F N_I") {
    const XfemProblem p = xfem_integrands(XfemElement::Omega2, 0.1);
    auto shape = [&](Point2 x, int i) {
        const Vec2 r = inverse_bilinear(p.nodes, x);
        return bilinear_shape(r.x, r.y)[i];
    };
    const double h = 1e-6;
    for (Point2 x : {Point2{0.5, 0.3}, Point2{0.8, 0.7}, Point2{0.3, 0.9}}) {
        for (int I = 0; I < 4; ++I)
            for (int J = 0; J < 4; ++J) {
                auto fn = [&](Point2 y) { return crack_enrichment(y, p.tip) * shape(y, I); };
                const Vec2 g1{(fn(x + Vec2{h, 0}) - fn(x - Vec2{h, 0})) / (2 * h),
                              (fn(x + Vec2{0, h}) - fn(x - Vec2{0, h})) / (2 * h)};
                const Vec2 g2{(shape(x + Vec2{h, 0}, J) - shape(x - Vec2{h, 0}, J)) / (2 * h),
                              (shape(x + Vec2{0, h}, J) - shape(x - Vec2{0, h}, J)) / (2 * h)};
                CHECK(std::abs(p.integrands[4 * I + J](x) - dot(g1, g2)) < 1e-7);
            }
    }
}

TEST_CASE("X-FEM reference integrals are self-consistent") {
    const XfemProblem p = xfem_integrands(XfemElement::Omega2, 0.1);
    const SingularSpec spec{p.tip, 0.5, radial::GaussJacobi{}, TTransform::R1};
    for (std::size_t k = 0; k < 16; ++k) {
        const SplitIntegrand f{p.numerators[k], 0.5};
        const double a = integrate_singular(p.region, f, spec, 48, 48);
        const double b = integrate_singular(p.region, f, spec, 64, 64);
        CHECK_MESSAGE(std::abs(a - b) <= 1e-12 * std::abs(b), "K" << k / 4 + 1 << k % 4 + 1);
    }
}
