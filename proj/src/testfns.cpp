#include "sbc/testfns.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sbc/tmvi.hpp"

namespace sbc {

double Polynomial::operator()(Point2 p) const {
    double s = 0.0;
    for (const Term& t : terms_) s += t.coef * std::pow(p.x, t.i) * std::pow(p.y, t.j);
    return s;
}

int Polynomial::degree() const {
    int d = 0;
    for (const Term& t : terms_)
        if (t.coef != 0.0) d = std::max(d, t.i + t.j);
    return d;
}

Polynomial Polynomial::homogeneous_part(int k) const {
    std::vector<Term> out;
    for (const Term& t : terms_)
        if (t.i + t.j == k) out.push_back(t);
    return Polynomial(std::move(out));
}

Region polygon(const std::vector<Point2>& v) {
    std::vector<Curve> curves;
    curves.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) curves.push_back(Curve::segment(v[i], v[(i + 1) % v.size()]));
    return Region(std::move(curves));
}

Region franke_rescaled(const Region& r) {
    if (!r.all_segments()) throw std::invalid_argument("Franke rescaling is defined for polygons only");
    const Point2 lo = r.bbox_min(), hi = r.bbox_max();
    const double s = 1.0 / std::max(hi.x - lo.x, hi.y - lo.y);
    std::vector<Curve> curves;
    for (const Curve& c : r.curves())
        curves.push_back(Curve::segment(s * (c.as_segment().from - lo), s * (c.as_segment().to - lo)));
    return Region(std::move(curves));
}

namespace {

const double kSqrt3 = std::sqrt(3.0);

double franke(Point2 p) {
    const double x = p.x, y = p.y;
    return 0.75 * std::exp(-((9 * x - 2) * (9 * x - 2) + (9 * y - 2) * (9 * y - 2)) / 4.0) +
           0.75 * std::exp(-(9 * x + 1) * (9 * x + 1) / 49.0 - (9 * y + 1) / 10.0) +
           0.5 * std::exp(-((9 * x - 7) * (9 * x - 7) + (9 * y - 3) * (9 * y - 3)) / 4.0) +
           0.2 * std::exp(-(9 * x - 4) * (9 * x - 4) - (9 * y - 7) * (9 * y - 7));
}

double bump(Point2 p) {
    const double a = (p.x - 0.25) / 0.4, b = (p.y - 0.2) / 0.7;
    const double q = a * a + b * b;
    const double c1 = std::cos(5 * p.x), c2 = std::cos(5 * p.y);
    return std::exp(-q * q) * c1 * c1 * c2 * c2;
}

double singular_cubic(Point2 p) {
    const double x = p.x, y = p.y;
    return 4 - 2 * x + y - x * x + 2 * x * y - 3 * y * y + 3 * x * x * x - 5 * x * x * y + 5 * x * y * y -
           4 * y * y * y;
}

// f_S5 times r: degree-0 homogeneous.
double elastic_numerator(Point2 p) {
    const double x = p.x, y = p.y;
    const double r = std::hypot(x, y);
    return (2 * x * x + 2 * y * (y + r) + x * (y + 2 * r)) / (r * r);
}

double radius_pow(Point2 p, double beta) { return std::pow(p.x * p.x + p.y * p.y, 0.5 * beta); }

using T = Polynomial::Term;

Polynomial table_poly(int p) {
    switch (p) {
        case 0: return Polynomial({{1, 0, 0}});
        case 1: return Polynomial({{1, 1, 0}, {-2, 0, 1}, {1, 0, 0}});
        case 2: return Polynomial({{3, 2, 0}, {4, 1, 1}, {-2, 0, 2}, {-1, 1, 0}, {2, 0, 1}, {-3, 0, 0}});
        case 3:
            return Polynomial({{4, 3, 0}, {-2, 2, 1}, {-3, 1, 2}, {1, 0, 3}, {8, 2, 0}, {-4, 1, 1}, {5, 0, 2},
                               {-6, 1, 0}, {-4, 0, 1}, {7, 0, 0}});
        case 4:
            return Polynomial({{-3, 4, 0}, {-5, 3, 1}, {2, 2, 2}, {-9, 1, 3}, {1, 0, 4}, {3, 3, 0}, {-2, 2, 1},
                               {-1, 1, 2}, {5, 0, 3}, {4, 2, 0}, {-7, 1, 1}, {-6, 0, 2}, {-4, 1, 0}, {6, 0, 1},
                               {-8, 0, 0}});
        default:
            return Polynomial({{10, 5, 0}, {-5, 4, 1}, {-7, 3, 2}, {6, 2, 3}, {3, 1, 4}, {1, 0, 5}, {-1, 4, 0},
                               {2, 3, 1}, {11, 2, 2}, {-8, 1, 3}, {-2, 0, 4}, {-3, 3, 0}, {9, 2, 1}, {8, 1, 2},
                               {-10, 0, 3}, {-9, 2, 0}, {-6, 1, 1}, {7, 0, 2}, {5, 1, 0}, {-4, 0, 1}, {4, 0, 0}});
    }
}

NamedFunction poly_fn(std::string name, std::string desc, Polynomial p) {
    NamedFunction f;
    f.name = std::move(name);
    f.description = std::move(desc);
    f.field = [p](Point2 x) { return p(x); };
    f.polynomial = std::move(p);
    return f;
}

NamedFunction plain_fn(std::string name, std::string desc, ScalarField field) {
    NamedFunction f;
    f.name = std::move(name);
    f.description = std::move(desc);
    f.field = std::move(field);
    return f;
}

NamedFunction singular_fn(std::string name, std::string desc, double beta, ScalarField numerator) {
    NamedFunction f;
    f.name = std::move(name);
    f.description = std::move(desc);
    f.field = [numerator, beta](Point2 x) { return numerator(x) / radius_pow(x, beta); };
    f.singular = SingularInfo{{0.0, 0.0}, beta, std::move(numerator)};
    return f;
}

std::vector<NamedFunction> make_functions() {
    std::vector<NamedFunction> fs;
    fs.push_back(plain_fn("fF1", "Franke function", franke));
    fs.push_back(plain_fn("fF2", "(tanh(9y - 9x) + 1) / 9",
                          [](Point2 p) { return (std::tanh(9 * p.y - 9 * p.x) + 1.0) / 9.0; }));
    fs.push_back(plain_fn("fF3", "(5/4 + cos(27y/5)) / (6 (1 + (3x - 1)^2))", [](Point2 p) {
        return (1.25 + std::cos(5.4 * p.y)) / (6.0 * (1.0 + (3 * p.x - 1) * (3 * p.x - 1)));
    }));
    {
        NamedFunction c1 = poly_fn("fC1", "constant 1", table_poly(0));
        c1.homogeneous_degree = 0.0;
        fs.push_back(std::move(c1));
    }
    fs.push_back(poly_fn("fC2", "degree-5 polynomial", table_poly(5)));
    fs.push_back(plain_fn("fC3", "Franke function", franke));
    fs.push_back(plain_fn("fC4", "exp(-[((x-0.4)/0.3)^2 + ((y-0.5)/0.4)^2]^2) cos^2(3x) cos^2(8y)", [](Point2 p) {
        const double a = (p.x - 0.4) / 0.3, b = (p.y - 0.5) / 0.4;
        const double q = a * a + b * b;
        const double c1 = std::cos(3 * p.x), c2 = std::cos(8 * p.y);
        return std::exp(-q * q) * c1 * c1 * c2 * c2;
    }));
    fs.push_back(singular_fn("fS1", "cubic / r^(1/2)", 0.5, singular_cubic));
    fs.push_back(singular_fn("fS2", "bump / r^(1/2)", 0.5, bump));
    fs.push_back(singular_fn("fS3", "cubic / r^(9/5)", 1.8, singular_cubic));
    fs.push_back(singular_fn("fS4", "bump / r^(9/5)", 1.8, bump));
    {
        NamedFunction s5 = singular_fn("fS5", "elasticity-kernel terms / r^3 (homogeneous of degree -1)", 1.0,
                                       elastic_numerator);
        s5.field = [](Point2 p) {
            const double x = p.x, y = p.y;
            const double r = std::hypot(x, y);
            return (2 * x * x + 2 * y * (y + r) + x * (y + 2 * r)) / (r * r * r);
        };
        s5.homogeneous_degree = -1.0;
        fs.push_back(std::move(s5));
    }
    fs.push_back(singular_fn("fS6", "bump / r", 1.0, bump));
    for (int p = 0; p <= 5; ++p) fs.push_back(poly_fn(fmt::format("p{}", p), fmt::format("degree-{} table polynomial", p), table_poly(p)));
    fs.push_back(poly_fn("g1", "1 - 2x + 3y", Polynomial({{1, 0, 0}, {-2, 1, 0}, {3, 0, 1}})));
    fs.push_back(plain_fn("g2", "sin(x) sin(y)", [](Point2 p) { return std::sin(p.x) * std::sin(p.y); }));
    return fs;
}

Region bezier_region() {
    auto P = [](double x, double y) { return Point2{x / 26.0, y / 26.0}; };
    return Region({Curve::bezier({P(0, 3), P(7, 9), P(15, 0), P(20, 3)}),
                   Curve::bezier({P(20, 3), P(23, 9), P(15, 17), P(20, 23)}),
                   Curve::bezier({P(20, 23), P(13, 25), P(5, 26), P(0, 23)}),
                   Curve::bezier({P(0, 23), P(7, 17), P(5, 9), P(0, 3)})});
}

Region deltoid() {
    // The tabulated pieces run clockwise; walk them backwards with t -> 1 - t.
    std::vector<Curve> cs;
    for (int i = 2; i >= 0; --i) {
        const std::string s = fmt::format("(1 - t + {})", i);
        cs.push_back(Curve::parametric(fmt::format("(1 + 2*cos(2*pi/3*{}))^2/12", s),
                                       fmt::format("(1 + 2*sin(2*pi/3*{}) - 4*sin(4*pi/3*{}))/6", s, s)));
    }
    return Region(std::move(cs));
}

// Unit circle from four rational quadratic quarter arcs.
Region rational_circle() {
    const double w = std::sqrt(0.5);
    const std::array<Point2, 4> corner{Point2{1, 1}, Point2{-1, 1}, Point2{-1, -1}, Point2{1, -1}};
    const std::array<Point2, 5> axis{Point2{1, 0}, Point2{0, 1}, Point2{-1, 0}, Point2{0, -1}, Point2{1, 0}};
    std::vector<Curve> cs;
    for (int k = 0; k < 4; ++k) cs.push_back(Curve::rational_bezier({axis[k], corner[k], axis[k + 1]}, {1.0, w, 1.0}));
    return Region(std::move(cs));
}

Region curved_triangle_t4() {
    const Point2 a{1, 0}, b{0.5, kSqrt3 / 2};
    return Region({Curve::segment({0, 0}, a),
                   Curve::bezier({a, {7.0 / 6.0, kSqrt3 / 6.0}, {1.0 / 3.0, kSqrt3 / 3.0}, b}),
                   Curve::segment(b, {0, 0})});
}

std::vector<Point2> quad_convex() { return {{0.1, 0.0}, {1.0, 0.2}, {0.8, 0.9}, {-0.1, 0.7}}; }
std::vector<Point2> hexagon_convex() {
    return {{0.0, 0.0}, {0.9, -0.1}, {1.4, 0.5}, {1.1, 1.2}, {0.3, 1.3}, {-0.3, 0.6}};
}
std::vector<Point2> quad_nonconvex() { return {{0.0, 0.0}, {1.2, 0.3}, {0.4, 0.4}, {0.1, 1.1}}; }
std::vector<Point2> decagon_nonconvex() {
    const std::array<double, 10> radius{1.0, 0.45, 0.9, 0.5, 1.1, 0.4, 0.95, 0.55, 1.05, 0.5};
    std::vector<Point2> v;
    for (int k = 0; k < 10; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 10.0;
        v.push_back({0.2 + radius[k] * std::cos(th), 0.1 + radius[k] * std::sin(th)});
    }
    return v;
}

NamedGeometry geom(std::string name, std::string desc, std::function<Region()> make) {
    return NamedGeometry{std::move(name), std::move(desc), std::move(make)};
}

std::vector<NamedGeometry> make_geometries() {
    std::vector<NamedGeometry> gs;
    gs.push_back(geom("bezier", "region bounded by four cubic Bezier curves", bezier_region));
    gs.push_back(geom("deltoid", "deltoid from three trigonometric curves", deltoid));
    gs.push_back(geom("circle", "unit circle from four rational quadratic Bezier arcs", rational_circle));
    gs.push_back(geom("egg", "egg-shaped loop (a=4, b=5, r=1)", [] { return egg_domain().region(); }));
    gs.push_back(geom("T1", "triangle with a very high base-to-height ratio", [] {
        return polygon({{0, 0}, {103.0 / 400, -99 * kSqrt3 / 400}, {-97.0 / 400, 101 * kSqrt3 / 400}});
    }));
    gs.push_back(geom("T2", "triangle with a high base-to-height ratio", [] {
        return polygon({{0, 0}, {13.0 / 40, -9 * kSqrt3 / 40}, {-7.0 / 40, 11 * kSqrt3 / 40}});
    }));
    gs.push_back(geom("T3", "equilateral triangle", [] { return polygon({{0, 0}, {1, 0}, {0.5, kSqrt3 / 2}}); }));
    gs.push_back(geom("T4", "curved triangle with one cubic Bezier side", curved_triangle_t4));
    gs.push_back(geom("unit_square", "[0,1]^2", [] { return polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }));
    gs.push_back(geom("square_centered", "[-1/2,1/2]^2",
                      [] { return polygon({{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}); }));
    const std::vector<std::pair<std::string, std::vector<Point2>>> polys{
        {"quad_convex", quad_convex()},
        {"hexagon_convex", hexagon_convex()},
        {"quad_nonconvex", quad_nonconvex()},
        {"decagon_nonconvex", decagon_nonconvex()}};
    for (const auto& [name, verts] : polys) {
        gs.push_back(geom(name, "test polygon", [verts] { return polygon(verts); }));
        gs.push_back(geom(name + "_unit", "test polygon rescaled into the unit square",
                          [verts] { return franke_rescaled(polygon(verts)); }));
    }
    return gs;
}

template <typename Item>
std::string names_of(const std::vector<Item>& items) {
    std::string s;
    for (const Item& it : items) {
        if (!s.empty()) s += ", ";
        s += it.name;
    }
    return s;
}

}  // namespace

const std::vector<NamedFunction>& builtin_functions() {
    static const std::vector<NamedFunction> fs = make_functions();
    return fs;
}

const std::vector<NamedGeometry>& builtin_geometries() {
    static const std::vector<NamedGeometry> gs = make_geometries();
    return gs;
}

const NamedFunction& lookup_function(const std::string& name) {
    for (const NamedFunction& f : builtin_functions())
        if (f.name == name) return f;
    throw NotFoundError(fmt::format("unknown function '{}'; available: {}", name, names_of(builtin_functions())));
}

const NamedGeometry& lookup_geometry(const std::string& name) {
    for (const NamedGeometry& g : builtin_geometries())
        if (g.name == name) return g;
    throw NotFoundError(fmt::format("unknown geometry '{}'; available: {}", name, names_of(builtin_geometries())));
}

std::variant<const NamedFunction*, const NamedGeometry*> lookup(const std::string& name) {
    for (const NamedFunction& f : builtin_functions())
        if (f.name == name) return &f;
    for (const NamedGeometry& g : builtin_geometries())
        if (g.name == name) return &g;
    throw NotFoundError(fmt::format("unknown name '{}'; functions: {}; geometries: {}", name,
                                    names_of(builtin_functions()), names_of(builtin_geometries())));
}

double crack_enrichment(Point2 x, Point2 tip) {
    const Vec2 d = x - tip;
    return std::sqrt(norm(d)) * std::sin(0.5 * std::atan2(d.y, d.x));
}

std::array<double, 4> bilinear_shape(double xi, double eta) {
    return {0.25 * (1 - xi) * (1 - eta), 0.25 * (1 + xi) * (1 - eta), 0.25 * (1 + xi) * (1 + eta),
            0.25 * (1 - xi) * (1 + eta)};
}

namespace {

// d N_I / d(xi, eta).
std::array<Vec2, 4> bilinear_grad(double xi, double eta) {
    return {Vec2{-0.25 * (1 - eta), -0.25 * (1 - xi)}, Vec2{0.25 * (1 - eta), -0.25 * (1 + xi)},
            Vec2{0.25 * (1 + eta), 0.25 * (1 + xi)}, Vec2{-0.25 * (1 + eta), 0.25 * (1 - xi)}};
}

struct Jacobian {
    Vec2 dxi;   // d x / d xi
    Vec2 deta;  // d x / d eta
};

Jacobian bilinear_jacobian(const std::array<Point2, 4>& nodes, double xi, double eta) {
    const auto g = bilinear_grad(xi, eta);
    Jacobian j{};
    for (int i = 0; i < 4; ++i) {
        j.dxi += g[i].x * nodes[i];
        j.deta += g[i].y * nodes[i];
    }
    return j;
}

}  // namespace

Vec2 inverse_bilinear(const std::array<Point2, 4>& nodes, Point2 x) {
    double xi = 0.0, eta = 0.0;
    for (int it = 0; it < 60; ++it) {
        const auto n = bilinear_shape(xi, eta);
        Point2 p{};
        for (int i = 0; i < 4; ++i) p += n[i] * nodes[i];
        const Vec2 r = p - x;
        const Jacobian j = bilinear_jacobian(nodes, xi, eta);
        const double det = cross(j.dxi, j.deta);
        const double dxi = (r.x * j.deta.y - r.y * j.deta.x) / det;
        const double deta = (j.dxi.x * r.y - j.dxi.y * r.x) / det;
        xi -= dxi;
        eta -= deta;
        if (std::abs(dxi) + std::abs(deta) < 1e-15) break;
    }
    return {xi, eta};
}

XfemProblem xfem_integrands(XfemElement element, double dx) {
    if (!(dx > 0.0)) throw std::invalid_argument("crack-tip offset must be positive");
    XfemProblem prob{
        element == XfemElement::Omega1
            ? std::array<Point2, 4>{Point2{-1.1, -0.1}, Point2{0, 0}, Point2{0, 1}, Point2{-0.9, 0.9}}
            : std::array<Point2, 4>{Point2{0, 0}, Point2{0.9, 0.1}, Point2{1.1, 0.9}, Point2{0, 1}},
        Point2{dx, 0.5}, polygon({{0, 0}, {1, 0}, {0, 1}}), {}, {}, 0.5};

    // Insert vertices where the ray {y = tip.y, x < tip.x} crosses an edge.
    std::vector<Point2> verts;
    for (int i = 0; i < 4; ++i) {
        const Point2 a = prob.nodes[i], b = prob.nodes[(i + 1) % 4];
        verts.push_back(a);
        const double fa = a.y - prob.tip.y, fb = b.y - prob.tip.y;
        if (fa * fb < 0.0) {
            const double s = fa / (fa - fb);
            const Point2 q = a + s * (b - a);
            if (q.x < prob.tip.x) verts.push_back({q.x, prob.tip.y});
        }
    }
    prob.region = polygon(verts);

    const auto nodes = prob.nodes;
    const Point2 tip = prob.tip;
    // Physical gradients of N via the inverse Jacobian transpose.
    auto shape_data = [nodes](Point2 x) {
        const Vec2 ref = inverse_bilinear(nodes, x);
        const auto n = bilinear_shape(ref.x, ref.y);
        const auto g = bilinear_grad(ref.x, ref.y);
        const Jacobian j = bilinear_jacobian(nodes, ref.x, ref.y);
        const double det = cross(j.dxi, j.deta);
        std::array<Vec2, 4> grad{};
        for (int i = 0; i < 4; ++i)
            grad[i] = {(g[i].x * j.deta.y - g[i].y * j.dxi.y) / det, (-g[i].x * j.deta.x + g[i].y * j.dxi.x) / det};
        return std::pair{n, grad};
    };

    for (int I = 0; I < 4; ++I) {
        for (int J = 0; J < 4; ++J) {
            // sqrt(r) * [N_I grad F + F grad N_I] . grad N_J, with grad F = (-sin(th/2), cos(th/2)) / (2 sqrt r).
            auto numerator = [=](Point2 x) {
                const Vec2 d = x - tip;
                const double r = norm(d);
                if (r == 0.0) throw EvaluationError("X-FEM integrand evaluated at the crack tip", x);
                const double half = 0.5 * std::atan2(d.y, d.x);
                const auto [n, grad] = shape_data(x);
                const Vec2 u{-std::sin(half), std::cos(half)};
                return 0.5 * n[I] * dot(u, grad[J]) + r * std::sin(half) * dot(grad[I], grad[J]);
            };
            prob.numerators.push_back(numerator);
            prob.integrands.push_back([=](Point2 x) { return numerator(x) / std::sqrt(norm(x - tip)); });
        }
    }
    return prob;
}

}  // namespace sbc
