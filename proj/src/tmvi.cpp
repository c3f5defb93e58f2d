#include "sbc/tmvi.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sbc/quadrature.hpp"

namespace sbc {

BoundaryLoop::BoundaryLoop(std::vector<Curve> curves, RegionOptions opts) : region_(std::move(curves), opts) {
    init();
}

BoundaryLoop::BoundaryLoop(Region r) : region_(std::move(r)) { init(); }

void BoundaryLoop::init() {
    constexpr int kSamples = 64;
    Point2 sum{};
    int count = 0;
    for (const Curve& c : region_.curves())
        for (int k = 0; k < kSamples; ++k, ++count) sum += c.eval_unchecked((k + 0.5) / kSamples);
    centroid_ = sum / static_cast<double>(count);
    const double s = region_.scale();
    for (const Curve& c : region_.curves())
        for (int k = 0; k <= kSamples; ++k)
            if (perp_product(c, static_cast<double>(k) / kSamples, centroid_) < -1e-12 * s * s) convex_ = false;
}

BoundaryLoop egg_domain(EggParams p) {
    if (!(p.b - std::abs(p.r) > 0.0)) throw std::invalid_argument("egg parameters need b + r cos(theta) > 0");
    const std::string x = fmt::format("{}*cos(2*pi*t)", p.r);
    const std::string y = fmt::format("{}*{}*sin(2*pi*t)/({} + {}*cos(2*pi*t))", p.a, p.r, p.b, p.r);
    return BoundaryLoop(std::vector<Curve>{Curve::parametric(x, y)});
}

namespace {

constexpr int kPanelPoints = 16;
constexpr double kPanelRatio = 0.5;  // panel length / distance to x
constexpr int kMaxDepth = 60;

void add_panel(const Curve& c, double a, double b, Point2 x, const Rule1D& g, BoundaryNodes& out) {
    const double h = b - a;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double t = a + h * g.nodes[k];
        const Point2 p = c.eval_unchecked(t);
        const Vec2 d = c.deriv_unchecked(t);
        const Vec2 rel = p - x;
        const double dist = norm(rel);
        out.c.push_back(p);
        out.perp_w.push_back(g.weights[k] * h * dot(rel, perp(d)));
        out.dist.push_back(dist);
        out.min_dist = std::min(out.min_dist, dist);
    }
}

void refine(const Curve& c, double a, double b, Point2 x, const Rule1D& g, int depth, BoundaryNodes& out) {
    const double m = 0.5 * (a + b);
    const Point2 pa = c.eval_unchecked(a), pm = c.eval_unchecked(m), pb = c.eval_unchecked(b);
    const double len = norm(pm - pa) + norm(pb - pm);
    const double d = std::min({norm(pa - x), norm(pm - x), norm(pb - x)});
    if (depth < kMaxDepth && len > kPanelRatio * d) {
        refine(c, a, m, x, g, depth + 1, out);
        refine(c, m, b, x, g, depth + 1, out);
        return;
    }
    add_panel(c, a, b, x, g, out);
}

void require_interior(const BoundaryLoop& loop, const BoundaryNodes& nodes, Point2 x) {
    const double s = loop.scale();
    bool inside = nodes.min_dist > 1e-9 * s;
    for (double pw : nodes.perp_w)
        if (pw < 0.0) inside = false;
    if (!inside)
        throw std::invalid_argument(fmt::format(
            "point ({}, {}) is not strictly inside the boundary loop (needs distance > 1e-9 * scale)", x.x, x.y));
}

}  // namespace

BoundaryNodes boundary_nodes(const BoundaryLoop& loop, Point2 x, int n_t) {
    if (n_t < 1) throw std::invalid_argument("n_t must be >= 1");
    const int per_panel = std::min(n_t, kPanelPoints);
    const int panels = std::max(1, n_t / per_panel);
    const Rule1D& g = cached_gauss_legendre(per_panel);
    BoundaryNodes out;
    out.min_dist = std::numeric_limits<double>::infinity();
    for (const Curve& c : loop.curves())
        for (int k = 0; k < panels; ++k)
            refine(c, static_cast<double>(k) / panels, static_cast<double>(k + 1) / panels, x, g, 0, out);
    return out;
}

double tmvi_eval(const BoundaryLoop& loop, const ScalarField& g, Point2 x, int n_t) {
    const BoundaryNodes nodes = boundary_nodes(loop, x, n_t);
    require_interior(loop, nodes, x);
    // Scale by the nearest distance so the cubes stay in range.
    const double m = nodes.min_dist;
    double num = 0.0, w = 0.0;
    for (std::size_t k = 0; k < nodes.c.size(); ++k) {
        const double r = nodes.dist[k] / m;
        const double kern = nodes.perp_w[k] / (r * r * r);
        num += g(nodes.c[k]) * kern;
        w += kern;
    }
    const double u = num / w;
    if (!std::isfinite(u)) throw EvaluationError("interpolant is not finite", x);
    return u;
}

double lp_distance(const BoundaryLoop& loop, Point2 x, double p, int n_t) {
    if (!(p >= 1.0)) throw std::invalid_argument(fmt::format("Lp distance needs p >= 1, got {}", p));
    const BoundaryNodes nodes = boundary_nodes(loop, x, n_t);
    require_interior(loop, nodes, x);
    // W_p = m^-(2+p) S with S = sum perp_w (m/|c-x|)^(2+p); psi = m^((2+p)/p) S^(-1/p).
    const double m = nodes.min_dist;
    double s = 0.0;
    for (std::size_t k = 0; k < nodes.c.size(); ++k) s += nodes.perp_w[k] * std::pow(m / nodes.dist[k], 2.0 + p);
    const double psi = std::pow(m, (2.0 + p) / p) * std::pow(s, -1.0 / p);
    if (!std::isfinite(psi)) throw EvaluationError("Lp distance is not finite", x);
    return psi;
}

namespace {

// Closest point on one curve by Newton on f(t) = (c(t) - x) . c'(t).
double curve_distance(const Curve& c, Point2 x) {
    constexpr int kSeeds = 16;
    constexpr double kH = 1e-6;
    double best = std::min(norm(c.start() - x), norm(c.end() - x));
    for (int s = 0; s < kSeeds; ++s) {
        double t = (s + 0.5) / kSeeds;
        for (int it = 0; it < 50; ++it) {
            const Point2 p = c.eval_unchecked(t);
            const Vec2 d = c.deriv_unchecked(t);
            const double f = dot(p - x, d);
            if (std::abs(f) < 1e-13) break;
            const double ta = std::max(0.0, t - kH), tb = std::min(1.0, t + kH);
            const Vec2 dd = (c.deriv_unchecked(tb) - c.deriv_unchecked(ta)) / (tb - ta);
            const double fp = dot(d, d) + dot(p - x, dd);
            if (!(fp > 0.0)) break;  // not heading to a minimum
            const double tn = std::clamp(t - f / fp, 0.0, 1.0);
            const bool done = std::abs(tn - t) < 1e-15;
            t = tn;
            if (done) break;
        }
        best = std::min(best, norm(c.eval_unchecked(t) - x));
    }
    return best;
}

}  // namespace

double exact_distance(const BoundaryLoop& loop, Point2 x) {
    double best = std::numeric_limits<double>::infinity();
    for (const Curve& c : loop.curves()) best = std::min(best, curve_distance(c, x));
    return best;
}

bool strictly_inside(const BoundaryLoop& loop, Point2 x, double standoff) {
    const Rule1D& g = cached_gauss_legendre(kPanelPoints);
    for (const Curve& c : loop.curves()) {
        constexpr int kPanels = 16;
        for (int k = 0; k < kPanels; ++k)
            for (double node : g.nodes)
                if (perp_product(c, (k + node) / kPanels, x) <= 0.0) return false;
    }
    return exact_distance(loop, x) > standoff;
}

double relative_l2_error(const BoundaryLoop& loop, const ScalarField& u, const ScalarField& g, int n_xi, int n_t,
                         Execution exec) {
    const CubatureRule rule = generate_rule(loop.region(), center::Custom{loop.centroid()}, n_xi, n_t,
                                            RuleOptions{false, exec});
    const std::size_t n = rule.size();
    std::vector<double> diff2(n), g2(n);
    for_each_index(n, exec, [&](std::size_t k) {
        const double uv = u(rule.points[k]);
        const double gv = g(rule.points[k]);
        if (!std::isfinite(uv) || !std::isfinite(gv))
            throw EvaluationError("field is not finite at a rule point", rule.points[k]);
        diff2[k] = rule.weights[k] * (uv - gv) * (uv - gv);
        g2[k] = rule.weights[k] * gv * gv;
    });
    return std::sqrt(compensated_sum(diff2) / compensated_sum(g2));
}

}  // namespace sbc
