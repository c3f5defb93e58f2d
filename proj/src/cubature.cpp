#include "sbc/cubature.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

#include "sbc/quadrature.hpp"

namespace sbc {

PolygonEdgeData edge_data(const Segment& s, Point2 x0) {
    const Vec2 d = s.to - s.from;
    const double len = norm(d);
    PolygonEdgeData e;
    e.tangent = d / len;
    e.n = perp(e.tangent);
    e.ell = dot(s.from - x0, e.n);
    // Signed projections; the foot of the perpendicular may lie outside the edge.
    e.tau1 = dot(s.from - x0 - e.ell * e.n, e.tangent);
    e.tau2 = dot(s.to - x0 - e.ell * e.n, e.tangent);
    e.delta_tau = len;
    return e;
}

Point2 sb_map(const CurvedTriangle& tri, double xi, double t) {
    return tri.x0 + xi * (tri.curve.eval_unchecked(t) - tri.x0);
}

double sb_jacobian(const CurvedTriangle& tri, double xi, double t) {
    return xi * perp_product(tri.curve, t, tri.x0);
}

namespace {

void check_orders(int n_xi, int n_t) {
    if (n_xi < 1 || n_t < 1)
        throw std::invalid_argument(fmt::format("rule orders must be >= 1 (got n_xi = {}, n_t = {})", n_xi, n_t));
}

}  // namespace

CubatureRule generate_rule(const Region& r, const CenterPolicy& policy, int n_xi, int n_t, RuleOptions opts) {
    check_orders(n_xi, n_t);
    const Point2 x0 = resolve_center(r, policy);
    const Rule1D& gx = cached_gauss_legendre(n_xi);
    const Rule1D& gt = cached_gauss_legendre(n_t);
    const std::size_t m = r.size();
    const double scale = r.scale();
    const std::size_t block = static_cast<std::size_t>(n_xi) * static_cast<std::size_t>(n_t);

    // Pass 1: which triangles carry measure. Cheap, serial.
    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const Curve& c = r.curves()[i];
        bool live = false;
        if (c.is_segment()) {
            live = std::abs(edge_data(c.as_segment(), x0).ell) > kZeroMeasure * scale;
        } else {
            for (std::size_t k = 0; k < gt.size() && !live; ++k)
                live = std::abs(perp_product(c, gt.nodes[k], x0)) > kZeroMeasure * scale * scale;
        }
        offset[i + 1] = offset[i] + (live ? block : 0);
    }

    CubatureRule rule;
    const std::size_t total = offset[m];
    rule.points.resize(total);
    rule.weights.resize(total);
    rule.curve_index.resize(total);
    if (opts.keep_parametric) {
        rule.xi.resize(total);
        rule.t.resize(total);
    }

    // Pass 2: fill each triangle's block independently.
    for_each_index(m, opts.exec, [&](std::size_t i) {
        if (offset[i + 1] == offset[i]) return;
        const Curve& c = r.curves()[i];
        std::size_t row = offset[i];
        const bool fast = c.is_segment();
        PolygonEdgeData ed;
        if (fast) ed = edge_data(c.as_segment(), x0);
        for (std::size_t it = 0; it < gt.size(); ++it) {
            const double t = gt.nodes[it];
            const Point2 ct = c.eval_unchecked(t);
            const double jt = fast ? ed.ell * ed.delta_tau : perp_product(c, t, x0);
            for (std::size_t ix = 0; ix < gx.size(); ++ix, ++row) {
                const double xi = gx.nodes[ix];
                rule.points[row] = x0 + xi * (ct - x0);
                rule.weights[row] = gx.weights[ix] * gt.weights[it] * xi * jt;
                rule.curve_index[row] = static_cast<int>(i);
                if (opts.keep_parametric) {
                    rule.xi[row] = xi;
                    rule.t[row] = t;
                }
            }
        }
    });
    return rule;
}

double apply_rule(const CubatureRule& rule, const ScalarField& f, Execution exec) {
    const std::size_t n = rule.size();
    std::vector<double> terms(n);
    std::vector<double> values(n);
    for_each_index(n, exec, [&](std::size_t k) {
        values[k] = f(rule.points[k]);
        terms[k] = rule.weights[k] * values[k];
    });
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(values[k]))
            throw EvaluationError(fmt::format("integrand is not finite ({}) at ({}, {})", values[k],
                                              rule.points[k].x, rule.points[k].y),
                                  rule.points[k]);
    }
    return compensated_sum(terms);
}

double integrate(const Region& r, const CenterPolicy& policy, const ScalarField& f, int n_xi, int n_t,
                 Execution exec) {
    return apply_rule(generate_rule(r, policy, n_xi, n_t, RuleOptions{false, exec}), f, exec);
}

std::pair<int, int> min_orders_polygon(int p) {
    if (p < 0) throw std::invalid_argument("polynomial degree must be >= 0");
    return {(p + 3) / 2, (p + 2) / 2};
}

std::pair<int, int> min_orders_curved(int m, int p) {
    if (m < 0 || p < 1) throw std::invalid_argument("need f degree >= 0 and curve degree >= 1");
    return {(m + 3) / 2, ((m + 2) * p + 1) / 2};
}

}  // namespace sbc
