#include "sbc/singular.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sbc/quadrature.hpp"

namespace sbc {

int select_alpha(double beta) {
    if (!(beta > 0.0 && beta < 2.0))
        throw std::invalid_argument(fmt::format("select_alpha needs 0 < beta < 2, got {}", beta));
    for (int alpha = 1; alpha <= 64; ++alpha) {
        const double k = alpha * (2.0 - beta);
        const double kr = std::round(k);
        if (kr >= 1.0 && std::abs(k - kr) <= 1e-12 * std::max(1.0, k)) return alpha;
    }
    throw std::invalid_argument(
        fmt::format("beta = {} is not a rational with denominator <= 64; use the GaussJacobi radial strategy", beta));
}

Point2 gsb_map(const CurvedTriangle& tri, double alpha, double xi, double t) {
    return tri.x0 + std::pow(xi, alpha) * (tri.curve.eval_unchecked(t) - tri.x0);
}

double gsb_jacobian(const CurvedTriangle& tri, double alpha, double xi, double t) {
    return alpha * std::pow(xi, 2.0 * alpha - 1.0) * perp_product(tri.curve, t, tri.x0);
}

double radial_exponent(double beta, double alpha) {
    const double eta = alpha * (2.0 - beta) - 1.0;
    if (!(eta > -1.0))
        throw std::invalid_argument(fmt::format(
            "radial exponent alpha(2-beta)-1 = {} <= -1 (beta = {}, alpha = {}): integrand is not weakly singular",
            eta, beta, alpha));
    return eta;
}

double TTransformMap::forward(double tau) const {
    const double a = std::abs(ell);
    switch (which) {
        case TTransform::R1: return std::asinh(tau / a) + std::log(a);
        case TTransform::R2: return std::atan(tau / a);
        case TTransform::R3: return tau / std::sqrt(ell * ell + tau * tau);
        case TTransform::None: break;
    }
    return tau;
}

double TTransformMap::inverse(double tt) const {
    const double a = std::abs(ell);
    switch (which) {
        // Equal to exp(-tt)(exp(2 tt) - ell^2)/2 without the cancellation.
        case TTransform::R1: return a * std::sinh(tt - std::log(a));
        case TTransform::R2: return a * std::tan(tt);
        case TTransform::R3: return a * tt / std::sqrt((1.0 - tt) * (1.0 + tt));
        case TTransform::None: break;
    }
    return tt;
}

double TTransformMap::dtau(double tt) const {
    const double tau = inverse(tt);
    const double q = ell * ell + tau * tau;
    switch (which) {
        case TTransform::R1: return std::sqrt(q);
        case TTransform::R2: return q / std::abs(ell);
        case TTransform::R3: return q * std::sqrt(q) / (ell * ell);
        case TTransform::None: break;
    }
    return 1.0;
}

TTransformMap t_transform_bounds(const PolygonEdgeData& edge, TTransform which) {
    if (which == TTransform::None) throw std::invalid_argument("t_transform_bounds needs R1, R2 or R3");
    if (edge.ell == 0.0)
        throw std::invalid_argument("edge passes through the singular point (ell = 0); skip it instead");
    TTransformMap m;
    m.which = which;
    m.ell = edge.ell;
    m.lo = m.forward(edge.tau1);
    m.hi = m.forward(edge.tau2);
    return m;
}

bool polygon_contains_closed(const Region& r, Point2 p, double tol) {
    int winding = 0;
    for (const Curve& c : r.curves()) {
        const Segment& s = c.as_segment();
        const PolygonEdgeData e = edge_data(s, p);
        if (std::abs(e.ell) <= tol && e.tau1 <= tol && e.tau2 >= -tol) return true;
        const Point2 a = s.from, b = s.to;
        if (a.y <= p.y) {
            if (b.y > p.y && cross(b - a, p - a) > 0.0) ++winding;
        } else if (b.y <= p.y && cross(b - a, p - a) < 0.0) {
            --winding;
        }
    }
    return winding != 0;
}

namespace {

struct RadialPlan {
    double alpha = 1.0;
    double eta = 0.0;     // exponent of xi in the transformed integrand
    bool absorbed = false;  // eta carried by a Gauss-Jacobi weight
};

RadialPlan plan_radial(const SingularSpec& spec) {
    RadialPlan p;
    if (std::holds_alternative<radial::GeneralizedSB>(spec.radial)) {
        p.alpha = std::get<radial::GeneralizedSB>(spec.radial).alpha;
        if (!(p.alpha > 0.0)) throw std::invalid_argument("generalized SB alpha must be positive");
    }
    p.eta = radial_exponent(spec.beta, p.alpha);
    p.absorbed = std::holds_alternative<radial::GaussJacobi>(spec.radial);
    return p;
}

void validate(const Region& r, const SingularSpec& spec) {
    const bool segment_only = r.all_segments();
    if (spec.t_transform != TTransform::None && !segment_only)
        throw std::invalid_argument("t-transforms are only defined for regions bounded by segments");
    const double b = spec.beta;
    if (b > 0.0 && b < 2.0) return;
    if (b >= 2.0 && b <= 3.0) {
        if (spec.t_transform != TTransform::R2 && spec.t_transform != TTransform::R3)
            throw std::invalid_argument(fmt::format("beta = {} needs the R2 or R3 t-transform", b));
        if (polygon_contains_closed(r, spec.xc, kZeroMeasure * r.scale()))
            throw std::invalid_argument(
                fmt::format("beta = {} is only allowed when the singular point lies outside the closed region", b));
        return;
    }
    throw std::invalid_argument(fmt::format("beta = {} outside the supported range (0, 3]", b));
}

}  // namespace

CubatureRule generate_singular_rule(const Region& r, const SingularSpec& spec, int n_xi, int n_t,
                                    SingularDiagnostics* diag, Execution exec) {
    if (n_xi < 1 || n_t < 1)
        throw std::invalid_argument(fmt::format("rule orders must be >= 1 (got n_xi = {}, n_t = {})", n_xi, n_t));
    validate(r, spec);
    const Point2 xc = spec.xc;
    const double beta = spec.beta;
    // beta >= 2 with xc outside: each signed triangle's radial integral over [0, 1] diverges at the apex,
    // but the apex parts cancel ray by ray. Replace int_0^1 by -int_1^Lambda with Lambda = rho / |c - xc|
    // and rho a common outer radius; the signed sum along every ray is unchanged.
    const bool exterior = beta >= 2.0;
    double rho = 0.0;
    if (exterior) {
        if (!std::holds_alternative<radial::None>(spec.radial) && diag)
            diag->warnings.push_back("radial strategy ignored for beta >= 2 (exterior singular point)");
        for (const Curve& c : r.curves()) rho = std::max(rho, norm(c.start() - xc));
    }
    const RadialPlan plan = exterior ? RadialPlan{} : plan_radial(spec);
    const Rule1D& gx = plan.absorbed ? cached_gauss_jacobi_unit(n_xi, plan.eta) : cached_gauss_legendre(n_xi);
    const Rule1D& gt = cached_gauss_legendre(n_t);
    const double scale = r.scale();
    const std::size_t m = r.size();
    const std::size_t block = gx.size() * gt.size();

    // Radial factor per xi node: alpha xi^eta unless the rule absorbs it.
    std::vector<double> xi_pow(gx.size()), xi_w(gx.size());
    for (std::size_t k = 0; k < gx.size(); ++k) {
        xi_pow[k] = std::pow(gx.nodes[k], plan.alpha);
        xi_w[k] = gx.weights[k] * plan.alpha * (plan.absorbed ? 1.0 : std::pow(gx.nodes[k], plan.eta));
    }

    std::vector<std::size_t> offset(m + 1, 0);
    for (std::size_t i = 0; i < m; ++i) {
        const Curve& c = r.curves()[i];
        bool live = false;
        if (c.is_segment()) {
            const PolygonEdgeData e = edge_data(c.as_segment(), xc);
            live = std::abs(e.ell) > kZeroMeasure * scale;
            if (!live && diag && e.tau1 < 0.0 && e.tau2 > 0.0)
                diag->warnings.push_back(fmt::format("singular point lies on edge {}; edge skipped", i));
        } else {
            for (std::size_t k = 0; k < gt.size() && !live; ++k)
                live = std::abs(perp_product(c, gt.nodes[k], xc)) > kZeroMeasure * scale * scale;
        }
        offset[i + 1] = offset[i] + (live ? block : 0);
    }

    CubatureRule rule;
    const std::size_t total = offset[m];
    rule.points.resize(total);
    rule.weights.resize(total);
    rule.curve_index.resize(total);

    for_each_index(m, exec, [&](std::size_t i) {
        if (offset[i + 1] == offset[i]) return;
        const Curve& c = r.curves()[i];
        std::size_t row = offset[i];
        const bool transformed = spec.t_transform != TTransform::None;
        PolygonEdgeData ed;
        TTransformMap tm;
        if (transformed) {
            ed = edge_data(c.as_segment(), xc);
            tm = t_transform_bounds(ed, spec.t_transform);
        }
        for (std::size_t it = 0; it < gt.size(); ++it) {
            Vec2 rel;        // c(t) - xc
            double wt = 0.0;  // t-weight including |c - xc|^-beta and the boundary Jacobian
            if (transformed) {
                const double tt = tm.lo + (tm.hi - tm.lo) * gt.nodes[it];
                const double tau = tm.inverse(tt);
                rel = ed.ell * ed.n + tau * ed.tangent;
                const double q = ed.ell * ed.ell + tau * tau;
                wt = gt.weights[it] * (tm.hi - tm.lo) * ed.ell * std::pow(q, -0.5 * beta) * tm.dtau(tt);
            } else {
                const double t = gt.nodes[it];
                rel = c.eval_unchecked(t) - xc;
                const double pp = dot(rel, perp(c.deriv_unchecked(t)));
                wt = gt.weights[it] * pp * std::pow(dot(rel, rel), -0.5 * beta);
            }
            if (exterior) {
                const double span = rho / norm(rel) - 1.0;
                for (std::size_t ix = 0; ix < gx.size(); ++ix, ++row) {
                    const double xi = 1.0 + span * gx.nodes[ix];
                    rule.points[row] = xc + xi * rel;
                    rule.weights[row] = -span * gx.weights[ix] * std::pow(xi, 1.0 - beta) * wt;
                    rule.curve_index[row] = static_cast<int>(i);
                }
                continue;
            }
            for (std::size_t ix = 0; ix < gx.size(); ++ix, ++row) {
                rule.points[row] = xc + xi_pow[ix] * rel;
                rule.weights[row] = xi_w[ix] * wt;
                rule.curve_index[row] = static_cast<int>(i);
            }
        }
    });
    return rule;
}

double integrate_singular(const Region& r, const SplitIntegrand& f, const SingularSpec& spec, int n_xi, int n_t,
                          SingularDiagnostics* diag, Execution exec) {
    if (f.beta != spec.beta)
        throw std::invalid_argument(
            fmt::format("integrand exponent beta = {} differs from the singular spec beta = {}", f.beta, spec.beta));
    return apply_rule(generate_singular_rule(r, spec, n_xi, n_t, diag, exec), f.g, exec);
}

}  // namespace sbc
