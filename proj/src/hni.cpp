#include "sbc/hni.hpp"

#include <fmt/format.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "sbc/quadrature.hpp"

namespace sbc {

HomogeneousField::HomogeneousField(ScalarField h, double q) : h_(std::move(h)), q_(q) {
    if (!(q > -2.0)) throw std::invalid_argument(fmt::format("homogeneous degree must exceed -2, got {}", q));
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::uniform_real_distribution<double> lam(0.25, 4.0);
    for (int k = 0; k < 16; ++k) {
        Point2 x{coord(rng), coord(rng)};
        if (norm(x) < 1e-3) x = {0.5, 0.25};
        const double l = lam(rng);
        const double lhs = h_(l * x);
        const double rhs = std::pow(l, q_) * h_(x);
        const double tol = 1e-10 * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        if (!(std::abs(lhs - rhs) <= tol))
            throw std::invalid_argument(fmt::format(
                "field is not homogeneous of degree {}: h({}*x) = {} but {}^q h(x) = {} at x = ({}, {})", q_, l,
                lhs, l, rhs, x.x, x.y));
    }
}

double hni_integrate(const Region& r, const HomogeneousField& hf, int n_t) {
    if (n_t < 1) throw std::invalid_argument("n_t must be >= 1");
    const Rule1D& g = cached_gauss_legendre(n_t);
    double sum = 0.0;
    for (const Curve& c : r.curves()) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Point2 p = c.eval_unchecked(g.nodes[k]);
            const double v = hf(p);
            if (!std::isfinite(v)) throw EvaluationError("homogeneous field is not finite on the boundary", p);
            sum += g.weights[k] * v * dot(p, perp(c.deriv_unchecked(g.nodes[k])));
        }
    }
    return sum / (2.0 + hf.degree());
}

double polygon_hni(const Region& r, const HomogeneousField& hf, int n_t) {
    if (n_t < 1) throw std::invalid_argument("n_t must be >= 1");
    if (!r.all_segments()) throw std::invalid_argument("polygon_hni needs a region bounded by segments only");
    const Rule1D& g = cached_gauss_legendre(n_t);
    double sum = 0.0;
    for (const Curve& c : r.curves()) {
        const PolygonEdgeData e = edge_data(c.as_segment(), Point2{0.0, 0.0});
        if (e.ell == 0.0) continue;
        double line = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const Point2 p = c.eval_unchecked(g.nodes[k]);
            const double v = hf(p);
            if (!std::isfinite(v)) throw EvaluationError("homogeneous field is not finite on the boundary", p);
            line += g.weights[k] * v;
        }
        sum += e.ell * line * e.delta_tau;
    }
    return sum / (2.0 + hf.degree());
}

}  // namespace sbc
