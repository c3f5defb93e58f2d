#pragma once
// Reference computations that share no code path with the library under test.

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/binomial.hpp>

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "sbc/vec2.hpp"

namespace oracle {

using sbc::Point2;

/// Golub-Welsch for weight xi^eta on [0,1]: eigen-decomposition of the Jacobi matrix
/// of (1+x)^eta on [-1,1], then the affine map.
inline std::pair<std::vector<double>, std::vector<double>> golub_welsch(int n, double eta) {
    // long double: the eigenvector route loses ~1e-13 on small weights in double.
    using L = long double;
    using Mat = Eigen::Matrix<L, Eigen::Dynamic, Eigen::Dynamic>;
    const L a = 0.0L, b = eta, ab = a + b;
    Mat J = Mat::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        const L s = 2.0L * k + ab;
        J(k, k) = (k == 0) ? (b - a) / (ab + 2.0L) : (b * b - a * a) / (s * (s + 2.0L));
        if (k + 1 < n) {
            const L m = k + 1.0L, sm = 2.0L * m + ab;
            const L beta = 4.0L * m * (m + a) * (m + b) * (m + ab) / (sm * sm * (sm + 1.0L) * (sm - 1.0L));
            J(k, k + 1) = J(k + 1, k) = std::sqrt(beta);
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(J);
    std::vector<double> x(n), w(n);
    for (int k = 0; k < n; ++k) {
        x[k] = static_cast<double>(0.5L * (1.0L + es.eigenvalues()(k)));
        const L v = es.eigenvectors()(0, k);
        w[k] = static_cast<double>(v * v / (b + 1.0L));
    }
    return {x, w};
}

/// Integral of x^i y^j over a counterclockwise polygon by Green's theorem,
/// the line integrals expanded binomially and integrated exactly.
inline double polygon_monomial(const std::vector<Point2>& v, int i, int j) {
    using boost::math::binomial_coefficient;
    double total = 0.0;
    for (std::size_t e = 0; e < v.size(); ++e) {
        const Point2 a = v[e], d = v[(e + 1) % v.size()] - a;
        // int_0^1 (a.x + s d.x)^(i+1) (a.y + s d.y)^j ds * d.y / (i + 1)
        double line = 0.0;
        for (int k = 0; k <= i + 1; ++k)
            for (int l = 0; l <= j; ++l)
                line += binomial_coefficient<double>(i + 1, k) * std::pow(a.x, i + 1 - k) * std::pow(d.x, k) *
                        binomial_coefficient<double>(j, l) * std::pow(a.y, j - l) * std::pow(d.y, l) /
                        (k + l + 1.0);
        total += line * d.y / (i + 1.0);
    }
    return total;
}

inline double polygon_area(const std::vector<Point2>& v) { return polygon_monomial(v, 0, 0); }

/// Polar reference for int_P g(x) |x - xc|^-beta dx over a polygon, xc anywhere.
/// radial(theta, R) must return int_0^R g(xc + r u(theta)) r^(1 - beta) dr.
/// The angular integral is adaptive Gauss-Kronrod per edge wedge.
inline double polar_integral(const std::vector<Point2>& v, Point2 xc,
                             const std::function<double(double, double)>& radial, double tol = 1e-15) {
    double total = 0.0;
    for (std::size_t e = 0; e < v.size(); ++e) {
        const Point2 a = v[e], b = v[(e + 1) % v.size()];
        const sbc::Vec2 pa = a - xc, pb = b - xc;
        const double cr = sbc::cross(pa, pb);
        if (cr == 0.0) continue;
        const double ta = std::atan2(pa.y, pa.x);
        const double sweep = std::atan2(cr, sbc::dot(pa, pb));
        const sbc::Vec2 d = b - a;
        auto f = [&](double th) {
            const sbc::Vec2 u{std::cos(th), std::sin(th)};
            // a + s d = xc + R u
            const double R = sbc::cross(pa, d) / sbc::cross(u, d);
            return radial(th, R);
        };
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, ta, ta + sweep, 20, tol);
    }
    return total;
}

/// Radial integral for a polynomial numerator sum c x^i y^j about xc, in closed form.
struct MonomialTerm {
    double c;
    int i, j;
};

inline std::function<double(double, double)> polynomial_radial(std::vector<MonomialTerm> terms, Point2 xc,
                                                               double beta) {
    return [terms = std::move(terms), xc, beta](double th, double R) {
        using boost::math::binomial_coefficient;
        const double cs = std::cos(th), sn = std::sin(th);
        double s = 0.0;
        for (const MonomialTerm& t : terms) {
            // (xc.x + r cs)^i (xc.y + r sn)^j, collect powers of r.
            for (int k = 0; k <= t.i; ++k)
                for (int l = 0; l <= t.j; ++l) {
                    const double coef = t.c * binomial_coefficient<double>(t.i, k) * std::pow(xc.x, t.i - k) *
                                        std::pow(cs, k) * binomial_coefficient<double>(t.j, l) *
                                        std::pow(xc.y, t.j - l) * std::pow(sn, l);
                    const double p = k + l + 2.0 - beta;
                    s += coef * std::pow(R, p) / p;
                }
        }
        return s;
    };
}

/// Segment-segment proper intersection (shared endpoints do not count).
inline bool segments_cross(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
    const double d1 = sbc::cross(q2 - q1, p1 - q1), d2 = sbc::cross(q2 - q1, p2 - q1);
    const double d3 = sbc::cross(p2 - p1, q1 - p1), d4 = sbc::cross(p2 - p1, q2 - p1);
    return ((d1 > 1e-14 && d2 < -1e-14) || (d1 < -1e-14 && d2 > 1e-14)) &&
           ((d3 > 1e-14 && d4 < -1e-14) || (d3 < -1e-14 && d4 > 1e-14));
}

/// Star-shapedness from x0 by visibility: every boundary sample must be reachable from x0
/// without properly crossing the boundary polyline. x0 must lie inside or on the boundary.
inline bool visible_from(const std::vector<Point2>& polyline, Point2 x0) {
    const std::size_t n = polyline.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point2 p = polyline[k];
        for (std::size_t e = 0; e < n; ++e) {
            if (e == k || (e + 1) % n == k) continue;
            if (segments_cross(x0, p, polyline[e], polyline[(e + 1) % n])) return false;
        }
    }
    return true;
}

/// Crossing-number point-in-polygon.
inline bool inside_polygon(const std::vector<Point2>& v, Point2 p) {
    bool in = false;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].y > p.y) != (v[j].y > p.y) &&
            p.x < (v[j].x - v[i].x) * (p.y - v[i].y) / (v[j].y - v[i].y) + v[i].x)
            in = !in;
    }
    return in;
}

}  // namespace oracle
