#include "sbc/curve.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace sbc {

namespace {

constexpr std::size_t kStackPoints = 16;

// de Casteljau on a scratch copy; small degrees stay on the stack.
template <typename P>
P de_casteljau(const std::vector<P>& pts, double t) {
    const std::size_t n = pts.size();
    std::array<P, kStackPoints> stack{};
    std::vector<P> heap;
    P* work = stack.data();
    if (n > kStackPoints) {
        heap.assign(pts.begin(), pts.end());
        work = heap.data();
    } else {
        std::copy(pts.begin(), pts.end(), stack.begin());
    }
    const double s = 1.0 - t;
    for (std::size_t level = n - 1; level > 0; --level)
        for (std::size_t i = 0; i < level; ++i) work[i] = s * work[i] + t * work[i + 1];
    return work[0];
}

// Bezier derivative via the hodograph: degree * sum of differences.
template <typename P>
P hodograph(const std::vector<P>& pts, double t) {
    const std::size_t n = pts.size();
    if (n < 2) return P{};
    std::array<P, kStackPoints> stack{};
    std::vector<P> heap;
    P* work = stack.data();
    if (n - 1 > kStackPoints) {
        heap.resize(n - 1);
        work = heap.data();
    }
    for (std::size_t i = 0; i + 1 < n; ++i) work[i] = pts[i + 1] - pts[i];
    const double s = 1.0 - t;
    for (std::size_t level = n - 2; level > 0; --level)
        for (std::size_t i = 0; i < level; ++i) work[i] = s * work[i] + t * work[i + 1];
    return static_cast<double>(n - 1) * work[0];
}

// Homogeneous point (w x, w y, w) for rational evaluation.
struct H3 {
    double x = 0.0, y = 0.0, w = 0.0;
};
H3 operator+(H3 a, H3 b) { return {a.x + b.x, a.y + b.y, a.w + b.w}; }
H3 operator-(H3 a, H3 b) { return {a.x - b.x, a.y - b.y, a.w - b.w}; }
H3 operator*(double s, H3 a) { return {s * a.x, s * a.y, s * a.w}; }

std::vector<H3> homogeneous(const RationalBezier& r) {
    std::vector<H3> h(r.control_points.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        h[i] = {r.weights[i] * r.control_points[i].x, r.weights[i] * r.control_points[i].y, r.weights[i]};
    return h;
}

void check_finite(Point2 p, const char* what) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument(fmt::format("{} has a non-finite coordinate", what));
}

void check_t(double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::invalid_argument(fmt::format("curve parameter t = {} outside [0,1]", t));
}

}  // namespace

Curve Curve::segment(Point2 from, Point2 to) {
    check_finite(from, "segment endpoint");
    check_finite(to, "segment endpoint");
    Curve c;
    c.data_ = Segment{from, to};
    return c;
}

Curve Curve::bezier(std::vector<Point2> control_points) {
    if (control_points.size() < 2) throw std::invalid_argument("Bezier curve needs at least 2 control points");
    for (Point2 p : control_points) check_finite(p, "Bezier control point");
    Curve c;
    c.data_ = Bezier{std::move(control_points)};
    return c;
}

Curve Curve::rational_bezier(std::vector<Point2> control_points, std::vector<double> weights) {
    if (control_points.size() < 2)
        throw std::invalid_argument("rational Bezier curve needs at least 2 control points");
    if (weights.size() != control_points.size())
        throw std::invalid_argument(fmt::format("rational Bezier has {} control points but {} weights",
                                                control_points.size(), weights.size()));
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("rational Bezier weights must be positive");
    for (Point2 p : control_points) check_finite(p, "rational Bezier control point");
    Curve c;
    c.data_ = RationalBezier{std::move(control_points), std::move(weights)};
    return c;
}

Curve Curve::parametric(expr::Expr x, expr::Expr y, double t0, double t1) {
    for (const expr::Expr* e : {&x, &y}) {
        if (e->uses(expr::X) || e->uses(expr::Y))
            throw std::invalid_argument(fmt::format("parametric curve expression '{}' may only use t", e->source()));
    }
    if (!(t1 > t0)) throw std::invalid_argument("parametric curve range needs t1 > t0");
    Curve c;
    c.data_ = Parametric{std::make_shared<const expr::Expr>(std::move(x)),
                         std::make_shared<const expr::Expr>(std::move(y)), t0, t1};
    // Probe a few points so malformed curves fail at construction.
    for (double t : {0.0, 0.5, 1.0}) {
        Point2 p = c.eval_unchecked(t);
        Vec2 d = c.deriv_unchecked(t);
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(d.x) || !std::isfinite(d.y))
            throw std::invalid_argument(fmt::format("parametric curve is not finite at t = {}", t));
    }
    return c;
}

Curve Curve::parametric(const std::string& x_src, const std::string& y_src, double t0, double t1) {
    return parametric(expr::parse(x_src), expr::parse(y_src), t0, t1);
}

int Curve::polynomial_degree() const {
    switch (kind()) {
        case CurveKind::Segment: return 1;
        case CurveKind::Bezier: return static_cast<int>(std::get<Bezier>(data_).control_points.size()) - 1;
        default: return 0;
    }
}

Curve Curve::reversed() const {
    Curve c = *this;
    switch (kind()) {
        case CurveKind::Segment: {
            auto& s = std::get<Segment>(c.data_);
            std::swap(s.from, s.to);
            break;
        }
        case CurveKind::Bezier: {
            auto& b = std::get<Bezier>(c.data_);
            std::reverse(b.control_points.begin(), b.control_points.end());
            break;
        }
        case CurveKind::RationalBezier: {
            auto& r = std::get<RationalBezier>(c.data_);
            std::reverse(r.control_points.begin(), r.control_points.end());
            std::reverse(r.weights.begin(), r.weights.end());
            break;
        }
        case CurveKind::Parametric: {
            auto& p = std::get<Parametric>(c.data_);
            std::swap(p.t0, p.t1);
            break;
        }
    }
    return c;
}

Point2 Curve::eval_unchecked(double t) const {
    switch (kind()) {
        case CurveKind::Segment: {
            const auto& s = std::get<Segment>(data_);
            if (t == 1.0) return s.to;
            return s.from + t * (s.to - s.from);
        }
        case CurveKind::Bezier: return de_casteljau(std::get<Bezier>(data_).control_points, t);
        case CurveKind::RationalBezier: {
            const auto& r = std::get<RationalBezier>(data_);
            if (t == 0.0) return r.control_points.front();
            if (t == 1.0) return r.control_points.back();
            const H3 h = de_casteljau(homogeneous(r), t);
            return {h.x / h.w, h.y / h.w};
        }
        case CurveKind::Parametric: {
            const auto& p = std::get<Parametric>(data_);
            const double s = p.t0 + (p.t1 - p.t0) * t;
            const expr::Bindings b{std::nullopt, std::nullopt, s};
            return {expr::eval(*p.x, b), expr::eval(*p.y, b)};
        }
    }
    return {};
}

Vec2 Curve::deriv_unchecked(double t) const {
    switch (kind()) {
        case CurveKind::Segment: {
            const auto& s = std::get<Segment>(data_);
            return s.to - s.from;
        }
        case CurveKind::Bezier: return hodograph(std::get<Bezier>(data_).control_points, t);
        case CurveKind::RationalBezier: {
            const auto& r = std::get<RationalBezier>(data_);
            const std::vector<H3> h = homogeneous(r);
            const H3 p = de_casteljau(h, t);
            const H3 dp = hodograph(h, t);
            // Quotient rule: (P' w - P w') / w^2.
            return {(dp.x * p.w - p.x * dp.w) / (p.w * p.w), (dp.y * p.w - p.y * dp.w) / (p.w * p.w)};
        }
        case CurveKind::Parametric: {
            const auto& p = std::get<Parametric>(data_);
            const double scale = p.t1 - p.t0;
            const double s = p.t0 + scale * t;
            return {scale * expr::eval_dual(*p.x, 0.0, 0.0, s, expr::T).d,
                    scale * expr::eval_dual(*p.y, 0.0, 0.0, s, expr::T).d};
        }
    }
    return {};
}

Point2 curve_eval(const Curve& c, double t) {
    check_t(t);
    return c.eval_unchecked(t);
}

Vec2 curve_deriv(const Curve& c, double t) {
    check_t(t);
    return c.deriv_unchecked(t);
}

double perp_product(const Curve& c, double t, Point2 x0) {
    return dot(c.eval_unchecked(t) - x0, perp(c.deriv_unchecked(t)));
}

}  // namespace sbc
