#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "sbc/expr.hpp"
#include "sbc/vec2.hpp"

namespace sbc {

struct Segment {
    Point2 from;
    Point2 to;
};

struct Bezier {
    std::vector<Point2> control_points;  // degree + 1 points
};

struct RationalBezier {
    std::vector<Point2> control_points;
    std::vector<double> weights;  // positive, one per control point
};

/// x(s), y(s) given as expressions in t, with s = t0 + (t1 - t0) t.
/// Derivatives use forward-mode differentiation of the expression tree.
struct Parametric {
    std::shared_ptr<const expr::Expr> x;
    std::shared_ptr<const expr::Expr> y;
    double t0 = 0.0;
    double t1 = 1.0;
};

enum class CurveKind { Segment, Bezier, RationalBezier, Parametric };

/// Boundary piece c(t), t in [0,1]. Immutable, cheap to copy.
class Curve {
public:
    static Curve segment(Point2 from, Point2 to);
    static Curve bezier(std::vector<Point2> control_points);
    static Curve rational_bezier(std::vector<Point2> control_points, std::vector<double> weights);
    /// Throws invalid_argument when an expression uses x or y, or t1 <= t0.
    static Curve parametric(expr::Expr x, expr::Expr y, double t0 = 0.0, double t1 = 1.0);
    static Curve parametric(const std::string& x_src, const std::string& y_src, double t0 = 0.0,
                            double t1 = 1.0);

    CurveKind kind() const { return static_cast<CurveKind>(data_.index()); }
    bool is_segment() const { return kind() == CurveKind::Segment; }
    const Segment& as_segment() const { return std::get<Segment>(data_); }
    const std::variant<Segment, Bezier, RationalBezier, Parametric>& data() const { return data_; }

    /// Polynomial degree of c(t) (1 for segments); 0 for non-polynomial kinds.
    int polynomial_degree() const;

    Point2 start() const { return eval_unchecked(0.0); }
    Point2 end() const { return eval_unchecked(1.0); }

    /// Reverse orientation: c(1 - t).
    Curve reversed() const;

    /// Evaluation without the [0,1] range check, for hot loops with known nodes.
    Point2 eval_unchecked(double t) const;
    Vec2 deriv_unchecked(double t) const;

private:
    std::variant<Segment, Bezier, RationalBezier, Parametric> data_;
};

/// Throws invalid_argument for t outside [0,1].
Point2 curve_eval(const Curve& c, double t);
Vec2 curve_deriv(const Curve& c, double t);

/// (c(t) - x0) . (c2'(t), -c1'(t)).
double perp_product(const Curve& c, double t, Point2 x0);

}  // namespace sbc
