#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "sbc/parallel.hpp"
#include "sbc/region.hpp"

namespace sbc {

using ScalarField = std::function<double(Point2)>;

/// Physical-space rule. Rows ordered by (curve, t-node, xi-node).
struct CubatureRule {
    std::vector<Point2> points;
    std::vector<double> weights;  // signed, Jacobian folded in
    std::vector<int> curve_index;
    // Parametric coordinates, only filled with RuleOptions::keep_parametric.
    std::vector<double> xi;
    std::vector<double> t;

    std::size_t size() const { return points.size(); }
};

/// Segment seen from x0: n is the outward normal, tau the signed tangential coordinate.
struct PolygonEdgeData {
    Vec2 n;
    Vec2 tangent;  // unit, along the edge direction
    double ell = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    double delta_tau = 0.0;
};

PolygonEdgeData edge_data(const Segment& s, Point2 x0);

Point2 sb_map(const CurvedTriangle& tri, double xi, double t);
double sb_jacobian(const CurvedTriangle& tri, double xi, double t);

struct RuleOptions {
    bool keep_parametric = false;
    Execution exec = Execution::Parallel;
};

/// Zero-measure threshold relative to the region scale.
inline constexpr double kZeroMeasure = 1e-14;

CubatureRule generate_rule(const Region& r, const CenterPolicy& policy, int n_xi, int n_t, RuleOptions opts = {});

/// Sum of w * f(x); non-finite f values raise EvaluationError at the first offending row.
double apply_rule(const CubatureRule& rule, const ScalarField& f, Execution exec = Execution::Parallel);

double integrate(const Region& r, const CenterPolicy& policy, const ScalarField& f, int n_xi, int n_t,
                 Execution exec = Execution::Parallel);

/// Orders exact for a degree-p polynomial over a polygon.
std::pair<int, int> min_orders_polygon(int p);
/// Orders exact for a degree-m polynomial over a region with degree-p polynomial curves.
std::pair<int, int> min_orders_curved(int m, int p);

}  // namespace sbc
