#pragma once

#include <vector>

#include "sbc/cubature.hpp"

namespace sbc {

/// Closed counterclockwise loop for transfinite interpolation. Convexity is advisory.
class BoundaryLoop {
public:
    explicit BoundaryLoop(std::vector<Curve> curves, RegionOptions opts = {});
    explicit BoundaryLoop(Region r);

    const Region& region() const { return region_; }
    const std::vector<Curve>& curves() const { return region_.curves(); }
    double scale() const { return region_.scale(); }
    /// Mean of uniformly sampled boundary points; interior for convex loops.
    Point2 centroid() const { return centroid_; }
    /// False when a perp product from the centroid is negative at a sample.
    bool looks_convex() const { return convex_; }

private:
    void init();
    Region region_;
    Point2 centroid_;
    bool convex_ = true;
};

struct EggParams {
    double a = 4.0;
    double b = 5.0;
    double r = 1.0;
};

/// c(t) = (r cos 2 pi t, a r sin 2 pi t / (b + r cos 2 pi t)) as one parametric curve.
BoundaryLoop egg_domain(EggParams p = {});

/// Boundary quadrature adapted to an evaluation point: n_t points per curve split
/// into 16-point Gauss-Legendre panels, panels bisected while longer than the
/// distance to x. Shared by the numerator and W so ratios stay consistent.
struct BoundaryNodes {
    std::vector<Point2> c;
    std::vector<double> perp_w;  // weight * (c - x) . c'^perp
    std::vector<double> dist;    // |c - x|
    double min_dist = 0.0;
};

BoundaryNodes boundary_nodes(const BoundaryLoop& loop, Point2 x, int n_t);

/// Transfinite mean value interpolant of boundary data g at x. Throws invalid_argument
/// when x is outside or within 1e-9 * scale of the boundary.
double tmvi_eval(const BoundaryLoop& loop, const ScalarField& g, Point2 x, int n_t = 256);

/// (1 / W_p)^(1/p), W_p = int (c - x) . c'^perp / |c - x|^(2+p) dt.
double lp_distance(const BoundaryLoop& loop, Point2 x, double p, int n_t = 256);

/// Distance to the boundary by Newton's method on d/dt |x - c(t)|^2.
double exact_distance(const BoundaryLoop& loop, Point2 x);

/// |u - g|_2 / |g|_2 (g is the reference field) over the loop interior using an n_xi x n_t SBC rule centred at the centroid.
double relative_l2_error(const BoundaryLoop& loop, const ScalarField& u, const ScalarField& g, int n_xi, int n_t,
                         Execution exec = Execution::Parallel);

/// True when x is inside the loop and farther than standoff from it (sampled test).
bool strictly_inside(const BoundaryLoop& loop, Point2 x, double standoff);

}  // namespace sbc
