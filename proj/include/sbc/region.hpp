#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "sbc/curve.hpp"

namespace sbc {

struct RegionOptions {
    double closure_tolerance = 1e-12;
    /// Reject regions whose signed area is not positive.
    bool require_ccw = true;
};

/// Closed chain of curves, counterclockwise by default.
class Region {
public:
    explicit Region(std::vector<Curve> curves, RegionOptions opts = {});

    const std::vector<Curve>& curves() const { return curves_; }
    std::size_t size() const { return curves_.size(); }
    double closure_tolerance() const { return closure_tolerance_; }

    /// Bounding box of the boundary (control polygons for Bezier kinds, samples otherwise).
    Point2 bbox_min() const { return lo_; }
    Point2 bbox_max() const { return hi_; }
    double scale() const { return norm(hi_ - lo_); }

    bool all_segments() const;
    /// Same curves in reverse order and orientation. Not ccw-validated.
    Region reversed() const;

private:
    std::vector<Curve> curves_;
    double closure_tolerance_;
    Point2 lo_, hi_;
};

namespace center {
struct Origin {};
struct VertexAverage {};
struct Vertex {
    std::size_t index = 0;
};
struct Custom {
    Point2 point;
};
}  // namespace center

using CenterPolicy = std::variant<center::Origin, center::VertexAverage, center::Vertex, center::Custom>;

struct CurvedTriangle {
    Curve curve;
    Point2 x0;
};

Point2 resolve_center(const Region& r, const CenterPolicy& p);

/// One triangle per curve, order preserved.
std::vector<CurvedTriangle> decompose(const Region& r, Point2 x0);

/// Sampling check: perp products from x0 all >= -1e-12 * scale^2.
bool is_star_convex(const Region& r, Point2 x0, int samples_per_curve = 256);

/// Area via the scaled boundary form with f = 1 (64-point rule per curve).
double signed_area(const std::vector<Curve>& curves, Point2 x0);

}  // namespace sbc
