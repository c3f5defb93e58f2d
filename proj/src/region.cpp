#include "sbc/region.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "sbc/quadrature.hpp"

namespace sbc {

namespace {

void grow(Point2& lo, Point2& hi, Point2 p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
}

void grow_curve(Point2& lo, Point2& hi, const Curve& c) {
    switch (c.kind()) {
        case CurveKind::Segment:
            grow(lo, hi, c.as_segment().from);
            grow(lo, hi, c.as_segment().to);
            break;
        case CurveKind::Bezier:
            for (Point2 p : std::get<Bezier>(c.data()).control_points) grow(lo, hi, p);
            break;
        case CurveKind::RationalBezier:
            for (Point2 p : std::get<RationalBezier>(c.data()).control_points) grow(lo, hi, p);
            break;
        case CurveKind::Parametric:
            for (int k = 0; k <= 256; ++k) grow(lo, hi, c.eval_unchecked(k / 256.0));
            break;
    }
}

}  // namespace

Region::Region(std::vector<Curve> curves, RegionOptions opts)
    : curves_(std::move(curves)), closure_tolerance_(opts.closure_tolerance) {
    if (curves_.empty()) throw std::invalid_argument("region needs at least one curve");
    const std::size_t m = curves_.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Curve& c = curves_[i];
        if (c.is_segment() && norm(c.as_segment().to - c.as_segment().from) <= closure_tolerance_)
            throw std::invalid_argument(fmt::format("curve {} is a zero-length segment", i));
        const Point2 e = c.end();
        const Point2 s = curves_[(i + 1) % m].start();
        const double gap = std::max(std::abs(e.x - s.x), std::abs(e.y - s.y));
        if (gap > closure_tolerance_)
            throw std::invalid_argument(fmt::format(
                "boundary not closed: end of curve {} is ({}, {}) but curve {} starts at ({}, {}) (gap {:.3g})", i,
                e.x, e.y, (i + 1) % m, s.x, s.y, gap));
    }
    lo_ = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    hi_ = -lo_;
    for (const Curve& c : curves_) grow_curve(lo_, hi_, c);
    if (opts.require_ccw) {
        const double area = signed_area(curves_, 0.5 * (lo_ + hi_));
        if (!(area > 0.0))
            throw std::invalid_argument(fmt::format(
                "region must be counterclockwise (signed area {:.6g}); reverse the curve order and orientation",
                area));
    }
}

bool Region::all_segments() const {
    return std::all_of(curves_.begin(), curves_.end(), [](const Curve& c) { return c.is_segment(); });
}

Region Region::reversed() const {
    std::vector<Curve> rev;
    rev.reserve(curves_.size());
    for (auto it = curves_.rbegin(); it != curves_.rend(); ++it) rev.push_back(it->reversed());
    return Region(std::move(rev), RegionOptions{closure_tolerance_, false});
}

Point2 resolve_center(const Region& r, const CenterPolicy& p) {
    struct Visitor {
        const Region& r;
        Point2 operator()(center::Origin) const { return {0.0, 0.0}; }
        Point2 operator()(center::VertexAverage) const {
            Point2 s{};
            for (const Curve& c : r.curves()) s += c.start();
            return s / static_cast<double>(r.size());
        }
        Point2 operator()(center::Vertex v) const {
            if (v.index >= r.size())
                throw std::invalid_argument(
                    fmt::format("vertex index {} out of range for a region with {} curves", v.index, r.size()));
            return r.curves()[v.index].start();
        }
        Point2 operator()(center::Custom c) const { return c.point; }
    };
    return std::visit(Visitor{r}, p);
}

std::vector<CurvedTriangle> decompose(const Region& r, Point2 x0) {
    std::vector<CurvedTriangle> out;
    out.reserve(r.size());
    for (const Curve& c : r.curves()) out.push_back({c, x0});
    return out;
}

bool is_star_convex(const Region& r, Point2 x0, int samples_per_curve) {
    if (samples_per_curve < 2) throw std::invalid_argument("star-convexity check needs at least 2 samples per curve");
    const double s = r.scale();
    const double floor = -1e-12 * s * s;
    for (const Curve& c : r.curves())
        for (int k = 0; k < samples_per_curve; ++k)
            if (perp_product(c, static_cast<double>(k) / (samples_per_curve - 1), x0) < floor) return false;
    return true;
}

double signed_area(const std::vector<Curve>& curves, Point2 x0) {
    const Rule1D& g = cached_gauss_legendre(64);
    double area = 0.0;
    for (const Curve& c : curves) {
        double acc = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) acc += g.weights[k] * perp_product(c, g.nodes[k], x0);
        area += 0.5 * acc;
    }
    return area;
}

}  // namespace sbc
