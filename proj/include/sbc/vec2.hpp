#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sbc {

/// Planar point or vector.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

using Point2 = Vec2;

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of a x b.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
/// Rotation by -pi/2: (v.y, -v.x). Outward normal direction of a ccw tangent.
constexpr Vec2 perp(Vec2 v) { return {v.y, -v.x}; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Raised when an integrand or field produces a non-finite value.
class EvaluationError : public std::runtime_error {
public:
    EvaluationError(const std::string& what, Point2 where)
        : std::runtime_error(what), where_(where) {}
    Point2 where() const { return where_; }

private:
    Point2 where_;
};

/// Raised by registry lookups for unknown names.
class NotFoundError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace sbc
