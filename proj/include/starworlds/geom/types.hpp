#pragma once

#include <cmath>
#include <variant>
#include <vector>

namespace starworlds::geom {

// Base relative tolerance for all sign predicates. Scaled by input magnitude
// so behavior is consistent across scene sizes.
constexpr double kEps = 1e-9;

inline double eps_for(double magnitude) { return kEps * std::max(1.0, magnitude); }

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::hypot(x, y); }
    Vec2 normalized() const { double n = norm(); return {x / n, y / n}; }
    // CCW perpendicular.
    Vec2 perp() const { return {-y, x}; }
    Vec2 rotated(double a) const {
        double c = std::cos(a), s = std::sin(a);
        return {c * x - s * y, s * x + c * y};
    }
    double angle() const { return std::atan2(y, x); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

using Point2 = Vec2;

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double dist(const Point2& a, const Point2& b) { return (b - a).norm(); }

struct Ray {
    Point2 origin;
    Vec2 dir;  // nonzero, stored unnormalized
};

struct Segment {
    Point2 a;
    Point2 b;
};

struct AABB {
    Point2 lo{0, 0};
    Point2 hi{0, 0};

    void expand(const Point2& p) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
    }
    void expand(const AABB& o) { expand(o.lo); expand(o.hi); }
    AABB inflated(double m) const { return {{lo.x - m, lo.y - m}, {hi.x + m, hi.y + m}}; }
    Point2 center() const { return (lo + hi) * 0.5; }
    double diameter() const { return (hi - lo).norm(); }
    bool contains(const Point2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    static AABB of(const Point2& p) { return {p, p}; }
};

struct Ellipse {
    Point2 center;
    double a = 1.0;  // semi-axis along local x
    double b = 1.0;  // semi-axis along local y
    double rotation = 0.0;  // radians

    // Maps world coordinates to the frame where the ellipse is the unit circle.
    Point2 to_circle(const Point2& p) const {
        Vec2 q = (p - center).rotated(-rotation);
        return {q.x / a, q.y / b};
    }
    Point2 from_circle(const Point2& q) const {
        return center + Vec2{q.x * a, q.y * b}.rotated(rotation);
    }
    // Linear part of to_circle, for directions.
    Vec2 dir_to_circle(const Vec2& d) const {
        Vec2 q = d.rotated(-rotation);
        return {q.x / a, q.y / b};
    }
    bool contains(const Point2& p, double tol = kEps) const {
        return to_circle(p).norm2() <= 1.0 + tol;
    }
    AABB bbox() const {
        double c = std::cos(rotation), s = std::sin(rotation);
        double ex = std::hypot(a * c, b * s), ey = std::hypot(a * s, b * c);
        return {{center.x - ex, center.y - ey}, {center.x + ex, center.y + ey}};
    }
    double area() const { return M_PI * a * b; }
};

// Simple polygon, vertices in CCW order, no self-intersection, no duplicate
// consecutive vertices. Validity is established by make_simple_polygon or by
// construction.
struct SimplePolygon {
    std::vector<Point2> v;

    size_t size() const { return v.size(); }
    const Point2& operator[](size_t i) const { return v[i]; }
    const Point2& at_wrapped(long i) const {
        long n = static_cast<long>(v.size());
        return v[static_cast<size_t>(((i % n) + n) % n)];
    }
    Segment edge(size_t i) const { return {v[i], v[(i + 1) % v.size()]}; }

    double signed_area() const {
        double s = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            const Point2& p = v[i];
            const Point2& q = v[(i + 1) % v.size()];
            s += p.cross(q);
        }
        return 0.5 * s;
    }
    double area() const { return std::abs(signed_area()); }
    Point2 centroid() const {
        double a6 = 0;
        Vec2 c{0, 0};
        for (size_t i = 0; i < v.size(); ++i) {
            const Point2& p = v[i];
            const Point2& q = v[(i + 1) % v.size()];
            double w = p.cross(q);
            a6 += w;
            c += (p + q) * w;
        }
        if (std::abs(a6) < 1e-300) return v.empty() ? Point2{0, 0} : v[0];
        return c / (3.0 * a6);
    }
    AABB bbox() const {
        AABB box = AABB::of(v[0]);
        for (const auto& p : v) box.expand(p);
        return box;
    }
};

// A SimplePolygon that is additionally convex.
struct ConvexPolygon {
    SimplePolygon poly;

    size_t size() const { return poly.size(); }
    const Point2& operator[](size_t i) const { return poly[i]; }
    const std::vector<Point2>& verts() const { return poly.v; }
};

enum class Orientation { CCW, CW, Collinear };

using Shape = std::variant<Ellipse, SimplePolygon>;

inline AABB shape_bbox(const Shape& s) {
    if (const auto* e = std::get_if<Ellipse>(&s)) return e->bbox();
    return std::get<SimplePolygon>(s).bbox();
}

inline double shape_area(const Shape& s) {
    if (const auto* e = std::get_if<Ellipse>(&s)) return e->area();
    return std::get<SimplePolygon>(s).area();
}

}  // namespace starworlds::geom
