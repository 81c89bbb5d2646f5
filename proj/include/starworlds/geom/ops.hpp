#pragma once

#include <optional>
#include <utility>

#include "starworlds/geom/types.hpp"

namespace starworlds::geom {

// Orientation of the ordered triple (a, b, c): sign of (b-a) x (c-a),
// classified with a tolerance scaled by input magnitude.
Orientation orient(const Point2& a, const Point2& b, const Point2& c);

// Location of a point relative to a polygon's closed region.
enum class Location { Inside, OnBoundary, Outside };
Location locate_point(const SimplePolygon& p, const Point2& q);

inline bool in_polygon(const SimplePolygon& p, const Point2& q) {
    return locate_point(p, q) != Location::Outside;
}

// Validating factory: >= 3 vertices, consecutive duplicates removed, simple,
// CCW. Throws MalformedInput.
SimplePolygon make_simple_polygon(std::vector<Point2> verts, bool allow_cw_fix = false);

bool is_simple(const SimplePolygon& p);
bool is_convex(const SimplePolygon& p);

// Minimal CCW convex polygon containing the points; collinear boundary points
// removed. Throws DegenerateHull if all points are (near-)collinear.
ConvexPolygon convex_hull(std::vector<Point2> points);

struct RayHit {
    double param;  // in units of |dir|
    Point2 point;
};

// All boundary crossings of the ray with the polygon, sorted by parameter and
// deduplicated. Each edge owns its start vertex (half-open rule) so a ray
// through a shared vertex is counted once.
std::vector<RayHit> ray_polygon_hits(const Ray& r, const SimplePolygon& p);

// True iff the ray's open parameter range (t_lo, t_hi) passes through int P.
// Points on the boundary do not count, so grazing along edges and vertices is
// not an interior intersection.
bool ray_hits_interior(const Ray& r, const SimplePolygon& p, double t_lo = 0.0,
                       double t_hi = std::numeric_limits<double>::infinity());

inline bool segment_hits_interior(const Point2& a, const Point2& b, const SimplePolygon& p) {
    return ray_hits_interior(Ray{a, b - a}, p, 0.0, 1.0);
}

// Ray-ellipse intersection parameters (ascending, at most two).
std::vector<double> ray_ellipse_hits(const Ray& r, const Ellipse& e);

// Tangent points of a polygon through a free exterior point x, i.e. the
// vertices of extreme polar angle seen from x. Ordered such that the triple
// (x, t1, t2) is CW. Throws NotFreeExterior.
std::pair<Point2, Point2> tangent_points_polygon(const SimplePolygon& p, const Point2& x);

// Tangent points of an ellipse through a strictly exterior point, computed in
// closed form via the affine map to the unit circle. Same (x, t1, t2) CW
// ordering. Throws PointInsideShape.
std::pair<Point2, Point2> tangent_points_ellipse(const Ellipse& e, const Point2& x);

bool point_in_shape(const Shape& s, const Point2& p, double tol = kEps);

// Closed angular interval [start, start+width] of directions from x that hit
// the shape; nullopt when the shape surrounds x (every direction blocked).
// Precondition: x outside the shape.
struct Arc {
    double start = 0.0;  // radians, normalized to [0, 2pi)
    double width = 0.0;  // in [0, 2pi]
};
std::optional<Arc> blocked_arc(const Shape& s, const Point2& x);

// Union of arcs covers the full circle?
bool arcs_cover_circle(std::vector<Arc> arcs);

enum class PointClass { Inside, BoundedExterior, FreeExterior };

// Exact classification of x against a set of shapes via the union of the
// angular intervals each shape subtends from x.
PointClass classify_point(const std::vector<Shape>& shapes, const Point2& x);

// Closed convex regions share a point? Separating-axis test over both edge
// sets; touching counts as intersecting.
bool convex_pieces_intersect(const ConvexPolygon& a, const ConvexPolygon& b);

// Clip a convex polygon by the half-plane { q : dot(q - p0, n) >= 0 }.
// Returns empty polygon when nothing remains.
SimplePolygon clip_halfplane(const SimplePolygon& poly, const Point2& p0, const Vec2& n);

// Kernel of a simple polygon as the intersection of the inner half-planes of
// all edges (O(N^2) incremental clipping). nullopt when P is not starshaped.
std::optional<ConvexPolygon> polygon_kernel(const SimplePolygon& p);

// Exact kernel membership: x is on the inner side of every edge. Works for
// measure-zero kernels where the region extraction degenerates.
bool in_polygon_kernel(const SimplePolygon& p, const Point2& x);

// Inscribed N-gon approximation of an ellipse.
SimplePolygon ellipse_to_polygon(const Ellipse& e, int n = 30);

// Largest exit parameter of the ray from a convex piece, if hit.
std::optional<double> ray_exit_param(const Ray& r, const ConvexPolygon& c);
std::optional<double> ray_exit_param(const Ray& r, const Ellipse& e);

// Direction (unit vector) of the principal axis of a point set.
Vec2 principal_axis(const std::vector<Point2>& pts);

double angle_norm(double a);  // normalize to [0, 2pi)

}  // namespace starworlds::geom
