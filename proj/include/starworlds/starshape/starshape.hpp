#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "starworlds/geom/ops.hpp"

namespace starworlds::starshape {

using geom::ConvexPolygon;
using geom::Ellipse;
using geom::Point2;
using geom::SimplePolygon;
using geom::Vec2;

// Specified kernel K. Strictness guarantees need >= 3 non-collinear points.
struct KernelSpec {
    std::vector<Point2> points;

    Point2 centroid() const {
        Vec2 c{0, 0};
        for (const auto& p : points) c += p;
        return c / double(points.size());
    }
};

using ConvexShape = std::variant<ConvexPolygon, Ellipse>;

// One closed convex region of a star obstacle.
struct StarPiece {
    enum class Kind { OriginalConvex, TangentCone };
    Kind kind;
    std::variant<ConvexPolygon, Ellipse> region;

    const ConvexPolygon* polygon() const { return std::get_if<ConvexPolygon>(&region); }
    const Ellipse* ellipse() const { return std::get_if<Ellipse>(&region); }
};

// Union of convex pieces, strictly starshaped w.r.t. every interior point of
// CH(K). Boundary queries use the max ray parameter over per-piece exits,
// which is exact for strictly starshaped unions.
struct StarObstacle {
    std::vector<StarPiece> pieces;
    KernelSpec kernel_spec;
    std::vector<Point2> kernel_hull;  // CH(K); may be a point or segment for degenerate K
    mutable std::optional<SimplePolygon> boundary_cache;

    bool contains(const Point2& p, double tol = geom::kEps) const;
    Point2 kernel_centroid() const { return kernel_spec.centroid(); }
    geom::AABB bbox() const;
    // Rendering boundary, built lazily by ray casting (n directions).
    const SimplePolygon& boundary(int n = 360) const;
};

// Output of the polygon hull algorithm.
struct StarPolygon {
    SimplePolygon vertices;
    KernelSpec kernel_spec;
    bool fallback_boundary = false;  // set when post-validation rejected the direct output
};

// Starshaped hull of a convex shape w.r.t. a single point: the shape itself
// when x is inside, otherwise the shape plus the tangent triangle through x.
StarObstacle sh_point_convex(const ConvexShape& a, const Point2& x);

// Starshaped hull of a convex shape with specified kernel K: the shape plus
// the convex hull of the exterior kernel points and their tangent points.
StarObstacle sh_kernel_convex(const ConvexShape& a, const KernelSpec& k);

// Starshaped hull of a simple polygon with specified kernel K (vertex-walk
// algorithm with crossing/kernel point insertion). Output is post-validated
// (simple, K inside its kernel, P covered); on failure the boundary is
// rebuilt from the exact union of per-edge hulls and flagged.
StarPolygon sh_kernel_polygon(const SimplePolygon& p, const KernelSpec& k);

// true iff x lies in the kernel of P.
bool is_starshaped_wrt(const SimplePolygon& p, const Point2& x);

// The unique boundary point of the piece union along the ray from origin.
// Throws OriginOutsideKernel when origin is not in CH(K).
Point2 star_boundary_ray(const StarObstacle& s, const Point2& origin, const Vec2& dir);
double star_boundary_param(const StarObstacle& s, const Point2& origin, const Vec2& dir);

// Exact convex decomposition of SH_kerK(P) as the per-edge hulls
// CH(K u {edge}); their union equals the hull with specified kernel.
std::vector<ConvexPolygon> kernel_hull_pieces(const SimplePolygon& p, const KernelSpec& k);

// Exact boundary polygon of a union of convex pieces that is strictly
// starshaped w.r.t. center.
SimplePolygon star_union_boundary(const std::vector<ConvexPolygon>& pieces, const Point2& center);

// Star obstacle for a concave polygon: fan triangulation of the hull polygon
// from the kernel centroid, or the per-edge hull pieces when the fallback was
// taken.
StarObstacle star_obstacle_from_polygon(const SimplePolygon& p, const KernelSpec& k);

// Star obstacle for a cluster: concatenation of per-shape hull pieces (the
// hull of a union is the union of the hulls).
StarObstacle merge_star_obstacles(std::vector<StarObstacle> parts, KernelSpec k);

bool shape_is_convex(const geom::Shape& s);


// Per-shape hull dispatch: ellipses and convex polygons take the closed-form
// convex route, concave polygons the polygon algorithm.
StarObstacle sh_kernel_shape(const geom::Shape& s, const KernelSpec& k);

}  // namespace starworlds::starshape
