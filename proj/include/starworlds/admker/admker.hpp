#pragma once

#include <optional>
#include <vector>

#include "starworlds/geom/ops.hpp"

namespace starworlds::admker {

using geom::AABB;
using geom::ConvexPolygon;
using geom::Point2;
using geom::Ray;
using geom::Segment;
using geom::Shape;
using geom::Vec2;

// Open cone of admissible hull-generation points for one (shape, excluder)
// pair: the CCW angular range from right_ray to left_ray, apex at the
// excluding point. Width above pi arises for convex shapes, where the only
// forbidden region is the shadow wedge behind the excluder.
struct Cone2 {
    Point2 apex;
    Ray right_ray;  // start of the CCW range (direction xbar - t1)
    Ray left_ray;   // end of the CCW range (direction xbar - t2)
    double width = 0.0;  // CCW width in (0, 2pi)

    // Membership in the open cone.
    bool contains(const Point2& p) const;
};

struct AdmissibleKernelSingle {
    enum class Kind { Empty, Cone, FullPlaneMinusShadow };
    Kind kind = Kind::Empty;
    std::optional<Cone2> cone;  // set unless Empty
    std::optional<Segment> tangent_chord;  // convex case: chord t1-t2
    Point2 anchor;  // shape centroid; fixes the half-plane cut choice per pair

    bool empty() const { return kind == Kind::Empty; }
};

// Excluded points X. Always carries the robot and goal in the pipeline;
// obstacle representative points are appended on demand.
struct ExcludeSet {
    std::vector<Point2> points;
};

// Closed convex under-approximation of an admissible kernel.
struct KernelRegion {
    std::optional<ConvexPolygon> region;  // nullopt == Empty
    bool exact = true;  // false once a wider-than-pi cone was cut to a half-plane

    bool empty() const { return !region.has_value(); }
    const ConvexPolygon& poly() const { return *region; }
};

// Admissible kernel of a single shape excluding a single point. Empty iff the
// excluder is inside the shape or a bounded exterior point.
AdmissibleKernelSingle admissible_kernel_single(const Shape& a, const Point2& xbar);

// Intersection over all (shape, excluder) pairs, clipped to bbox, kept convex
// by a fixed per-pair half-plane cut whenever a cone is wider than pi, and
// finally shrunk inward by delta_open so every representable point is
// strictly admissible. delta_open < 0 selects 1e-7 * bbox diameter.
KernelRegion admissible_kernel(const std::vector<Shape>& shapes, const ExcludeSet& xs,
                               const AABB& bbox, double delta_open = -1.0);

// Same, from precomputed per-pair cones (the per-obstacle cache path).
KernelRegion admissible_kernel_from_singles(const std::vector<AdmissibleKernelSingle>& singles,
                                            const AABB& bbox, double delta_open = -1.0);

}  // namespace starworlds::admker
