#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "starworlds/admker/admker.hpp"
#include "starworlds/starshape/starshape.hpp"

namespace starworlds::starworld {

using admker::ExcludeSet;
using admker::KernelRegion;
using geom::AABB;
using geom::ConvexPolygon;
using geom::Point2;
using geom::Shape;
using geom::SimplePolygon;
using geom::Vec2;
using starshape::KernelSpec;
using starshape::StarObstacle;

struct Obstacle {
    int id = 0;
    Shape shape;
    Vec2 velocity{0, 0};  // used by the simulation driver
};

struct FormOptions {
    bool exclude_obstacle_points = false;
    double kernel_side_length = 0.5;  // desired distance between kernel points
    int max_iterations = 10;
};

struct Cluster {
    std::vector<int> member_ids;  // sorted; doubles as the temporal signature
    KernelRegion kernel_region;
};

struct KernelSelection {
    KernelSpec k;
    Point2 centroid;  // k_c
};

struct StarWorld {
    enum class Status { Disjoint, IntersectingFallback };

    std::vector<StarObstacle> obstacles;
    Status status = Status::Disjoint;
    int iterations = 0;
    std::vector<int> cluster_counts;          // per-iteration cluster count
    std::map<int, std::vector<size_t>> cluster_map;  // obstacle id -> star indices
    std::map<std::vector<int>, KernelSelection> prev_kernels;  // signature -> selection
};

// Algorithm for forming a (disjoint when possible) star world: cluster
// intersecting obstacles, pick kernel points in the admissible kernel of each
// cluster, take per-shape starshaped hulls, and iterate until the clustering
// is stable. Falls back to a convex decomposition world when some cluster has
// an empty admissible kernel.
StarWorld form_star_world(const std::vector<Obstacle>& obstacles, const Point2& x,
                          const Point2& x_g, const FormOptions& opts = {},
                          const StarWorld* prev = nullptr);

// Kernel point selection for one cluster: pick the centroid side of l(x, x_g)
// consistent with the previous frame and fit the largest equilateral triangle
// with side at most l around it. Throws EmptyKernel when the region cannot
// host a non-degenerate triangle.
KernelSelection select_kernel_points(const KernelRegion& region,
                                     const std::vector<Shape>& cluster_shapes,
                                     std::optional<Point2> prev_centroid, const Point2& x,
                                     const Point2& x_g, double l);

// Union-find over star obstacles: stars whose convex pieces intersect
// (ellipses via their 30-gon approximations) land in one group. Returns
// groups of star indices.
std::vector<std::vector<size_t>> cluster_star_obstacles(const std::vector<StarObstacle>& stars);

// Eq.-style fallback: every obstacle replaced by its convex decomposition,
// each piece a star obstacle with a small kernel triangle at its centroid.
StarWorld convex_decomposition_world(const std::vector<Obstacle>& obstacles,
                                     double kernel_side_length = 0.5);

// Representative excluding points of an obstacle: polygon vertices, or the
// four axis extreme points of an ellipse.
std::vector<Point2> exclusion_points_for(const Obstacle& o);

// Ear-clipping triangulation followed by Hertel-Mehlhorn diagonal removal.
std::vector<ConvexPolygon> convex_decomposition(const SimplePolygon& p);

struct ValidationReport {
    bool coverage_ok = true;       // originals inside their stars
    bool strictness_ok = true;     // rays from the kernel centroid cross once
    bool robot_excluded = true;
    bool goal_excluded = true;
    bool disjoint_ok = true;       // pairwise piece separation (Disjoint only)
    int stars = 0;
    int iterations = 0;
    bool fallback = false;

    bool pass() const {
        return coverage_ok && strictness_ok && robot_excluded && goal_excluded &&
               (fallback || disjoint_ok);
    }
    std::string to_string() const;
};

ValidationReport validate_star_world(const StarWorld& world, const std::vector<Obstacle>& obstacles,
                                     const Point2& x, const Point2& x_g, int boundary_samples = 500,
                                     int rays = 720);

}  // namespace starworlds::starworld
