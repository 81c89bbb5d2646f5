#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "starworlds/errors.hpp"
#include "starworlds/log.hpp"
#include "starworlds/starworld/starworld.hpp"

namespace starworlds::starworld {

using namespace geom;
using starshape::StarPiece;

namespace {

AABB scene_bbox(const std::vector<Obstacle>& obstacles, const Point2& x, const Point2& x_g) {
    AABB box = AABB::of(x);
    box.expand(x_g);
    for (const auto& o : obstacles) box.expand(shape_bbox(o.shape));
    return box;
}

KernelSpec equilateral_triangle(const Point2& c, double side, const Vec2& axis) {
    double base = axis.angle() + M_PI / 2;
    double r = side / std::sqrt(3.0);
    KernelSpec k;
    for (int i = 0; i < 3; ++i) {
        double a = base + 2.0 * M_PI * i / 3;
        k.points.push_back(c + Vec2{std::cos(a), std::sin(a)} * r);
    }
    return k;
}

// Small kernel triangle inside a convex region around its centroid, for the
// convex-decomposition fallback pieces.
KernelSpec centroid_triangle(const Shape& s, double side) {
    Point2 c;
    auto fits = [&](const KernelSpec& k) {
        for (const auto& p : k.points)
            if (!point_in_shape(s, p, -1e-12)) return false;
        return true;
    };
    if (const auto* e = std::get_if<Ellipse>(&s)) {
        c = e->center;
        side = std::min(side, 0.8 * std::min(e->a, e->b));
    } else {
        c = std::get<SimplePolygon>(s).centroid();
    }
    for (int it = 0; it < 60; ++it) {
        KernelSpec k = equilateral_triangle(c, side, {1, 0});
        if (fits(k)) return k;
        side *= 0.5;
    }
    throw EmptyKernel("cannot fit a kernel triangle inside a convex piece");
}

std::vector<ConvexPolygon> piece_polygons(const StarObstacle& s) {
    std::vector<ConvexPolygon> out;
    out.reserve(s.pieces.size());
    for (const auto& piece : s.pieces) {
        if (const auto* e = piece.ellipse())
            out.push_back(ConvexPolygon{ellipse_to_polygon(*e, 30)});
        else
            out.push_back(*piece.polygon());
    }
    return out;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<std::vector<size_t>> cluster_star_obstacles(const std::vector<StarObstacle>& stars) {
    std::vector<std::vector<ConvexPolygon>> polys;
    polys.reserve(stars.size());
    for (const auto& s : stars) polys.push_back(piece_polygons(s));

    UnionFind uf(stars.size());
    for (size_t i = 0; i < stars.size(); ++i) {
        for (size_t j = i + 1; j < stars.size(); ++j) {
            if (uf.find(i) == uf.find(j)) continue;
            bool touch = false;
            for (const auto& pi : polys[i]) {
                for (const auto& pj : polys[j]) {
                    if (convex_pieces_intersect(pi, pj)) { touch = true; break; }
                }
                if (touch) break;
            }
            if (touch) uf.unite(i, j);
        }
    }
    std::map<size_t, std::vector<size_t>> groups;
    for (size_t i = 0; i < stars.size(); ++i) groups[uf.find(i)].push_back(i);
    std::vector<std::vector<size_t>> out;
    out.reserve(groups.size());
    for (auto& [root, members] : groups) out.push_back(std::move(members));
    return out;
}

KernelSelection select_kernel_points(const KernelRegion& region,
                                     const std::vector<Shape>& cluster_shapes,
                                     std::optional<Point2> prev_centroid, const Point2& x,
                                     const Point2& x_g, double l) {
    if (region.empty()) throw EmptyKernel("admissible kernel region is empty");
    const SimplePolygon& base = region.poly().poly;

    // Prefer kernel points near the cluster: intersect with the cluster
    // region, taking the largest convex overlap over the cluster's convex
    // parts.
    SimplePolygon sel = base;
    {
        SimplePolygon best;
        double best_area = 0;
        for (const auto& shape : cluster_shapes) {
            std::vector<ConvexPolygon> parts;
            if (const auto* e = std::get_if<Ellipse>(&shape)) {
                parts.push_back(ConvexPolygon{ellipse_to_polygon(*e, 30)});
            } else {
                parts = convex_decomposition(std::get<SimplePolygon>(shape));
            }
            for (const auto& part : parts) {
                SimplePolygon inter = base;
                for (size_t i = 0; i < part.size() && !inter.v.empty(); ++i) {
                    Segment e = part.poly.edge(i);
                    inter = clip_halfplane(inter, e.a, (e.b - e.a).perp());
                }
                if (!inter.v.empty() && inter.area() > best_area) {
                    best_area = inter.area();
                    best = inter;
                }
            }
        }
        if (best_area > 0) sel = std::move(best);
    }

    // Split by the line l(x, x_g); S1 is the clockwise side.
    Vec2 line = x_g - x;
    Point2 k_c;
    bool have_kc = false;
    if (prev_centroid) {
        bool in_sel = locate_point(sel, *prev_centroid) != Location::Outside &&
                      orient(x, x_g, *prev_centroid) != Orientation::Collinear;
        if (in_sel) {
            k_c = *prev_centroid;
            have_kc = true;
        }
    }
    if (!have_kc) {
        SimplePolygon s1 = clip_halfplane(sel, x, Vec2{0, 0} - line.perp());
        SimplePolygon s2 = clip_halfplane(sel, x, line.perp());
        bool use_s2 = false;
        if (prev_centroid && orient(x, x_g, *prev_centroid) == Orientation::CCW) use_s2 = true;
        const SimplePolygon* side = use_s2 ? &s2 : &s1;
        if (side->v.empty()) side = use_s2 ? &s1 : &s2;
        if (side->v.empty()) side = &sel;
        k_c = side->centroid();
        if (locate_point(*side, k_c) == Location::Outside) {
            // Guard for near-degenerate clips: fall back to the region side.
            k_c = base.centroid();
        }
    }

    // Largest equilateral triangle with side <= l, centroid k_c, inside the
    // admissible region; orientation fixed by the region's principal axis.
    Vec2 axis = principal_axis(base.v);
    auto fits = [&](double side) {
        KernelSpec k = equilateral_triangle(k_c, side, axis);
        for (const auto& p : k.points)
            if (locate_point(base, p) == Location::Outside) return false;
        return true;
    };
    double lo = l * std::pow(2.0, -10);
    if (!fits(lo)) throw EmptyKernel("admissible region too thin for a kernel triangle");
    double side = lo;
    if (fits(l)) {
        side = l;
    } else {
        double hi = l;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            if (fits(mid)) lo = mid; else hi = mid;
        }
        side = lo;
    }
    return {equilateral_triangle(k_c, side, axis), k_c};
}

StarWorld convex_decomposition_world(const std::vector<Obstacle>& obstacles,
                                     double kernel_side_length) {
    StarWorld world;
    world.status = StarWorld::Status::IntersectingFallback;
    for (const auto& o : obstacles) {
        std::vector<Shape> parts;
        if (const auto* poly = std::get_if<SimplePolygon>(&o.shape)) {
            if (is_convex(*poly)) {
                parts.push_back(o.shape);
            } else {
                for (auto& piece : convex_decomposition(*poly)) parts.push_back(piece.poly);
            }
        } else {
            parts.push_back(o.shape);
        }
        for (const auto& part : parts) {
            KernelSpec k = centroid_triangle(part, kernel_side_length);
            StarObstacle star;
            star.kernel_spec = k;
            star.kernel_hull = k.points;
            if (const auto* e = std::get_if<Ellipse>(&part))
                star.pieces.push_back({StarPiece::Kind::OriginalConvex, *e});
            else
                star.pieces.push_back(
                    {StarPiece::Kind::OriginalConvex, ConvexPolygon{std::get<SimplePolygon>(part)}});
            world.cluster_map[o.id].push_back(world.obstacles.size());
            world.obstacles.push_back(std::move(star));
        }
    }
    return world;
}

StarWorld form_star_world(const std::vector<Obstacle>& obstacles, const Point2& x,
                          const Point2& x_g, const FormOptions& opts, const StarWorld* prev) {
    if (obstacles.empty()) return StarWorld{};
    if (dist(x, x_g) <= eps_for(std::max(x.norm(), x_g.norm())))
        throw MalformedInput("robot and goal positions coincide");
    for (const auto& o : obstacles) {
        if (point_in_shape(o.shape, x)) throw RobotInsideObstacle("robot starts inside an obstacle");
        if (point_in_shape(o.shape, x_g)) throw GoalInsideObstacle("goal lies inside an obstacle");
    }

    AABB scene = scene_bbox(obstacles, x, x_g);
    AABB bbox = scene.inflated(4.5 * std::max(scene.diameter(), 1.0));
    double delta_open = 1e-6 * std::max(scene.diameter(), 1.0);

    // Admissible kernels for the fixed excluders, one per obstacle, computed
    // once outside the loop.
    std::vector<std::array<admker::AdmissibleKernelSingle, 2>> cached(obstacles.size());
    for (size_t i = 0; i < obstacles.size(); ++i) {
        cached[i] = {admker::admissible_kernel_single(obstacles[i].shape, x),
                     admker::admissible_kernel_single(obstacles[i].shape, x_g)};
    }

    std::map<int, size_t> index_of;
    for (size_t i = 0; i < obstacles.size(); ++i) index_of[obstacles[i].id] = i;

    std::vector<std::vector<int>> clusters;  // member ids, sorted
    for (const auto& o : obstacles) clusters.push_back({o.id});

    StarWorld world;
    std::vector<StarObstacle> stars;
    std::vector<KernelSelection> picks;
    while (true) {
        if (world.iterations >= opts.max_iterations)
            throw IterationLimit("cluster iteration limit exceeded");
        ++world.iterations;
        size_t n_before = clusters.size();
        world.cluster_counts.push_back(int(n_before));

        stars.clear();
        picks.clear();
        for (const auto& members : clusters) {
            std::vector<admker::AdmissibleKernelSingle> singles;
            std::vector<Shape> shapes;
            for (int id : members) {
                size_t oi = index_of[id];
                shapes.push_back(obstacles[oi].shape);
                singles.push_back(cached[oi][0]);
                singles.push_back(cached[oi][1]);
            }
            if (opts.exclude_obstacle_points) {
                for (const auto& other : obstacles) {
                    if (std::binary_search(members.begin(), members.end(), other.id)) continue;
                    for (const auto& pt : exclusion_points_for(other)) {
                        // A representative point lying inside the cluster
                        // cannot be excluded from any hull that covers the
                        // cluster; skip it instead of forcing the fallback.
                        bool inside = false;
                        for (const auto& shape : shapes)
                            if (point_in_shape(shape, pt)) { inside = true; break; }
                        if (inside) continue;
                        for (const auto& shape : shapes)
                            singles.push_back(admker::admissible_kernel_single(shape, pt));
                    }
                }
            }
            KernelRegion region = admker::admissible_kernel_from_singles(singles, bbox, delta_open);
            std::optional<Point2> prev_centroid;
            if (prev) {
                auto it = prev->prev_kernels.find(members);
                if (it != prev->prev_kernels.end()) prev_centroid = it->second.centroid;
            }
            KernelSelection sel;
            try {
                sel = select_kernel_points(region, shapes, prev_centroid, x, x_g,
                                           opts.kernel_side_length);
            } catch (const EmptyKernel&) {
                log(LogLevel::Info, "empty admissible kernel; convex decomposition fallback");
                auto fb = convex_decomposition_world(obstacles, opts.kernel_side_length);
                fb.iterations = world.iterations;
                fb.cluster_counts = world.cluster_counts;
                return fb;
            }
            std::vector<StarObstacle> parts;
            parts.reserve(shapes.size());
            for (const auto& shape : shapes) parts.push_back(starshape::sh_kernel_shape(shape, sel.k));
            stars.push_back(starshape::merge_star_obstacles(std::move(parts), sel.k));
            picks.push_back(sel);
        }

        auto groups = cluster_star_obstacles(stars);
        if (groups.size() == n_before) break;
        std::vector<std::vector<int>> next;
        next.reserve(groups.size());
        for (const auto& g : groups) {
            std::vector<int> ids;
            for (size_t ci : g)
                ids.insert(ids.end(), clusters[ci].begin(), clusters[ci].end());
            std::sort(ids.begin(), ids.end());
            next.push_back(std::move(ids));
        }
        clusters = std::move(next);
    }

    world.status = StarWorld::Status::Disjoint;
    world.obstacles = std::move(stars);
    for (size_t ci = 0; ci < clusters.size(); ++ci) {
        for (int id : clusters[ci]) world.cluster_map[id].push_back(ci);
        world.prev_kernels[clusters[ci]] = picks[ci];
    }
    return world;
}

namespace {

std::vector<Point2> boundary_samples(const Shape& s, int n) {
    std::vector<Point2> out;
    out.reserve(n);
    if (const auto* e = std::get_if<Ellipse>(&s)) {
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * M_PI * i / n;
            out.push_back(e->from_circle({std::cos(a), std::sin(a)}));
        }
        return out;
    }
    const auto& p = std::get<SimplePolygon>(s);
    double total = 0;
    for (size_t i = 0; i < p.size(); ++i) total += dist(p.edge(i).a, p.edge(i).b);
    for (size_t i = 0; i < p.size(); ++i) {
        Segment e = p.edge(i);
        int m = std::max(1, int(std::round(n * dist(e.a, e.b) / total)));
        for (int t = 0; t < m; ++t) out.push_back(e.a + (e.b - e.a) * (double(t) / m));
    }
    return out;
}

// Entry/exit intervals of a ray against one convex piece.
std::optional<std::pair<double, double>> ray_interval(const Ray& r, const StarPiece& piece) {
    if (const auto* e = piece.ellipse()) {
        auto ts = ray_ellipse_hits(r, *e);
        if (ts.empty()) return std::nullopt;
        double hi = ts.back();
        double lo = e->contains(r.origin) ? 0.0 : ts.front();
        return std::make_pair(lo, hi);
    }
    auto hits = ray_polygon_hits(r, piece.polygon()->poly);
    if (hits.empty()) return std::nullopt;
    double hi = hits.back().param;
    double lo = in_polygon(piece.polygon()->poly, r.origin) ? 0.0 : hits.front().param;
    return std::make_pair(lo, hi);
}

}  // namespace

std::string ValidationReport::to_string() const {
    std::ostringstream os;
    os << "coverage=" << (coverage_ok ? "pass" : "fail") << "\n"
       << "strictness=" << (strictness_ok ? "pass" : "fail") << "\n"
       << "robot_excluded=" << (robot_excluded ? "pass" : "fail") << "\n"
       << "goal_excluded=" << (goal_excluded ? "pass" : "fail") << "\n"
       << "disjoint=" << (fallback ? "skipped" : (disjoint_ok ? "pass" : "fail")) << "\n"
       << "stars=" << stars << "\n"
       << "iterations=" << iterations << "\n"
       << "status=" << (fallback ? "intersecting-fallback" : "disjoint") << "\n"
       << "result=" << (pass() ? "pass" : "fail") << "\n";
    return os.str();
}

ValidationReport validate_star_world(const StarWorld& world, const std::vector<Obstacle>& obstacles,
                                     const Point2& x, const Point2& x_g, int boundary_samples_n,
                                     int rays) {
    ValidationReport rep;
    rep.stars = int(world.obstacles.size());
    rep.iterations = world.iterations;
    rep.fallback = world.status == StarWorld::Status::IntersectingFallback;

    // (2a) every original obstacle is covered by the union of its stars.
    for (const auto& o : obstacles) {
        auto it = world.cluster_map.find(o.id);
        if (it == world.cluster_map.end()) { rep.coverage_ok = false; break; }
        for (const auto& q : boundary_samples(o.shape, boundary_samples_n)) {
            bool inside = false;
            for (size_t si : it->second)
                if (world.obstacles[si].contains(q, 1e-7)) { inside = true; break; }
            if (!inside) { rep.coverage_ok = false; break; }
        }
        if (!rep.coverage_ok) break;
    }

    // (2b) strict starshapedness: along every ray from the kernel centroid the
    // covered set is a single interval from the origin.
    for (const auto& star : world.obstacles) {
        Point2 c = star.kernel_centroid();
        double scale = std::max(1.0, star.bbox().diameter());
        for (int d = 0; d < rays; ++d) {
            double a = 2.0 * M_PI * d / rays;
            Ray r{c, {std::cos(a), std::sin(a)}};
            std::vector<std::pair<double, double>> ivals;
            for (const auto& piece : star.pieces)
                if (auto iv = ray_interval(r, piece)) ivals.push_back(*iv);
            if (ivals.empty()) { rep.strictness_ok = false; break; }
            std::sort(ivals.begin(), ivals.end());
            double tol = 1e-7 * scale;
            if (ivals[0].first > tol) { rep.strictness_ok = false; break; }
            double reach = ivals[0].second;
            for (const auto& iv : ivals) {
                if (iv.first > reach + tol) { rep.strictness_ok = false; break; }
                reach = std::max(reach, iv.second);
            }
            if (!rep.strictness_ok) break;
        }
        if (!rep.strictness_ok) break;
    }

    // (2c)/(2d) robot and goal excluded from every star obstacle.
    for (const auto& star : world.obstacles) {
        if (star.contains(x)) rep.robot_excluded = false;
        if (star.contains(x_g)) rep.goal_excluded = false;
    }

    // (2e) pairwise disjoint, required only for the disjoint status.
    if (!rep.fallback) {
        std::vector<std::vector<ConvexPolygon>> polys;
        for (const auto& s : world.obstacles) polys.push_back(piece_polygons(s));
        for (size_t i = 0; i < polys.size() && rep.disjoint_ok; ++i)
            for (size_t j = i + 1; j < polys.size() && rep.disjoint_ok; ++j)
                for (const auto& pi : polys[i]) {
                    for (const auto& pj : polys[j])
                        if (convex_pieces_intersect(pi, pj)) { rep.disjoint_ok = false; break; }
                    if (!rep.disjoint_ok) break;
                }
    }
    return rep;
}

}  // namespace starworlds::starworld
