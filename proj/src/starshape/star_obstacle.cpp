#include <algorithm>
#include <cmath>

#include "starworlds/errors.hpp"
#include "starworlds/starshape/starshape.hpp"

namespace starworlds::starshape {

using namespace geom;

bool StarObstacle::contains(const Point2& p, double tol) const {
    for (const auto& piece : pieces) {
        if (const auto* e = piece.ellipse()) {
            if (e->contains(p, tol)) return true;
        } else if (in_polygon(piece.polygon()->poly, p)) {
            return true;
        }
    }
    return false;
}

AABB StarObstacle::bbox() const {
    AABB box;
    bool first = true;
    for (const auto& piece : pieces) {
        AABB b = piece.ellipse() ? piece.ellipse()->bbox() : piece.polygon()->poly.bbox();
        if (first) { box = b; first = false; } else { box.expand(b); }
    }
    return box;
}

static bool point_in_hull_of(const std::vector<Point2>& hull, const Point2& p) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return dist(hull[0], p) <= eps_for(std::max(1.0, hull[0].norm()));
    if (hull.size() == 2) {
        Vec2 d = hull[1] - hull[0];
        double t = std::clamp((p - hull[0]).dot(d) / std::max(d.norm2(), 1e-300), 0.0, 1.0);
        return dist(p, hull[0] + d * t) <= eps_for(std::max(1.0, p.norm()));
    }
    SimplePolygon poly{hull};
    return in_polygon(poly, p);
}

double star_boundary_param(const StarObstacle& s, const Point2& origin, const Vec2& dir) {
    if (!point_in_hull_of(s.kernel_hull, origin))
        throw OriginOutsideKernel("ray origin is not in the kernel hull");
    Ray r{origin, dir};
    double best = -1.0;
    for (const auto& piece : s.pieces) {
        std::optional<double> t = piece.ellipse() ? ray_exit_param(r, *piece.ellipse())
                                                  : ray_exit_param(r, *piece.polygon());
        if (t && *t > best) best = *t;
    }
    if (best < 0) throw OriginOutsideKernel("ray does not leave any piece");
    return best;
}

Point2 star_boundary_ray(const StarObstacle& s, const Point2& origin, const Vec2& dir) {
    return origin + dir * star_boundary_param(s, origin, dir);
}

const SimplePolygon& StarObstacle::boundary(int n) const {
    if (!boundary_cache) {
        Point2 c = kernel_centroid();
        SimplePolygon poly;
        poly.v.reserve(n);
        for (int i = 0; i < n; ++i) {
            double a = 2.0 * M_PI * i / n;
            Vec2 d{std::cos(a), std::sin(a)};
            poly.v.push_back(star_boundary_ray(*this, c, d));
        }
        boundary_cache = std::move(poly);
    }
    return *boundary_cache;
}

bool is_starshaped_wrt(const SimplePolygon& p, const Point2& x) {
    return in_polygon_kernel(p, x);
}

static std::vector<Point2> hull_points_or_all(std::vector<Point2> pts) {
    if (pts.size() < 3) return pts;
    try {
        return convex_hull(pts).poly.v;
    } catch (const DegenerateHull&) {
        return pts;
    }
}

static bool in_convex_shape(const ConvexShape& a, const Point2& p) {
    if (const auto* e = std::get_if<Ellipse>(&a)) return e->contains(p);
    return in_polygon(std::get<ConvexPolygon>(a).poly, p);
}

static StarPiece original_piece(const ConvexShape& a) {
    if (const auto* e = std::get_if<Ellipse>(&a))
        return {StarPiece::Kind::OriginalConvex, *e};
    return {StarPiece::Kind::OriginalConvex, std::get<ConvexPolygon>(a)};
}

static std::pair<Point2, Point2> tangents_of(const ConvexShape& a, const Point2& x) {
    if (const auto* e = std::get_if<Ellipse>(&a)) return tangent_points_ellipse(*e, x);
    return tangent_points_polygon(std::get<ConvexPolygon>(a).poly, x);
}

StarObstacle sh_point_convex(const ConvexShape& a, const Point2& x) {
    StarObstacle s;
    s.kernel_spec = KernelSpec{{x}};
    s.kernel_hull = {x};
    s.pieces.push_back(original_piece(a));
    if (!in_convex_shape(a, x)) {
        auto [t1, t2] = tangents_of(a, x);
        s.pieces.push_back({StarPiece::Kind::TangentCone, convex_hull({x, t1, t2})});
    }
    return s;
}

StarObstacle sh_kernel_convex(const ConvexShape& a, const KernelSpec& k) {
    StarObstacle s;
    s.kernel_spec = k;
    s.kernel_hull = hull_points_or_all(k.points);
    s.pieces.push_back(original_piece(a));
    std::vector<Point2> cone_pts;
    for (const auto& kp : k.points) {
        if (in_convex_shape(a, kp)) continue;
        auto [t1, t2] = tangents_of(a, kp);
        cone_pts.push_back(kp);
        cone_pts.push_back(t1);
        cone_pts.push_back(t2);
    }
    if (!cone_pts.empty() && cone_pts.size() >= 3) {
        try {
            s.pieces.push_back({StarPiece::Kind::TangentCone, convex_hull(cone_pts)});
        } catch (const DegenerateHull&) {
            // All tangency data collinear; the shape piece already covers it.
        }
    }
    return s;
}

std::vector<ConvexPolygon> kernel_hull_pieces(const SimplePolygon& p, const KernelSpec& k) {
    std::vector<ConvexPolygon> pieces;
    pieces.reserve(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Segment e = p.edge(i);
        std::vector<Point2> pts = k.points;
        pts.push_back(e.a);
        pts.push_back(e.b);
        try {
            pieces.push_back(convex_hull(pts));
        } catch (const DegenerateHull&) {
            // Edge collinear with all kernel points; contributes no area.
        }
    }
    return pieces;
}

SimplePolygon star_union_boundary(const std::vector<ConvexPolygon>& pieces, const Point2& c) {
    double diam = 0.0;
    std::vector<Point2> cands;
    for (const auto& piece : pieces) {
        for (const auto& v : piece.verts()) {
            cands.push_back(v);
            diam = std::max(diam, dist(v, c));
        }
    }
    for (size_t i = 0; i < pieces.size(); ++i) {
        for (size_t j = i + 1; j < pieces.size(); ++j) {
            const auto& pa = pieces[i].poly;
            const auto& pb = pieces[j].poly;
            for (size_t ei = 0; ei < pa.size(); ++ei) {
                Segment sa = pa.edge(ei);
                for (size_t ej = 0; ej < pb.size(); ++ej) {
                    Segment sb = pb.edge(ej);
                    Vec2 d1 = sa.b - sa.a, d2 = sb.b - sb.a;
                    double den = d1.cross(d2);
                    if (std::abs(den) <= eps_for(d1.norm() * d2.norm())) continue;
                    double t = (sb.a - sa.a).cross(d2) / den;
                    double u = (sb.a - sa.a).cross(d1) / den;
                    if (t < -1e-12 || t > 1 + 1e-12 || u < -1e-12 || u > 1 + 1e-12) continue;
                    cands.push_back(sa.a + d1 * t);
                }
            }
        }
    }
    // Keep radially extreme candidates: a point on the union boundary has no
    // union point just beyond it along the ray from c.
    double step = 1e-7 * std::max(1.0, diam);
    std::vector<Point2> boundary;
    for (const auto& q : cands) {
        Vec2 d = q - c;
        double dn = d.norm();
        if (dn < 1e-12) continue;
        Point2 probe = q + d * (step / dn);
        bool covered = false;
        for (const auto& piece : pieces) {
            if (locate_point(piece.poly, probe) == Location::Inside) { covered = true; break; }
        }
        if (!covered) boundary.push_back(q);
    }
    std::sort(boundary.begin(), boundary.end(), [&](const Point2& a, const Point2& b) {
        return angle_norm((a - c).angle()) < angle_norm((b - c).angle());
    });
    // Same direction within tolerance: keep the farthest.
    SimplePolygon out;
    for (const auto& q : boundary) {
        if (!out.v.empty()) {
            double da = angle_norm((q - c).angle()) - angle_norm((out.v.back() - c).angle());
            if (std::abs(da) <= 1e-10) {
                if ((q - c).norm2() > (out.v.back() - c).norm2()) out.v.back() = q;
                continue;
            }
            if (dist(out.v.back(), q) <= eps_for(std::max(1.0, q.norm()))) continue;
        }
        out.v.push_back(q);
    }
    while (out.v.size() > 1 &&
           dist(out.v.front(), out.v.back()) <= eps_for(std::max(1.0, out.v.front().norm())))
        out.v.pop_back();
    return out;
}

StarObstacle star_obstacle_from_polygon(const SimplePolygon& p, const KernelSpec& k) {
    StarPolygon sp = sh_kernel_polygon(p, k);
    StarObstacle s;
    s.kernel_spec = k;
    s.kernel_hull = hull_points_or_all(k.points);
    if (sp.fallback_boundary) {
        for (auto& piece : kernel_hull_pieces(p, k))
            s.pieces.push_back({StarPiece::Kind::TangentCone, std::move(piece)});
        s.boundary_cache = sp.vertices;
        return s;
    }
    // Fan triangulation from the kernel centroid; valid since the hull is
    // starshaped w.r.t. every point of CH(K).
    Point2 c = k.centroid();
    const auto& v = sp.vertices.v;
    for (size_t i = 0; i < v.size(); ++i) {
        const Point2& a = v[i];
        const Point2& b = v[(i + 1) % v.size()];
        if (orient(c, a, b) != Orientation::CCW) continue;  // degenerate sliver
        s.pieces.push_back({StarPiece::Kind::TangentCone,
                            ConvexPolygon{SimplePolygon{{c, a, b}}}});
    }
    s.boundary_cache = sp.vertices;
    return s;
}

StarObstacle merge_star_obstacles(std::vector<StarObstacle> parts, KernelSpec k) {
    StarObstacle s;
    s.kernel_spec = k;
    s.kernel_hull = hull_points_or_all(s.kernel_spec.points);
    for (auto& part : parts)
        for (auto& piece : part.pieces) s.pieces.push_back(std::move(piece));
    return s;
}

bool shape_is_convex(const geom::Shape& s) {
    if (std::holds_alternative<Ellipse>(s)) return true;
    return is_convex(std::get<SimplePolygon>(s));
}

StarObstacle sh_kernel_shape(const geom::Shape& s, const KernelSpec& k) {
    if (const auto* e = std::get_if<Ellipse>(&s)) return sh_kernel_convex(*e, k);
    const auto& poly = std::get<SimplePolygon>(s);
    if (is_convex(poly)) return sh_kernel_convex(ConvexPolygon{poly}, k);
    return star_obstacle_from_polygon(poly, k);
}

}  // namespace starworlds::starshape
