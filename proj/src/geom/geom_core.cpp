#include <algorithm>
#include <cmath>
#include <limits>

#include "starworlds/errors.hpp"
#include "starworlds/geom/ops.hpp"

namespace starworlds::geom {

Orientation orient(const Point2& a, const Point2& b, const Point2& c) {
    Vec2 u = b - a, w = c - a;
    double cr = u.cross(w);
    double tol = eps_for(u.norm() * w.norm());
    if (cr > tol) return Orientation::CCW;
    if (cr < -tol) return Orientation::CW;
    return Orientation::Collinear;
}

static double point_segment_dist(const Point2& q, const Point2& a, const Point2& b) {
    Vec2 ab = b - a;
    double len2 = ab.norm2();
    if (len2 < 1e-300) return dist(q, a);
    double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
    return dist(q, a + ab * t);
}

Location locate_point(const SimplePolygon& p, const Point2& q) {
    const size_t n = p.size();
    double scale = std::max(std::abs(q.x), std::abs(q.y));
    for (size_t i = 0; i < n; ++i) {
        Segment e = p.edge(i);
        double s = std::max({scale, std::abs(e.a.x), std::abs(e.a.y), std::abs(e.b.x), std::abs(e.b.y)});
        if (point_segment_dist(q, e.a, e.b) <= eps_for(s)) return Location::OnBoundary;
    }
    // Crossing parity with the half-open rule on y.
    bool inside = false;
    for (size_t i = 0; i < n; ++i) {
        const Point2& a = p[i];
        const Point2& b = p[(i + 1) % n];
        if ((a.y > q.y) != (b.y > q.y)) {
            double xi = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (q.x < xi) inside = !inside;
        }
    }
    return inside ? Location::Inside : Location::Outside;
}

bool is_simple(const SimplePolygon& p) {
    const size_t n = p.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i) {
        Segment ei = p.edge(i);
        for (size_t j = i + 1; j < n; ++j) {
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            Segment ej = p.edge(j);
            Vec2 d1 = ei.b - ei.a, d2 = ej.b - ej.a;
            double den = d1.cross(d2);
            double tol = eps_for(d1.norm() * d2.norm());
            if (std::abs(den) <= tol) {
                if (adjacent) {
                    // Collinear adjacent edges that double back overlap.
                    if (d1.normalized().dot(d2.normalized()) < -0.5) return false;
                    continue;
                }
                // Parallel: overlap iff collinear and ranges intersect.
                if (std::abs((ej.a - ei.a).cross(d1)) > eps_for(d1.norm() * (ej.a - ei.a).norm())) continue;
                double lo1 = 0, hi1 = d1.norm2();
                double ta = (ej.a - ei.a).dot(d1), tb = (ej.b - ei.a).dot(d1);
                if (std::max(std::min(ta, tb), lo1) <= std::min(std::max(ta, tb), hi1) - tol) return false;
                continue;
            }
            double t = (ej.a - ei.a).cross(d2) / den;
            double s = (ej.a - ei.a).cross(d1) / den;
            double pt = 1e-12;
            if (adjacent) {
                // Shared endpoint is fine; anything else is a crossing.
                bool at_shared = (j == i + 1) ? (t > 1 - 1e-9 || s < 1e-9)
                                              : (t < 1e-9 || s > 1 - 1e-9);
                if (!at_shared && t > pt && t < 1 - pt && s > pt && s < 1 - pt) return false;
            } else if (t >= -pt && t <= 1 + pt && s >= -pt && s <= 1 + pt) {
                return false;
            }
        }
    }
    return true;
}

SimplePolygon make_simple_polygon(std::vector<Point2> verts, bool allow_cw_fix) {
    for (const auto& p : verts)
        if (!p.finite()) throw MalformedInput("polygon vertex is not finite");
    // Drop consecutive duplicates (within tolerance), including wrap-around.
    std::vector<Point2> out;
    for (const auto& p : verts) {
        if (!out.empty() && dist(out.back(), p) <= eps_for(std::max(p.norm(), out.back().norm()))) continue;
        out.push_back(p);
    }
    while (out.size() > 1 && dist(out.front(), out.back()) <= eps_for(out.front().norm())) out.pop_back();
    if (out.size() < 3) throw MalformedInput("polygon needs at least 3 distinct vertices");
    SimplePolygon poly{std::move(out)};
    if (poly.signed_area() < 0) {
        if (!allow_cw_fix) throw MalformedInput("polygon vertices must be in CCW order");
        std::reverse(poly.v.begin(), poly.v.end());
    }
    if (poly.signed_area() <= 0) throw MalformedInput("polygon has nonpositive area");
    if (!is_simple(poly)) throw MalformedInput("polygon is self-intersecting");
    return poly;
}

bool is_convex(const SimplePolygon& p) {
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
        if (orient(p.at_wrapped(long(i) - 1), p[i], p[(i + 1) % n]) == Orientation::CW) return false;
    }
    return true;
}

std::vector<RayHit> ray_polygon_hits(const Ray& r, const SimplePolygon& p) {
    std::vector<double> ts;
    const double dn = r.dir.norm();
    const size_t n = p.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& a = p[i];
        const Point2& b = p[(i + 1) % n];
        Vec2 ab = b - a;
        double den = r.dir.cross(ab);
        double tol = eps_for(dn * ab.norm());
        Vec2 ao = a - r.origin;
        if (std::abs(den) <= tol) {
            // Parallel; collinear overlap contributes its endpoints.
            if (std::abs(ao.cross(r.dir)) <= eps_for(ao.norm() * dn)) {
                double ta = ao.dot(r.dir) / (dn * dn);
                double tb = (b - r.origin).dot(r.dir) / (dn * dn);
                if (ta >= -kEps) ts.push_back(std::max(ta, 0.0));
                if (tb >= -kEps) ts.push_back(std::max(tb, 0.0));
            }
            continue;
        }
        double t = ao.cross(ab) / den;
        double s = ao.cross(r.dir) / den;
        // Half-open in s: the edge owns its start vertex.
        if (t >= -eps_for(1.0) / std::max(dn, 1e-30) && s >= -1e-9 && s < 1.0 - 1e-9)
            ts.push_back(std::max(t, 0.0));
    }
    std::sort(ts.begin(), ts.end());
    std::vector<RayHit> hits;
    const double ptol = eps_for(dn) / std::max(dn * dn, 1e-30) + 1e-12;
    for (double t : ts) {
        if (!hits.empty() && t - hits.back().param <= ptol) continue;
        hits.push_back({t, r.origin + r.dir * t});
    }
    return hits;
}

bool ray_hits_interior(const Ray& r, const SimplePolygon& p, double t_lo, double t_hi) {
    auto hits = ray_polygon_hits(r, p);
    std::vector<double> cuts;
    cuts.push_back(t_lo);
    for (const auto& h : hits)
        if (h.param > t_lo && h.param < t_hi) cuts.push_back(h.param);
    if (std::isfinite(t_hi)) {
        cuts.push_back(t_hi);
    } else {
        // One probe beyond the last crossing reaches the unbounded side.
        double beyond = (cuts.back() + 1.0) * 2.0 + 1.0;
        AABB box = p.bbox();
        double dn = std::max(r.dir.norm(), 1e-30);
        beyond = std::max(beyond, (box.diameter() + dist(r.origin, box.center())) / dn + 1.0);
        cuts.push_back(beyond);
    }
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double tm = 0.5 * (cuts[i] + cuts[i + 1]);
        if (tm <= t_lo || tm >= t_hi) continue;
        if (locate_point(p, r.origin + r.dir * tm) == Location::Inside) return true;
    }
    return false;
}

std::vector<double> ray_ellipse_hits(const Ray& r, const Ellipse& e) {
    Point2 o = e.to_circle(r.origin);
    Vec2 d = e.dir_to_circle(r.dir);
    double A = d.norm2();
    double B = 2.0 * o.dot(d);
    double C = o.norm2() - 1.0;
    std::vector<double> out;
    if (A < 1e-300) return out;
    double disc = B * B - 4 * A * C;
    if (disc < 0) return out;
    double sq = std::sqrt(disc);
    for (double t : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
        if (t >= -kEps) out.push_back(std::max(t, 0.0));
    return out;
}

bool point_in_shape(const Shape& s, const Point2& p, double tol) {
    if (const auto* e = std::get_if<Ellipse>(&s)) return e->contains(p, tol);
    return in_polygon(std::get<SimplePolygon>(s), p);
}

SimplePolygon ellipse_to_polygon(const Ellipse& e, int n) {
    SimplePolygon p;
    p.v.reserve(n);
    for (int i = 0; i < n; ++i) {
        double phi = 2.0 * M_PI * i / n;
        p.v.push_back(e.from_circle({std::cos(phi), std::sin(phi)}));
    }
    return p;
}

std::optional<double> ray_exit_param(const Ray& r, const ConvexPolygon& c) {
    auto hits = ray_polygon_hits(r, c.poly);
    if (hits.empty()) {
        // Fully inside convex piece cannot happen for an infinite ray; a miss.
        return std::nullopt;
    }
    double t = hits.back().param;
    // A single grazing touch is not a pass-through exit unless origin is inside.
    if (hits.size() == 1 && locate_point(c.poly, r.origin) == Location::Outside) {
        double mid = hits[0].param;
        Point2 probe = r.origin + r.dir * (mid * 0.5);
        if (locate_point(c.poly, probe) == Location::Outside) return t;
    }
    return t;
}

std::optional<double> ray_exit_param(const Ray& r, const Ellipse& e) {
    auto ts = ray_ellipse_hits(r, e);
    if (ts.empty()) return std::nullopt;
    return ts.back();
}

double angle_norm(double a) {
    a = std::fmod(a, 2.0 * M_PI);
    if (a < 0) a += 2.0 * M_PI;
    return a;
}

}  // namespace starworlds::geom
