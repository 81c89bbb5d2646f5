#include <algorithm>
#include <cmath>

#include "starworlds/errors.hpp"
#include "starworlds/geom/ops.hpp"

namespace starworlds::geom {

ConvexPolygon convex_hull(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return dist(a, b) <= eps_for(std::max(a.norm(), b.norm()));
    }), pts.end());
    if (pts.size() < 3) throw DegenerateHull("fewer than 3 distinct points");

    auto build = [&](auto begin, auto end, std::vector<Point2>& chain) {
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   orient(chain[chain.size() - 2], chain.back(), *it) != Orientation::CCW)
                chain.pop_back();
            chain.push_back(*it);
        }
    };
    std::vector<Point2> lower, upper;
    build(pts.begin(), pts.end(), lower);
    build(pts.rbegin(), pts.rend(), upper);
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) throw DegenerateHull("all points collinear");
    return ConvexPolygon{SimplePolygon{std::move(lower)}};
}

SimplePolygon clip_halfplane(const SimplePolygon& poly, const Point2& p0, const Vec2& n) {
    SimplePolygon out;
    const size_t m = poly.size();
    if (m == 0) return out;
    double nn = std::max(n.norm(), 1e-300);
    auto sd = [&](const Point2& q) { return (q - p0).dot(n) / nn; };
    for (size_t i = 0; i < m; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % m];
        double da = sd(a), db = sd(b);
        double tol = eps_for(std::max(dist(a, p0), dist(b, p0)));
        bool ia = da >= -tol, ib = db >= -tol;
        if (ia) out.v.push_back(a);
        if (ia != ib && std::abs(da - db) > 1e-300) {
            double t = da / (da - db);
            out.v.push_back(a + (b - a) * t);
        }
    }
    // Deduplicate consecutive near-equal vertices.
    std::vector<Point2> dedup;
    for (const auto& q : out.v) {
        if (!dedup.empty() && dist(dedup.back(), q) <= eps_for(q.norm())) continue;
        dedup.push_back(q);
    }
    while (dedup.size() > 1 && dist(dedup.front(), dedup.back()) <= eps_for(dedup.front().norm()))
        dedup.pop_back();
    out.v = std::move(dedup);
    if (out.v.size() < 3) out.v.clear();
    return out;
}

std::optional<ConvexPolygon> polygon_kernel(const SimplePolygon& p) {
    AABB box = p.bbox();
    double pad = 1e-3 * std::max(1.0, box.diameter());
    box = box.inflated(pad);
    SimplePolygon region{{{box.lo.x, box.lo.y}, {box.hi.x, box.lo.y}, {box.hi.x, box.hi.y}, {box.lo.x, box.hi.y}}};
    for (size_t i = 0; i < p.size() && !region.v.empty(); ++i) {
        Segment e = p.edge(i);
        region = clip_halfplane(region, e.a, (e.b - e.a).perp());
    }
    if (region.v.size() < 3) return std::nullopt;
    double min_area = std::pow(kEps * std::max(1.0, box.diameter()), 2);
    if (region.area() <= min_area) return std::nullopt;
    return ConvexPolygon{std::move(region)};
}

bool in_polygon_kernel(const SimplePolygon& p, const Point2& x) {
    for (size_t i = 0; i < p.size(); ++i) {
        Segment e = p.edge(i);
        Vec2 d = e.b - e.a;
        double cr = d.cross(x - e.a);
        if (cr < -eps_for(d.norm() * (x - e.a).norm())) return false;
    }
    return true;
}

// ---- angular sweep over arcs ----

namespace {

struct Gap {
    double start;
    double width;
};

// Maximal uncovered intervals of the circle, widest first.
std::vector<Gap> find_gaps(const std::vector<Arc>& arcs) {
    constexpr double tol = 1e-12;
    for (const auto& a : arcs)
        if (a.width >= 2.0 * M_PI - tol) return {};
    if (arcs.empty()) return {{0.0, 2.0 * M_PI}};

    struct Ev {
        double ang;
        int delta;
    };
    std::vector<Ev> evs;
    int at_zero = 0;
    for (const auto& a : arcs) {
        double s = angle_norm(a.start);
        double e = s + a.width;
        evs.push_back({s, +1});
        if (e >= 2.0 * M_PI) {
            ++at_zero;
            evs.push_back({e - 2.0 * M_PI, -1});
        } else {
            evs.push_back({e, -1});
        }
        if (s <= tol) { /* start at zero already counted by sweep order below */ }
    }
    std::sort(evs.begin(), evs.end(), [](const Ev& a, const Ev& b) {
        if (a.ang != b.ang) return a.ang < b.ang;
        return a.delta > b.delta;  // opens before closes at identical angle
    });
    std::vector<Gap> gaps;
    int cover = at_zero;
    double prev = 0.0;
    for (const auto& ev : evs) {
        if (cover == 0 && ev.ang - prev > tol) gaps.push_back({prev, ev.ang - prev});
        cover += ev.delta;
        prev = ev.ang;
    }
    if (cover == 0 && 2.0 * M_PI - prev > tol) gaps.push_back({prev, 2.0 * M_PI - prev});
    // Merge a gap wrapping across zero.
    if (gaps.size() >= 2 && gaps.front().start <= tol &&
        gaps.back().start + gaps.back().width >= 2.0 * M_PI - tol) {
        gaps.back().width += gaps.front().width;
        gaps.erase(gaps.begin());
    }
    std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) { return a.width > b.width; });
    return gaps;
}

}  // namespace

bool arcs_cover_circle(std::vector<Arc> arcs) {
    auto gaps = find_gaps(arcs);
    // Hairline gaps from roundoff do not count as an escape direction.
    return gaps.empty() || gaps.front().width <= 1e-9;
}

std::optional<Arc> blocked_arc(const Shape& s, const Point2& x) {
    if (const auto* e = std::get_if<Ellipse>(&s)) {
        auto [t1, t2] = tangent_points_ellipse(*e, x);
        double a1 = (t1 - x).angle();  // blocked arc end
        double a2 = (t2 - x).angle();  // blocked arc start
        return Arc{angle_norm(a2), angle_norm(a1 - a2)};
    }
    const auto& p = std::get<SimplePolygon>(s);
    std::vector<Arc> arcs;
    arcs.reserve(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Segment e = p.edge(i);
        double aa = (e.a - x).angle();
        double ab = (e.b - x).angle();
        double d = std::remainder(ab - aa, 2.0 * M_PI);
        if (d >= 0)
            arcs.push_back({angle_norm(aa), d});
        else
            arcs.push_back({angle_norm(ab), -d});
    }
    auto gaps = find_gaps(arcs);
    if (gaps.empty() || gaps.front().width <= 1e-9) return std::nullopt;
    const Gap& g = gaps.front();
    return Arc{angle_norm(g.start + g.width), 2.0 * M_PI - g.width};
}

std::pair<Point2, Point2> tangent_points_polygon(const SimplePolygon& p, const Point2& x) {
    if (in_polygon(p, x)) throw NotFreeExterior("point is inside the polygon");
    auto arc = blocked_arc(Shape{p}, x);
    if (!arc) throw NotFreeExterior("point is surrounded by the polygon");
    double a_min = arc->start;               // minimum polar angle -> t2
    double a_max = angle_norm(arc->start + arc->width);  // maximum polar angle -> t1
    auto pick = [&](double target) {
        const Point2* best = nullptr;
        double best_d2 = -1.0;
        for (const auto& v : p.v) {
            double ang = angle_norm((v - x).angle());
            double diff = std::abs(std::remainder(ang - target, 2.0 * M_PI));
            if (diff <= 1e-9) {
                double d2 = (v - x).norm2();
                if (d2 > best_d2) { best_d2 = d2; best = &v; }
            }
        }
        return best;
    };
    const Point2* t2 = pick(a_min);
    const Point2* t1 = pick(a_max);
    if (!t1 || !t2) throw NotFreeExterior("no tangent vertex found");
    return {*t1, *t2};
}

std::pair<Point2, Point2> tangent_points_ellipse(const Ellipse& e, const Point2& x) {
    Point2 q = e.to_circle(x);
    double d2 = q.norm2();
    if (d2 <= 1.0 + eps_for(1.0)) throw PointInsideShape("point not strictly exterior to ellipse");
    Point2 base = q / d2;
    Vec2 off = q.perp() * (std::sqrt(d2 - 1.0) / d2);
    Point2 ta = e.from_circle(base + off);
    Point2 tb = e.from_circle(base - off);
    // Order so that (x, t1, t2) is CW.
    if (orient(x, ta, tb) == Orientation::CW) return {ta, tb};
    return {tb, ta};
}

PointClass classify_point(const std::vector<Shape>& shapes, const Point2& x) {
    std::vector<Arc> arcs;
    for (const auto& s : shapes) {
        if (point_in_shape(s, x)) return PointClass::Inside;
        auto arc = blocked_arc(s, x);
        if (!arc) return PointClass::BoundedExterior;
        arcs.push_back(*arc);
    }
    return arcs_cover_circle(std::move(arcs)) ? PointClass::BoundedExterior
                                              : PointClass::FreeExterior;
}

bool convex_pieces_intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
    auto separated_by = [](const ConvexPolygon& edges_of, const ConvexPolygon& pa,
                           const ConvexPolygon& pb) {
        for (size_t i = 0; i < edges_of.size(); ++i) {
            Segment e = edges_of.poly.edge(i);
            Vec2 axis = (e.b - e.a).perp();
            double an = axis.norm();
            if (an < 1e-300) continue;
            axis = axis / an;
            double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
            double scale = 0;
            for (const auto& p : pa.verts()) {
                double d = p.dot(axis);
                amin = std::min(amin, d); amax = std::max(amax, d);
                scale = std::max(scale, std::abs(d));
            }
            for (const auto& p : pb.verts()) {
                double d = p.dot(axis);
                bmin = std::min(bmin, d); bmax = std::max(bmax, d);
                scale = std::max(scale, std::abs(d));
            }
            if (bmin - amax > eps_for(scale) || amin - bmax > eps_for(scale)) return true;
        }
        return false;
    };
    if (separated_by(a, a, b)) return false;
    if (separated_by(b, a, b)) return false;
    return true;
}

Vec2 principal_axis(const std::vector<Point2>& pts) {
    if (pts.size() < 2) return {1, 0};
    Vec2 mean{0, 0};
    for (const auto& p : pts) mean += p;
    mean = mean / double(pts.size());
    double cxx = 0, cxy = 0, cyy = 0;
    for (const auto& p : pts) {
        Vec2 d = p - mean;
        cxx += d.x * d.x;
        cxy += d.x * d.y;
        cyy += d.y * d.y;
    }
    if (cxx + cyy < 1e-300) return {1, 0};
    double theta = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
    return {std::cos(theta), std::sin(theta)};
}

}  // namespace starworlds::geom
