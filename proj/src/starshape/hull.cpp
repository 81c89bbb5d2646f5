#include <algorithm>
#include <cmath>

#include "starworlds/errors.hpp"
#include "starworlds/log.hpp"
#include "starworlds/starshape/starshape.hpp"

namespace starworlds::starshape {

using namespace geom;

namespace {

// Indices of the kernel points whose shadow directions (q - k) bound the
// wedge of all shadow directions from q. Only these can carry a boundary
// edge through q.
std::vector<size_t> extreme_kernel_indices(const std::vector<Point2>& ks, const Point2& q) {
    std::vector<size_t> out;
    const size_t m = ks.size();
    if (m <= 2) {
        for (size_t i = 0; i < m; ++i) out.push_back(i);
        return out;
    }
    for (size_t i = 0; i < m; ++i) {
        Vec2 di = q - ks[i];
        if (di.norm() <= eps_for(q.norm())) continue;
        bool all_ccw = true, all_cw = true;
        for (size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            Vec2 dj = q - ks[j];
            double cr = di.cross(dj);
            double tol = eps_for(di.norm() * dj.norm());
            if (cr < -tol) all_ccw = false;
            if (cr > tol) all_cw = false;
        }
        if (all_ccw || all_cw) out.push_back(i);
    }
    if (out.empty())  // q inside CH(K): no bounding direction
        for (size_t i = 0; i < m; ++i) out.push_back(i);
    return out;
}

bool ray_free(const Point2& origin, const Vec2& dir, const SimplePolygon& p) {
    if (dir.norm() <= eps_for(origin.norm())) return true;
    return !ray_hits_interior(Ray{origin, dir}, p);
}

// Boundary crossings of the segment k -> v strictly between the endpoints.
std::vector<RayHit> crossings_before(const Point2& k, const Point2& v, const SimplePolygon& p) {
    Vec2 d = v - k;
    std::vector<RayHit> out;
    if (d.norm() <= eps_for(v.norm())) return out;
    double sep = eps_for(std::max({1.0, k.norm(), v.norm()}));
    for (const auto& h : ray_polygon_hits(Ray{k, d}, p)) {
        if (h.param >= 1.0) break;
        if (dist(h.point, v) <= sep || dist(h.point, k) <= sep) continue;
        out.push_back(h);
    }
    return out;
}

// Proper interior crossing point of two segments, if any.
std::optional<Point2> proper_cross(const Segment& s1, const Segment& s2) {
    Vec2 d1 = s1.b - s1.a, d2 = s2.b - s2.a;
    double den = d1.cross(d2);
    if (std::abs(den) <= eps_for(d1.norm() * d2.norm())) return std::nullopt;
    double t = (s2.a - s1.a).cross(d2) / den;
    double u = (s2.a - s1.a).cross(d1) / den;
    double tol = 1e-9;
    if (t <= tol || t >= 1 - tol || u <= tol || u >= 1 - tol) return std::nullopt;
    return s1.a + d1 * t;
}

bool near(const Point2& a, const Point2& b) {
    return dist(a, b) <= eps_for(std::max({1.0, a.norm(), b.norm()}));
}

struct Validation {
    bool ok = true;
    const char* why = "";
};

// The walked polygon must be a simple CCW polygon that contains P, keeps K in
// its kernel, and matches the exact region P u U_e CH(K u e) on a sample of
// probe points (the vertex walk has no way to synthesize wedge apexes when
// every kernel point sees both walls of a concavity, so equality must be
// checked, not assumed).
Validation validate_hull(const SimplePolygon& out, const SimplePolygon& p, const KernelSpec& k,
                         const std::vector<ConvexPolygon>& pieces) {
    if (out.size() < 3) return {false, "fewer than 3 vertices"};
    if (out.signed_area() <= 0) return {false, "not CCW"};
    if (!is_simple(out)) return {false, "self-intersecting"};
    for (const auto& kp : k.points)
        if (!in_polygon_kernel(out, kp)) return {false, "K not in kernel"};
    for (const auto& v : p.v)
        if (locate_point(out, v) == Location::Outside) return {false, "input not covered"};

    auto in_union = [&](const Point2& q) {
        if (in_polygon(p, q)) return true;
        for (const auto& piece : pieces)
            if (in_polygon(piece.poly, q)) return true;
        return false;
    };
    // Under-coverage: every piece vertex belongs to the output region.
    for (const auto& piece : pieces)
        for (const auto& q : piece.verts())
            if (locate_point(out, q) == Location::Outside) return {false, "piece not covered"};
    // Over-coverage: output boundary samples must lie in the exact union.
    const size_t n = out.size();
    for (size_t i = 0; i < n; ++i) {
        Segment e = out.edge(i);
        for (double t : {0.0, 0.25, 0.5, 0.75}) {
            Point2 q = e.a + (e.b - e.a) * t;
            if (!in_union(q)) return {false, "exceeds exact hull"};
        }
    }
    return {};
}

SimplePolygon hull_vertex_walk(const SimplePolygon& p, const KernelSpec& kspec) {
    const auto& ks = kspec.points;
    const size_t n = p.size();
    const Point2 c = kspec.centroid();

    // v1: largest x, ties broken toward smallest y.
    size_t start = 0;
    for (size_t i = 1; i < n; ++i) {
        double dx = p[i].x - p[start].x;
        double tol = eps_for(std::max(std::abs(p[i].x), std::abs(p[start].x)));
        if (dx > tol || (std::abs(dx) <= tol && p[i].y < p[start].y)) start = i;
    }

    std::vector<Point2> out;
    std::vector<bool> k_used(ks.size(), false);
    Point2 vbar = c;

    auto append_with_swap = [&](const Point2& q, const Point2& v, const Point2& vprev) {
        out.push_back(q);
        if (out.size() >= 2 && orient(q, v, vprev) == Orientation::CCW)
            std::swap(out[out.size() - 1], out[out.size() - 2]);
    };

    for (size_t step = 0; step < n; ++step) {
        const Point2& v = p[(start + step) % n];
        const Point2& vprev = p[(start + step + n - 1) % n];

        // Retain v iff no shadow ray from a kernel point through v re-enters
        // the polygon.
        bool retained = true;
        for (const auto& k : ks) {
            if (!ray_free(v, v - k, p)) { retained = false; break; }
        }
        if (!retained) continue;
        out.push_back(v);

        for (size_t ki : extreme_kernel_indices(ks, v)) {
            const Point2& k = ks[ki];
            auto hits = crossings_before(k, v, p);
            if (!hits.empty()) {
                // v is occluded from k; the sight line leaves the polygon for
                // the last time at u, which starts the shadow edge [u, v].
                Point2 u = hits.back().point;
                bool ok = true;
                for (const auto& kj : ks) {
                    if (!ray_free(u, v - kj, p)) { ok = false; break; }
                }
                if (!ok) continue;
                // Another kernel point may already cover part of [u, v]; trim
                // u to the crossing with its sight edge through the previous
                // output point.
                for (size_t kj = 0; kj < ks.size(); ++kj) {
                    if (kj == ki) continue;
                    if (auto x = proper_cross({ks[kj], vbar}, {u, v})) u = *x;
                }
                if (near(u, v)) continue;
                append_with_swap(u, v, vprev);
            } else {
                // v is directly visible from k: k itself is a hull vertex
                // when it is exposed on every other kernel point's side.
                if (k_used[ki]) continue;
                if (locate_point(p, k) != Location::Outside) continue;
                bool ok = true;
                for (size_t kj = 0; kj < ks.size(); ++kj) {
                    if (kj == ki) continue;
                    if (!ray_free(k, k - ks[kj], p)) { ok = false; break; }
                }
                if (!ok) continue;
                if (near(k, v)) continue;
                append_with_swap(k, v, vprev);
                k_used[ki] = true;
            }
        }
        vbar = out.back();
    }

    // Final pass: kernel points still outside the walked boundary get
    // stitched in where (k, v, v') is CW.
    for (size_t round = 0; round < ks.size() + 1 && out.size() >= 2; ++round) {
        bool changed = false;
        for (size_t i = 0; i < out.size() && !changed; ++i) {
            const Point2& a = out[i];
            const Point2& b = out[(i + 1) % out.size()];
            std::vector<Point2> ins;
            for (const auto& k : ks) {
                bool present = false;
                for (const auto& q : out)
                    if (near(q, k)) { present = true; break; }
                if (present) continue;
                if (orient(k, a, b) == Orientation::CW) ins.push_back(k);
            }
            if (ins.empty()) continue;
            double a0 = angle_norm((a - c).angle());
            std::sort(ins.begin(), ins.end(), [&](const Point2& q1, const Point2& q2) {
                return angle_norm((q1 - c).angle() - a0) < angle_norm((q2 - c).angle() - a0);
            });
            out.insert(out.begin() + long(i) + 1, ins.begin(), ins.end());
            changed = true;
        }
        if (!changed) break;
    }

    // Merge near-duplicates (cyclically).
    std::vector<Point2> dedup;
    for (const auto& q : out) {
        if (!dedup.empty() && near(dedup.back(), q)) continue;
        dedup.push_back(q);
    }
    while (dedup.size() > 1 && near(dedup.front(), dedup.back())) dedup.pop_back();
    return SimplePolygon{std::move(dedup)};
}

}  // namespace

StarPolygon sh_kernel_polygon(const SimplePolygon& p, const KernelSpec& kspec) {
    if (p.size() < 3 || p.signed_area() <= 0 || !is_simple(p))
        throw MalformedInput("sh_kernel_polygon requires a simple CCW polygon");
    if (kspec.points.empty()) throw MalformedInput("kernel spec is empty");

    StarPolygon result;
    result.kernel_spec = kspec;
    auto pieces = kernel_hull_pieces(p, kspec);
    SimplePolygon walked;
    Validation val{false, "exception"};
    try {
        walked = hull_vertex_walk(p, kspec);
        val = validate_hull(walked, p, kspec, pieces);
    } catch (const Error& e) {
        log(LogLevel::Warn, "polygon hull walk failed: %s", e.what());
    }
    if (val.ok) {
        result.vertices = std::move(walked);
        return result;
    }
    log(LogLevel::Info, "polygon hull output rejected (%s); using union-of-pieces boundary",
        val.why);
    Point2 c = kspec.centroid();
    bool spanning = false;
    for (size_t i = 0; i + 1 < kspec.points.size() && !spanning; ++i)
        for (size_t j = i + 1; j < kspec.points.size(); ++j)
            if (orient(c, kspec.points[i], kspec.points[j]) != Orientation::Collinear) {
                spanning = true;
                break;
            }
    if (spanning) {
        // c is interior to the kernel, so the union is strictly starshaped
        // around it and the exact boundary extraction applies.
        result.vertices = star_union_boundary(pieces, c);
    } else {
        // Degenerate kernel: dense radial sampling from the centroid, with the
        // centroid itself patched in where nothing extends behind it.
        SimplePolygon poly;
        bool gap_open = false;
        const int nd = 1440;
        for (int i = 0; i < nd; ++i) {
            double a = 2.0 * M_PI * i / nd;
            Ray r{c, {std::cos(a), std::sin(a)}};
            double best = 0.0;
            for (const auto& piece : pieces) {
                auto t = ray_exit_param(r, piece);
                if (t && *t > best) best = *t;
            }
            if (best > eps_for(c.norm())) {
                poly.v.push_back(c + r.dir * best);
                gap_open = false;
            } else if (!gap_open) {
                poly.v.push_back(c);
                gap_open = true;
            }
        }
        result.vertices = std::move(poly);
    }
    result.fallback_boundary = true;
    return result;
}

}  // namespace starworlds::starshape
