#include <algorithm>
#include <array>
#include <cmath>

#include "starworlds/errors.hpp"
#include "starworlds/starworld/starworld.hpp"

namespace starworlds::starworld {

using namespace geom;

namespace {

bool reflex_at(const std::vector<Point2>& v, size_t i) {
    size_t n = v.size();
    return orient(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) == Orientation::CW;
}

bool point_in_triangle(const Point2& p, const Point2& a, const Point2& b, const Point2& c) {
    auto side = [&](const Point2& u, const Point2& w) { return (w - u).cross(p - u); };
    double tol = eps_for(std::max({p.norm(), a.norm(), b.norm(), c.norm()}));
    return side(a, b) >= -tol && side(b, c) >= -tol && side(c, a) >= -tol;
}

// Ear clipping over vertex indices into the original polygon.
std::vector<std::array<size_t, 3>> triangulate(const SimplePolygon& p) {
    std::vector<size_t> idx(p.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::vector<std::array<size_t, 3>> tris;
    auto at = [&](size_t i) -> const Point2& { return p[idx[i]]; };
    while (idx.size() > 3) {
        size_t n = idx.size();
        bool clipped = false;
        for (size_t i = 0; i < n; ++i) {
            const Point2& a = at((i + n - 1) % n);
            const Point2& b = at(i);
            const Point2& c = at((i + 1) % n);
            if (orient(a, b, c) != Orientation::CCW) continue;
            bool ear = true;
            for (size_t j = 0; j < n && ear; ++j) {
                if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
                if (point_in_triangle(at(j), a, b, c)) ear = false;
            }
            if (!ear) continue;
            tris.push_back({idx[(i + n - 1) % n], idx[i], idx[(i + 1) % n]});
            idx.erase(idx.begin() + long(i));
            clipped = true;
            break;
        }
        if (!clipped) {
            // Degenerate remainder (collinear chain): clip the least-bad ear.
            tris.push_back({idx[0], idx[1], idx[2]});
            idx.erase(idx.begin() + 1);
        }
    }
    tris.push_back({idx[0], idx[1], idx[2]});
    return tris;
}

struct Piece {
    std::vector<size_t> idx;  // CCW vertex indices into the source polygon
};

bool convex_after_merge(const std::vector<Point2>& verts) {
    size_t n = verts.size();
    for (size_t i = 0; i < n; ++i) {
        if (orient(verts[(i + n - 1) % n], verts[i], verts[(i + 1) % n]) == Orientation::CW)
            return false;
    }
    return true;
}

// Merge two pieces sharing the directed edge (a, b) in p1 and (b, a) in p2:
// walk p1 from b around to a, then p2's chain strictly between a and b.
std::optional<Piece> try_merge(const SimplePolygon& p, const Piece& p1, const Piece& p2) {
    size_t n1 = p1.idx.size(), n2 = p2.idx.size();
    for (size_t i = 0; i < n1; ++i) {
        size_t a = p1.idx[i], b = p1.idx[(i + 1) % n1];
        for (size_t j = 0; j < n2; ++j) {
            if (p2.idx[j] != b || p2.idx[(j + 1) % n2] != a) continue;
            Piece merged;
            for (size_t t = 0; t < n1; ++t) merged.idx.push_back(p1.idx[(i + 1 + t) % n1]);
            for (size_t t = 2; t < n2; ++t) merged.idx.push_back(p2.idx[(j + t) % n2]);
            std::vector<Point2> verts;
            verts.reserve(merged.idx.size());
            for (size_t t : merged.idx) verts.push_back(p[t]);
            if (!convex_after_merge(verts)) return std::nullopt;
            return merged;
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<ConvexPolygon> convex_decomposition(const SimplePolygon& p) {
    if (is_convex(p)) return {ConvexPolygon{p}};
    auto tris = triangulate(p);
    std::vector<Piece> pieces;
    pieces.reserve(tris.size());
    for (const auto& t : tris) pieces.push_back(Piece{{t[0], t[1], t[2]}});

    // Hertel-Mehlhorn: greedily remove inessential diagonals.
    bool merged_any = true;
    while (merged_any) {
        merged_any = false;
        for (size_t i = 0; i < pieces.size() && !merged_any; ++i) {
            for (size_t j = i + 1; j < pieces.size() && !merged_any; ++j) {
                if (auto m = try_merge(p, pieces[i], pieces[j])) {
                    pieces[i] = *m;
                    pieces.erase(pieces.begin() + long(j));
                    merged_any = true;
                }
            }
        }
    }

    std::vector<ConvexPolygon> out;
    out.reserve(pieces.size());
    for (const auto& piece : pieces) {
        SimplePolygon poly;
        for (size_t t : piece.idx) poly.v.push_back(p[t]);
        out.push_back(ConvexPolygon{std::move(poly)});
    }
    return out;
}

std::vector<Point2> exclusion_points_for(const Obstacle& o) {
    if (const auto* e = std::get_if<Ellipse>(&o.shape)) {
        Vec2 u{std::cos(e->rotation), std::sin(e->rotation)};
        Vec2 v = u.perp();
        return {e->center + u * e->a, e->center - u * e->a, e->center + v * e->b,
                e->center - v * e->b};
    }
    return std::get<SimplePolygon>(o.shape).v;
}

}  // namespace starworlds::starworld
