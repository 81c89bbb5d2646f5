#include <algorithm>
#include <cmath>

#include "starworlds/admker/admker.hpp"
#include "starworlds/errors.hpp"

namespace starworlds::admker {

using namespace geom;

bool Cone2::contains(const Point2& p) const {
    Vec2 d = p - apex;
    if (d.norm() <= eps_for(std::max(1.0, apex.norm()))) return false;
    double rel = angle_norm(d.angle() - right_ray.dir.angle());
    return rel > 1e-12 && rel < width - 1e-12;
}

static Point2 shape_centroid_of(const Shape& s) {
    if (const auto* e = std::get_if<Ellipse>(&s)) return e->center;
    return std::get<SimplePolygon>(s).centroid();
}

AdmissibleKernelSingle admissible_kernel_single(const Shape& a, const Point2& xbar) {
    AdmissibleKernelSingle out;
    out.anchor = shape_centroid_of(a);
    if (point_in_shape(a, xbar)) return out;  // Empty
    auto arc = blocked_arc(a, xbar);
    if (!arc) return out;  // bounded exterior: Empty
    // The cone is the complement of the reflected blocked arc: directions d
    // with the ray r(xbar, -d) missing the shape.
    double blocked_start = arc->start;
    double blocked_width = arc->width;
    Cone2 cone;
    cone.apex = xbar;
    double start = angle_norm(blocked_start + blocked_width + M_PI);  // reflected t1 direction
    cone.width = 2.0 * M_PI - blocked_width;
    cone.right_ray = Ray{xbar, {std::cos(start), std::sin(start)}};
    double end = angle_norm(start + cone.width);
    cone.left_ray = Ray{xbar, {std::cos(end), std::sin(end)}};
    out.cone = cone;
    bool convex = true;
    if (const auto* p = std::get_if<SimplePolygon>(&a)) convex = is_convex(*p);
    if (convex) {
        out.kind = AdmissibleKernelSingle::Kind::FullPlaneMinusShadow;
        if (const auto* e = std::get_if<Ellipse>(&a)) {
            auto [t1, t2] = tangent_points_ellipse(*e, xbar);
            out.tangent_chord = Segment{t1, t2};
        } else {
            auto [t1, t2] = tangent_points_polygon(std::get<SimplePolygon>(a), xbar);
            out.tangent_chord = Segment{t1, t2};
        }
    } else {
        out.kind = AdmissibleKernelSingle::Kind::Cone;
    }
    return out;
}

namespace {

struct Cut {
    Point2 p0;
    Vec2 n;  // keep dot(q - p0, n) >= 0
};

// Half-plane cuts that realize (or under-approximate) one admissible cone.
// For width <= pi the two boundary rays cut exactly; otherwise one sound
// half-plane is chosen, preferring the candidate that keeps the anchor point
// (the shape centroid) deepest inside.
std::vector<Cut> cuts_for_cone(const AdmissibleKernelSingle& single, const Point2& anchor,
                               bool& exact) {
    const Cone2& c = *single.cone;
    std::vector<Cut> cuts;
    if (c.width <= M_PI + 1e-12) {
        cuts.push_back({c.apex, c.right_ray.dir.perp()});
        cuts.push_back({c.apex, Vec2{0, 0} - c.left_ray.dir.perp()});
        return cuts;
    }
    // Complement wedge W spans the reflected blocked arc from left_ray to
    // right_ray. Candidate half-planes disjoint from W:
    std::vector<Cut> cand;
    cand.push_back({c.apex, c.right_ray.dir.perp()});            // left of right ray
    cand.push_back({c.apex, Vec2{0, 0} - c.left_ray.dir.perp()});  // right of left ray
    {
        // Through the apex, keeping the cone-bisector side. All of W lies
        // strictly behind this line since W is narrower than pi.
        double mid = c.right_ray.dir.angle() + 0.5 * c.width;
        cand.push_back({c.apex, Vec2{std::cos(mid), std::sin(mid)}});
    }
    if (single.tangent_chord) {
        // Far side of the tangent chord, away from the apex.
        const Segment& ch = *single.tangent_chord;
        Vec2 n = (ch.b - ch.a).perp();
        if ((c.apex - ch.a).dot(n) > 0) n = Vec2{0, 0} - n;
        cand.push_back({ch.a, n});
    }
    const Cut* best = nullptr;
    double best_d = -1e300;
    for (const auto& cut : cand) {
        double d = (anchor - cut.p0).dot(cut.n) / std::max(cut.n.norm(), 1e-300);
        if (d > best_d) { best_d = d; best = &cut; }
    }
    cuts.push_back(*best);
    exact = false;
    return cuts;
}

KernelRegion intersect_cuts(const std::vector<std::vector<Cut>>& all_cuts, const AABB& bbox,
                            double delta_open, bool exact) {
    if (delta_open < 0) delta_open = 1e-7 * bbox.diameter();
    SimplePolygon region{{{bbox.lo.x, bbox.lo.y}, {bbox.hi.x, bbox.lo.y},
                          {bbox.hi.x, bbox.hi.y}, {bbox.lo.x, bbox.hi.y}}};
    for (const auto& cuts : all_cuts)
        for (const auto& cut : cuts) {
            if (region.v.empty()) break;
            region = clip_halfplane(region, cut.p0, cut.n);
        }
    // Inward shrink by delta_open to respect the open-cone boundaries.
    if (!region.v.empty()) {
        SimplePolygon base = region;
        for (size_t i = 0; i < base.size() && !region.v.empty(); ++i) {
            Segment e = base.edge(i);
            Vec2 n = (e.b - e.a).perp();
            double nn = n.norm();
            if (nn < 1e-300) continue;
            n = n / nn;
            region = clip_halfplane(region, e.a + n * delta_open, n);
        }
    }
    KernelRegion out;
    out.exact = exact;
    if (region.v.size() < 3) return out;
    if (region.area() <= std::pow(10.0 * delta_open, 2)) return out;
    out.region = ConvexPolygon{std::move(region)};
    return out;
}

}  // namespace

KernelRegion admissible_kernel_from_singles(const std::vector<AdmissibleKernelSingle>& singles,
                                            const AABB& bbox, double delta_open) {
    bool exact = true;
    std::vector<std::vector<Cut>> all_cuts;
    for (const auto& single : singles) {
        if (single.empty()) return KernelRegion{};
        all_cuts.push_back(cuts_for_cone(single, single.anchor, exact));
    }
    return intersect_cuts(all_cuts, bbox, delta_open, exact);
}

KernelRegion admissible_kernel(const std::vector<Shape>& shapes, const ExcludeSet& xs,
                               const AABB& bbox, double delta_open) {
    bool exact = true;
    std::vector<std::vector<Cut>> all_cuts;
    for (const auto& shape : shapes) {
        for (const auto& xbar : xs.points) {
            AdmissibleKernelSingle single = admissible_kernel_single(shape, xbar);
            if (single.empty()) return KernelRegion{};
            all_cuts.push_back(cuts_for_cone(single, single.anchor, exact));
        }
    }
    return intersect_cuts(all_cuts, bbox, delta_open, exact);
}

}  // namespace starworlds::admker
