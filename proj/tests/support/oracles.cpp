#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace testsupport {

using namespace starworlds::geom;

SimplePolygon random_radial_polygon(Rng& rng, int nverts, double rmin, double rmax,
                                    Point2 center) {
    std::vector<double> angs(nverts);
    for (int i = 0; i < nverts; ++i)
        angs[i] = 2.0 * M_PI * (i + rng.uniform(0.05, 0.95)) / nverts;
    SimplePolygon p;
    for (int i = 0; i < nverts; ++i) {
        double r = rng.uniform(rmin, rmax);
        p.v.push_back(center + Vec2{std::cos(angs[i]), std::sin(angs[i])} * r);
    }
    return p;
}

bool in_sh_point(const Shape& s, const Point2& x, const Point2& q) {
    if (point_in_shape(s, q)) return true;
    Vec2 d = q - x;
    double dn = d.norm();
    if (dn <= 1e-12) return point_in_shape(s, x);
    Ray r{x, d};
    if (const auto* e = std::get_if<Ellipse>(&s)) {
        for (double t : ray_ellipse_hits(r, *e))
            if (t >= 1.0 - 1e-9) return true;
        return false;
    }
    for (const auto& h : ray_polygon_hits(r, std::get<SimplePolygon>(s)))
        if (h.param >= 1.0 - 1e-9) return true;
    return false;
}

bool in_sh_sampled(const Shape& s, const std::vector<Point2>& ks, const Point2& q) {
    for (const auto& k : ks)
        if (in_sh_point(s, k, q)) return true;
    return false;
}

std::vector<Point2> sample_kernel_hull(Rng& rng, const KernelSpec& k, int total) {
    std::vector<Point2> out = k.points;
    const size_t m = k.points.size();
    while (int(out.size()) < total) {
        // Random convex combination via normalized exponential weights.
        std::vector<double> w(m);
        double sum = 0;
        for (auto& wi : w) { wi = -std::log(std::max(rng.uniform(0, 1), 1e-12)); sum += wi; }
        Vec2 q{0, 0};
        for (size_t i = 0; i < m; ++i) q += k.points[i] * (w[i] / sum);
        out.push_back(q);
    }
    return out;
}

Grid raster_sh_union(const SimplePolygon& p, const std::vector<Point2>& ks, const AABB& box,
                     int n) {
    Grid g(box, n);
    g.fill_polygon(p);
    for (const auto& k : ks) {
        for (size_t i = 0; i < p.size(); ++i) {
            Segment e = p.edge(i);
            g.fill_triangle(k, e.a, e.b);
        }
    }
    return g;
}

}  // namespace testsupport
