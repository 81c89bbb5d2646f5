#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "starworlds/geom/ops.hpp"
#include "starworlds/starshape/starshape.hpp"
#include "support/raster.hpp"

namespace testsupport {

using starworlds::geom::Point2;
using starworlds::geom::Shape;
using starworlds::geom::SimplePolygon;
using starworlds::geom::Vec2;
using starworlds::starshape::KernelSpec;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (double(gen() >> 11) * (1.0 / 9007199254740992.0));
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return lo + int(gen() % uint64_t(hi - lo + 1));
    }
    double normal(double mean, double sd) {
        double u1 = std::max(uniform(0, 1), 1e-12), u2 = uniform(0, 1);
        return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    Point2 point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
};

// Random simple (usually concave) polygon: jittered angles, varying radii.
SimplePolygon random_radial_polygon(Rng& rng, int nverts, double rmin, double rmax,
                                    Point2 center = {0, 0});

// Membership in SH_x(shape): q is in the shape or the ray from x through q
// meets the shape at or beyond q.
bool in_sh_point(const Shape& s, const Point2& x, const Point2& q);

// Membership in the sampled union of SH_k(shape) over the given kernel points.
bool in_sh_sampled(const Shape& s, const std::vector<Point2>& ks, const Point2& q);

// Sample points of CH(K): the kernel points themselves plus random convex
// combinations.
std::vector<Point2> sample_kernel_hull(Rng& rng, const KernelSpec& k, int total);

// Rasterized union over sampled kernel points of SH_k(P): P plus the triangle
// swept from each k to each polygon edge.
Grid raster_sh_union(const SimplePolygon& p, const std::vector<Point2>& ks, const AABB& box,
                     int n = 512);

}  // namespace testsupport
