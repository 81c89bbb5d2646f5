#include <cmath>

#include "doctest.h"
#include "starworlds/admker/admker.hpp"
#include "starworlds/errors.hpp"
#include "support/oracles.hpp"

using namespace starworlds;
using namespace starworlds::geom;
using namespace starworlds::admker;
using testsupport::Rng;

namespace {

SimplePolygon l_polygon() {
    return SimplePolygon{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
}

Ellipse unit_circle() { return Ellipse{{0, 0}, 1, 1, 0}; }

// Definition oracle: xbar escapes SH_p(shapes) iff for every shape the ray
// from p through xbar, past xbar, misses it.
bool hull_from_p_contains(const std::vector<Shape>& shapes, const Point2& p, const Point2& xbar) {
    for (const auto& s : shapes)
        if (testsupport::in_sh_point(s, p, xbar)) return true;
    return false;
}

Point2 sample_in(Rng& rng, const ConvexPolygon& poly) {
    // Rejection sampling in the bbox.
    AABB box = poly.poly.bbox();
    for (int i = 0; i < 1000; ++i) {
        Point2 q{rng.uniform(box.lo.x, box.hi.x), rng.uniform(box.lo.y, box.hi.y)};
        if (locate_point(poly.poly, q) == Location::Inside) return q;
    }
    return poly.poly.centroid();
}

AABB scene_box(const std::vector<Shape>& shapes, const std::vector<Point2>& pts) {
    AABB box = shape_bbox(shapes[0]);
    for (const auto& s : shapes) box.expand(shape_bbox(s));
    for (const auto& p : pts) box.expand(p);
    return box.inflated(4.5 * box.diameter());
}

}  // namespace

TEST_CASE("single kernel: convex shape gives the full plane minus the shadow") {
    auto single = admissible_kernel_single(Shape{unit_circle()}, {2, 0});
    REQUIRE(single.kind == AdmissibleKernelSingle::Kind::FullPlaneMinusShadow);
    REQUIRE(single.cone.has_value());
    CHECK(single.cone->width > M_PI);
    CHECK(single.cone->contains({0, 0}));
    CHECK(single.cone->contains({-5, 0}));
    CHECK_FALSE(single.cone->contains({5, 0}));  // in the shadow behind xbar
}

TEST_CASE("single kernel: concave polygon gives an open cone") {
    auto single = admissible_kernel_single(Shape{l_polygon()}, {1.5, 1.5});
    REQUIRE(single.kind == AdmissibleKernelSingle::Kind::Cone);
    CHECK(dist(single.cone->apex, {1.5, 1.5}) < 1e-12);
    // Sound: sampled cone points generate hulls that exclude xbar.
    Rng rng(3);
    int tested = 0;
    for (int i = 0; i < 400 && tested < 100; ++i) {
        Point2 p{rng.uniform(-3, 5), rng.uniform(-3, 5)};
        if (!single.cone->contains(p)) continue;
        ++tested;
        CHECK_FALSE(hull_from_p_contains({Shape{l_polygon()}}, p, {1.5, 1.5}));
    }
    CHECK(tested == 100);
}

TEST_CASE("single kernel: interior and bounded-exterior excluders are empty") {
    CHECK(admissible_kernel_single(Shape{unit_circle()}, {0.5, 0}).empty());
    CHECK(admissible_kernel_single(Shape{l_polygon()}, {0.5, 0.5}).empty());
    // Boundary counts as inside.
    CHECK(admissible_kernel_single(Shape{unit_circle()}, {1, 0}).empty());
}

TEST_CASE("single kernel empty exactly when classify says Inside/BoundedExterior") {
    Rng rng(5);
    for (int it = 0; it < 150; ++it) {
        Shape s;
        if (rng.uniform(0, 1) < 0.5) {
            s = Ellipse{rng.point(-1, 1), rng.uniform(0.3, 1.5), rng.uniform(0.3, 1.5),
                        rng.uniform(0, M_PI)};
        } else {
            s = testsupport::random_radial_polygon(rng, rng.uniform_int(5, 12), 0.3, 2.0);
        }
        Point2 x = rng.point(-3, 3);
        auto single = admissible_kernel_single(s, x);
        auto pc = classify_point({s}, x);
        CHECK((single.empty()) == (pc != PointClass::FreeExterior));
    }
}

TEST_CASE("admissible kernel: two disjoint circles and one far excluder") {
    std::vector<Shape> shapes = {Shape{Ellipse{{0, 0}, 1, 1, 0}}, Shape{Ellipse{{4, 0}, 1, 1, 0}}};
    ExcludeSet xs{{{2, 6}}};
    auto kr = admissible_kernel(shapes, xs, scene_box(shapes, xs.points));
    REQUIRE_FALSE(kr.empty());
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        Point2 p = sample_in(rng, kr.poly());
        CHECK_FALSE(hull_from_p_contains(shapes, p, {2, 6}));
    }
}

TEST_CASE("admissible kernel: polygon with two excluders is the clipped cone intersection") {
    std::vector<Shape> shapes = {Shape{l_polygon()}};
    ExcludeSet xs{{{1.5, 1.5}, {3, 0.5}}};
    auto kr = admissible_kernel(shapes, xs, scene_box(shapes, xs.points));
    REQUIRE_FALSE(kr.empty());
    auto c1 = admissible_kernel_single(shapes[0], xs.points[0]);
    auto c2 = admissible_kernel_single(shapes[0], xs.points[1]);
    for (const auto& v : kr.poly().verts()) {
        // Region within both cones (allowing the open-boundary shrink).
        Point2 q = v + (kr.poly().poly.centroid() - v) * 1e-6;
        CHECK(c1.cone->contains(q));
        CHECK(c2.cone->contains(q));
    }
}

TEST_CASE("admissible kernel: ring of shapes around the excluder is empty") {
    auto quad = [](double x0, double y0, double x1, double y1) {
        return Shape{SimplePolygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}};
    };
    std::vector<Shape> ring = {quad(-3, -3, 3, -1), quad(-3, 1, 3, 3), quad(-3, -1.5, -1, 1.5),
                               quad(1, -1.5, 3, 1.5)};
    ExcludeSet xs{{{0, 0}}};
    auto kr = admissible_kernel(ring, xs, scene_box(ring, xs.points));
    CHECK(kr.empty());
}

TEST_CASE("decomposition identities over shapes and excluders") {
    Rng rng(11);
    for (int it = 0; it < 30; ++it) {
        std::vector<Shape> shapes = {
            Shape{Ellipse{rng.point(-2, 2), rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0),
                          rng.uniform(0, M_PI)}},
            Shape{testsupport::random_radial_polygon(rng, 7, 0.3, 1.2, rng.point(-2, 2))}};
        std::vector<Point2> excl = {rng.point(-6, 6), rng.point(-6, 6)};
        bool skip = false;
        for (const auto& s : shapes)
            for (const auto& x : excl)
                if (classify_point({s}, x) != PointClass::FreeExterior) skip = true;
        if (skip) continue;
        AABB box = scene_box(shapes, excl);

        auto hausdorff = [](const ConvexPolygon& a, const ConvexPolygon& b) {
            double h = 0;
            auto side = [&](const ConvexPolygon& from, const ConvexPolygon& to) {
                for (const auto& v : from.verts()) {
                    double best = 1e300;
                    for (size_t i = 0; i < to.size(); ++i) {
                        Segment e = to.poly.edge(i);
                        Vec2 d = e.b - e.a;
                        double t = std::clamp((v - e.a).dot(d) / d.norm2(), 0.0, 1.0);
                        best = std::min(best, dist(v, e.a + d * t));
                    }
                    h = std::max(h, best);
                }
            };
            side(a, b);
            side(b, a);
            return h;
        };

        // Property 2: union of shapes = intersection of per-shape kernels.
        ExcludeSet xs{excl};
        auto kr_all = admissible_kernel(shapes, xs, box);
        auto kr_a = admissible_kernel({shapes[0]}, xs, box);
        auto kr_b = admissible_kernel({shapes[1]}, xs, box);
        if (kr_all.empty() || kr_a.empty() || kr_b.empty()) {
            // Intersection of the parts must then be (near) empty as well.
            if (!kr_a.empty() && !kr_b.empty()) {
                SimplePolygon inter = kr_a.poly().poly;
                for (size_t i = 0; i < kr_b.poly().size() && !inter.v.empty(); ++i) {
                    Segment e = kr_b.poly().poly.edge(i);
                    inter = clip_halfplane(inter, e.a, (e.b - e.a).perp());
                }
                CHECK(inter.area() < 1e-4 * box.diameter() * box.diameter());
            }
            continue;
        }
        SimplePolygon inter = kr_a.poly().poly;
        for (size_t i = 0; i < kr_b.poly().size() && !inter.v.empty(); ++i) {
            Segment e = kr_b.poly().poly.edge(i);
            inter = clip_halfplane(inter, e.a, (e.b - e.a).perp());
        }
        REQUIRE_FALSE(inter.v.empty());
        double tol = 1e-6 * box.diameter();
        CHECK(hausdorff(kr_all.poly(), ConvexPolygon{inter}) <= tol);

        // Property 3: same decomposition over the excluders.
        auto kr_x1 = admissible_kernel(shapes, ExcludeSet{{excl[0]}}, box);
        auto kr_x2 = admissible_kernel(shapes, ExcludeSet{{excl[1]}}, box);
        if (kr_x1.empty() || kr_x2.empty()) continue;
        SimplePolygon inter2 = kr_x1.poly().poly;
        for (size_t i = 0; i < kr_x2.poly().size() && !inter2.v.empty(); ++i) {
            Segment e = kr_x2.poly().poly.edge(i);
            inter2 = clip_halfplane(inter2, e.a, (e.b - e.a).perp());
        }
        REQUIRE_FALSE(inter2.v.empty());
        CHECK(hausdorff(kr_all.poly(), ConvexPolygon{inter2}) <= tol);
    }
}

TEST_CASE("openness: pre-shrink cone boundary fails, shrunk region passes") {
    SimplePolygon l = l_polygon();
    Point2 xbar{1.5, 1.5};
    auto single = admissible_kernel_single(Shape{l}, xbar);
    REQUIRE(single.kind == AdmissibleKernelSingle::Kind::Cone);
    // Points exactly on the cone boundary rays: their hulls contain xbar.
    for (const Ray* r : {&single.cone->right_ray, &single.cone->left_ray}) {
        for (double t : {0.5, 1.5, 3.0}) {
            Point2 p = r->origin + r->dir * t;
            CHECK(hull_from_p_contains({Shape{l}}, p, xbar));
        }
    }
    auto kr = admissible_kernel({Shape{l}}, ExcludeSet{{xbar}}, scene_box({Shape{l}}, {xbar}));
    REQUIRE_FALSE(kr.empty());
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        Point2 p = sample_in(rng, kr.poly());
        CHECK_FALSE(hull_from_p_contains({Shape{l}}, p, xbar));
    }
}

TEST_CASE("soundness on randomized shape sets") {
    Rng rng(17);
    int regions = 0;
    for (int it = 0; it < 60 && regions < 25; ++it) {
        std::vector<Shape> shapes;
        int ns = rng.uniform_int(1, 4);
        for (int i = 0; i < ns; ++i) {
            if (rng.uniform(0, 1) < 0.5)
                shapes.push_back(Ellipse{rng.point(-2.5, 2.5), rng.uniform(0.3, 1.2),
                                         rng.uniform(0.3, 1.2), rng.uniform(0, M_PI)});
            else
                shapes.push_back(testsupport::random_radial_polygon(rng, rng.uniform_int(4, 9),
                                                                    0.3, 1.3, rng.point(-2.5, 2.5)));
        }
        std::vector<Point2> excl;
        int ne = rng.uniform_int(1, 3);
        for (int i = 0; i < ne; ++i) excl.push_back(rng.point(-5, 5));
        auto kr = admissible_kernel(shapes, ExcludeSet{excl}, scene_box(shapes, excl));
        if (kr.empty()) continue;
        ++regions;
        for (int i = 0; i < 200; ++i) {
            Point2 p = sample_in(rng, kr.poly());
            for (const auto& x : excl) CHECK_FALSE(hull_from_p_contains(shapes, p, x));
        }
    }
    CHECK(regions >= 10);
}
