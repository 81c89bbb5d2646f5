#include "doctest.h"
#include "starworlds/errors.hpp"
#include "starworlds/geom/ops.hpp"
#include "support/oracles.hpp"

using namespace starworlds;
using namespace starworlds::geom;
using testsupport::Rng;

namespace {

SimplePolygon unit_square() {
    return SimplePolygon{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
}

SimplePolygon l_polygon() {
    return SimplePolygon{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
}

}  // namespace

TEST_CASE("orient basic examples") {
    CHECK(orient({0, 0}, {1, 0}, {0, 1}) == Orientation::CCW);
    CHECK(orient({0, 0}, {1, 0}, {2, 0}) == Orientation::Collinear);
    CHECK(orient({0, 0}, {0, 1}, {1, 1}) == Orientation::CW);
}

TEST_CASE("orient antisymmetry and translation invariance") {
    Rng rng(7);
    for (int it = 0; it < 200; ++it) {
        Point2 a = rng.point(-10, 10), b = rng.point(-10, 10), c = rng.point(-10, 10);
        auto o1 = orient(a, b, c);
        auto o2 = orient(a, c, b);
        if (o1 == Orientation::CCW) CHECK(o2 == Orientation::CW);
        if (o1 == Orientation::CW) CHECK(o2 == Orientation::CCW);
        Vec2 t = rng.point(-100, 100);
        CHECK(orient(a + t, b + t, c + t) == o1);
    }
}

TEST_CASE("convex hull drops interior and collinear points") {
    auto h = convex_hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}});
    CHECK(h.size() == 4);
    auto tri = convex_hull({{0, 0}, {2, 0}, {1, 1}});
    CHECK(tri.size() == 3);
    CHECK_THROWS_AS(convex_hull({{0, 0}, {1, 0}, {2, 0}}), DegenerateHull);
}

TEST_CASE("tangent points of polygon: square from the right") {
    auto [t1, t2] = tangent_points_polygon(unit_square(), {2, 0.5});
    // (x, t1, t2) is CW, so t1 is the max-polar-angle vertex (1,0).
    CHECK(t1.x == doctest::Approx(1));
    CHECK(t1.y == doctest::Approx(0));
    CHECK(t2.x == doctest::Approx(1));
    CHECK(t2.y == doctest::Approx(1));
    CHECK(orient({2, 0.5}, t1, t2) == Orientation::CW);
}

TEST_CASE("tangent points of polygon: triangle from lower-left") {
    SimplePolygon tri{{{0, 0}, {1, 0}, {0, 1}}};
    auto [t1, t2] = tangent_points_polygon(tri, {-1, -1});
    CHECK(t1.x == doctest::Approx(0));
    CHECK(t1.y == doctest::Approx(1));
    CHECK(t2.x == doctest::Approx(1));
    CHECK(t2.y == doctest::Approx(0));
    CHECK(orient({-1, -1}, t1, t2) == Orientation::CW);
}

TEST_CASE("tangent points of polygon: interior point rejected") {
    CHECK_THROWS_AS(tangent_points_polygon(unit_square(), {0.5, 0.5}), NotFreeExterior);
}

TEST_CASE("tangent points of polygon against brute-force oracle") {
    Rng rng(11);
    for (int it = 0; it < 100; ++it) {
        auto p = testsupport::random_radial_polygon(rng, rng.uniform_int(5, 12), 0.5, 2.0);
        Point2 x = rng.point(-6, 6);
        if (in_polygon(p, x)) continue;
        if (classify_point({Shape{p}}, x) != PointClass::FreeExterior) continue;
        auto [t1, t2] = tangent_points_polygon(p, x);
        // Oracle: a tangent vertex's outward ray does not cross the interior.
        CHECK_FALSE(ray_hits_interior(Ray{x, t1 - x}, p));
        CHECK_FALSE(ray_hits_interior(Ray{x, t2 - x}, p));
        // Angular containment: every vertex lies in the CCW cone from
        // direction (t2 - x) to direction (t1 - x).
        double a2 = angle_norm((t2 - x).angle());
        double width = angle_norm((t1 - x).angle() - a2);
        for (const auto& v : p.v) {
            double rel = angle_norm((v - x).angle() - a2);
            CHECK(rel <= width + 1e-7);
        }
    }
}

TEST_CASE("tangent points of ellipse: unit circle analytic cases") {
    Ellipse circ{{0, 0}, 1, 1, 0};
    auto [t1, t2] = tangent_points_ellipse(circ, {2, 0});
    CHECK(t1.x == doctest::Approx(0.5));
    CHECK(t1.y == doctest::Approx(-std::sqrt(3.0) / 2));
    CHECK(t2.x == doctest::Approx(0.5));
    CHECK(t2.y == doctest::Approx(std::sqrt(3.0) / 2));

    auto [u1, u2] = tangent_points_ellipse(circ, {0, 2});
    CHECK(u1.x == doctest::Approx(std::sqrt(3.0) / 2));
    CHECK(u1.y == doctest::Approx(0.5));
    CHECK(u2.x == doctest::Approx(-std::sqrt(3.0) / 2));
    CHECK(u2.y == doctest::Approx(0.5));

    CHECK_THROWS_AS(tangent_points_ellipse(circ, {0.5, 0}), PointInsideShape);
}

TEST_CASE("tangent points of ellipse satisfy tangency conditions") {
    Rng rng(13);
    for (int it = 0; it < 100; ++it) {
        Ellipse e{rng.point(-2, 2), rng.uniform(0.3, 2.0), rng.uniform(0.3, 2.0),
                  rng.uniform(0, M_PI)};
        Point2 x = rng.point(-8, 8);
        if (e.to_circle(x).norm2() <= 1.1) continue;
        auto [t1, t2] = tangent_points_ellipse(e, x);
        for (const auto& t : {t1, t2}) {
            Point2 tc = e.to_circle(t);
            Point2 xc = e.to_circle(x);
            CHECK(tc.norm2() == doctest::Approx(1.0).epsilon(1e-7));
            CHECK(tc.dot(tc - xc) == doctest::Approx(0.0).epsilon(1e-7));
        }
        CHECK(orient(x, t1, t2) == Orientation::CW);
    }
}

TEST_CASE("ray polygon hits") {
    auto sq = unit_square();
    auto h1 = ray_polygon_hits(Ray{{-1, 0.5}, {1, 0}}, sq);
    REQUIRE(h1.size() == 2);
    CHECK(h1[0].param == doctest::Approx(1));
    CHECK(h1[1].param == doctest::Approx(2));

    auto h2 = ray_polygon_hits(Ray{{0.5, 0.5}, {1, 0}}, sq);
    REQUIRE(h2.size() == 1);
    CHECK(h2[0].param == doctest::Approx(0.5));

    CHECK(ray_polygon_hits(Ray{{-1, 2}, {1, 0}}, sq).empty());
}

TEST_CASE("ray hits are sorted and on the boundary") {
    Rng rng(17);
    for (int it = 0; it < 100; ++it) {
        auto p = testsupport::random_radial_polygon(rng, rng.uniform_int(4, 10), 0.3, 2.5);
        Ray r{rng.point(-5, 5), rng.point(-1, 1)};
        if (r.dir.norm() < 0.1) continue;
        auto hits = ray_polygon_hits(r, p);
        for (size_t i = 0; i + 1 < hits.size(); ++i) CHECK(hits[i].param <= hits[i + 1].param);
        for (const auto& h : hits)
            CHECK(locate_point(p, h.point) == Location::OnBoundary);
    }
}

TEST_CASE("classify point") {
    Ellipse circ{{0, 0}, 1, 1, 0};
    CHECK(classify_point({Shape{circ}}, {3, 0}) == PointClass::FreeExterior);
    CHECK(classify_point({Shape{circ}}, {0.2, 0}) == PointClass::Inside);

    // Four squares forming a closed frame: outer 6x6, inner 2x2 around origin.
    auto quad = [](double x0, double y0, double x1, double y1) {
        return Shape{SimplePolygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}}};
    };
    std::vector<Shape> ring = {
        quad(-3, -3, 3, -1),  // bottom
        quad(-3, 1, 3, 3),    // top
        quad(-3, -1.5, -1, 1.5),  // left
        quad(1, -1.5, 3, 1.5),    // right
    };
    CHECK(classify_point(ring, {0, 0}) == PointClass::BoundedExterior);
    CHECK(classify_point(ring, {0, -4}) == PointClass::FreeExterior);
}

TEST_CASE("classify point agrees with dense ray sampling") {
    Rng rng(19);
    for (int it = 0; it < 40; ++it) {
        std::vector<Shape> shapes;
        int ns = rng.uniform_int(1, 4);
        for (int i = 0; i < ns; ++i) {
            if (rng.uniform(0, 1) < 0.5) {
                shapes.push_back(Ellipse{rng.point(-3, 3), rng.uniform(0.3, 1.5),
                                         rng.uniform(0.3, 1.5), rng.uniform(0, M_PI)});
            } else {
                shapes.push_back(testsupport::random_radial_polygon(
                    rng, rng.uniform_int(4, 9), 0.3, 1.5, rng.point(-3, 3)));
            }
        }
        Point2 x = rng.point(-4, 4);
        bool inside = false;
        for (const auto& s : shapes)
            if (point_in_shape(s, x)) inside = true;
        if (inside) continue;
        PointClass pc = classify_point(shapes, x);

        int free_rays = 0;
        for (int d = 0; d < 720; ++d) {
            double a = 2.0 * M_PI * d / 720;
            Ray r{x, {std::cos(a), std::sin(a)}};
            bool blocked = false;
            for (const auto& s : shapes) {
                if (const auto* e = std::get_if<Ellipse>(&s)) {
                    if (!ray_ellipse_hits(r, *e).empty()) { blocked = true; break; }
                } else if (!ray_polygon_hits(r, std::get<SimplePolygon>(s)).empty()) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked) ++free_rays;
        }
        if (pc == PointClass::FreeExterior && free_rays == 0) {
            // Allowed only if the free gap is narrower than the sampling step.
            CHECK(true);
        } else if (pc == PointClass::BoundedExterior) {
            CHECK(free_rays == 0);
        } else {
            CHECK(free_rays > 0);
        }
    }
}

TEST_CASE("convex pieces intersect") {
    auto sq = [](double ox, double oy) {
        return ConvexPolygon{SimplePolygon{{{ox, oy}, {ox + 1, oy}, {ox + 1, oy + 1}, {ox, oy + 1}}}};
    };
    CHECK(convex_pieces_intersect(sq(0, 0), sq(0.5, 0)));
    CHECK_FALSE(convex_pieces_intersect(sq(0, 0), sq(3, 0)));
    CHECK(convex_pieces_intersect(sq(0, 0), sq(1, 0)));  // shared edge counts
}

TEST_CASE("polygon kernel") {
    auto sq = unit_square();
    auto k1 = polygon_kernel(sq);
    REQUIRE(k1.has_value());
    CHECK(k1->poly.area() == doctest::Approx(1.0).epsilon(1e-6));

    auto k2 = polygon_kernel(l_polygon());
    REQUIRE(k2.has_value());
    CHECK(k2->poly.area() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(locate_point(k2->poly, {0.5, 0.5}) == Location::Inside);
    CHECK(locate_point(k2->poly, {1.5, 0.5}) == Location::Outside);

    // Pinwheel: arms bent so no point sees everything.
    SimplePolygon pin{{{0, 0},   {3, 0},  {3, 1},  {1, 1},  {1, 3},  {0, 3},
                       {0, 2},   {-2, 2}, {-2, -2}, {-1, -2}, {-1, 0}}};
    REQUIRE(pin.signed_area() > 0);
    CHECK_FALSE(polygon_kernel(pin).has_value());
}

TEST_CASE("polygon kernel properties") {
    Rng rng(23);
    int tested = 0;
    for (int it = 0; it < 60 && tested < 20; ++it) {
        auto p = testsupport::random_radial_polygon(rng, rng.uniform_int(5, 10), 0.4, 2.0);
        auto ker = polygon_kernel(p);
        if (!ker) continue;
        ++tested;
        for (const auto& kv : ker->verts())
            CHECK(locate_point(p, kv) != Location::Outside);
        for (int s = 0; s < 50; ++s) {
            // Random kernel point: convex combination of kernel vertices.
            Point2 k = ker->poly.centroid();
            Point2 kv = ker->verts()[size_t(rng.uniform_int(0, int(ker->size()) - 1))];
            Point2 kp = k + (kv - k) * rng.uniform(0, 0.98);
            size_t ei = size_t(rng.uniform_int(0, int(p.size()) - 1));
            Segment e = p.edge(ei);
            Point2 y = e.a + (e.b - e.a) * rng.uniform(0, 1);
            for (int t = 1; t < 20; ++t) {
                Point2 q = kp + (y - kp) * (t / 20.0);
                CHECK(locate_point(p, q) != Location::Outside);
            }
        }
    }
    CHECK(tested > 5);
}
