#include <cmath>

#include "doctest.h"
#include "starworlds/errors.hpp"
#include "starworlds/planner/planner.hpp"
#include "support/oracles.hpp"

using namespace starworlds;
using namespace starworlds::geom;
using namespace starworlds::planner;
using starworld::Obstacle;
using testsupport::Rng;

namespace {

StarObstacle unit_circle_star() {
    StarObstacle s;
    s.kernel_spec = starshape::KernelSpec{
        {{0.0, 0.1}, {-0.0866, -0.05}, {0.0866, -0.05}}};
    s.kernel_hull = s.kernel_spec.points;
    s.pieces.push_back({starshape::StarPiece::Kind::OriginalConvex, Ellipse{{0, 0}, 1, 1, 0}});
    return s;
}

}  // namespace

TEST_CASE("center point stays at the kernel centroid when off the line") {
    auto s = unit_circle_star();
    Point2 c = center_point(s, {-5, 3}, {5, 2});
    Point2 k = s.kernel_centroid();
    CHECK(dist(c, k) < 1e-12);
}

TEST_CASE("center point moves off the attractor line but stays in CH(K)") {
    auto s = unit_circle_star();
    Point2 k = s.kernel_centroid();
    // Line through the centroid.
    Point2 x{-5, k.y}, xg{5, k.y};
    REQUIRE(orient(x, xg, k) == Orientation::Collinear);
    Point2 c = center_point(s, x, xg);
    CHECK(orient(x, xg, c) != Orientation::Collinear);
    SimplePolygon hull{s.kernel_hull};
    CHECK(locate_point(hull, c) == Location::Inside);
    CHECK(dist(c, k) < 0.2);
}

TEST_CASE("gamma ratios") {
    auto s = unit_circle_star();
    Point2 c{0, 0};
    CHECK(gamma(s, c, {1, 0}) == doctest::Approx(1.0));
    CHECK(gamma(s, c, {0.5, 0}) == doctest::Approx(0.25));
    CHECK(gamma(s, c, {2, 0}) == doctest::Approx(4.0));
}

TEST_CASE("modulated velocity: free space is the plain attractor") {
    Vec2 v = modulated_velocity({0, 0}, {1, 0}, {}, {}, 10.0);
    CHECK(v.x == doctest::Approx(1.0));
    CHECK(v.y == doctest::Approx(0.0));
}

TEST_CASE("modulated velocity: no inward normal component on the boundary") {
    auto s = unit_circle_star();
    std::vector<StarObstacle> stars = {s};
    // Robot on the boundary, goal straight behind the obstacle center.
    Point2 x{-1, 0};
    Point2 xg{3, 0};
    std::vector<Point2> centers = {{0, 0}};
    Vec2 v = modulated_velocity(x, xg, stars, centers, 10.0);
    Vec2 r = (x - centers[0]).normalized();
    CHECK(std::abs(v.dot(r)) < 1e-9);  // lambda_r = 0 at Gamma = 1
}

TEST_CASE("modulated velocity: near-identity far away") {
    auto s = unit_circle_star();
    std::vector<StarObstacle> stars = {s};
    std::vector<Point2> centers = {{0, 0}};
    Point2 x{-30, 4}, xg{20, -3};
    REQUIRE(gamma(s, centers[0], x) >= 100.0);
    Vec2 f = xg - x;
    Vec2 v = modulated_velocity(x, xg, stars, centers, 1e9);
    CHECK((v - f).norm() <= 0.03 * f.norm());
}

TEST_CASE("modulated velocity: inside an obstacle is rejected") {
    auto s = unit_circle_star();
    std::vector<StarObstacle> stars = {s};
    std::vector<Point2> centers = {{0, 0}};
    CHECK_THROWS_AS(modulated_velocity({0.3, 0}, {5, 0}, stars, centers, 1.0), InsideObstacle);
}

TEST_CASE("simulate: empty scene runs straight to the goal") {
    SimScenario sc;
    sc.start = {0, 0};
    sc.goal = {5, 0};
    auto trace = simulate(sc);
    CHECK(trace.reached_goal());
    // About distance / (v_max * dt) steps plus the exponential approach tail.
    CHECK(trace.steps.size() > 200);
    CHECK(trace.steps.size() < 450);
    for (size_t i = 1; i < trace.steps.size(); ++i)
        CHECK(dist(trace.steps[i].pos, trace.steps[i - 1].pos) <= 1.0 * 0.02 + 1e-9);
}

TEST_CASE("simulate: single obstacle on the path is avoided safely") {
    SimScenario sc;
    sc.start = {0, 0.15};
    sc.goal = {8, 0};
    sc.obstacles = {Obstacle{0, Ellipse{{4, 0}, 1.2, 0.9, 0.3}}};
    auto trace = simulate(sc);
    CHECK(trace.reached_goal());
    for (const auto& st : trace.steps) CHECK(st.min_gamma >= 1.0 - 1e-6);
}

TEST_CASE("simulate: randomized disjoint scenes converge") {
    Rng rng(2025);
    int attempted = 0, reached = 0;
    for (int it = 0; it < 80 && attempted < 25; ++it) {
        int n = rng.uniform_int(2, 6);
        double extent = 1.1 * std::sqrt(double(n)) + 2.0;
        SimScenario sc;
        for (int i = 0; i < n; ++i) {
            if (rng.uniform(0, 1) < 0.6)
                sc.obstacles.push_back(Obstacle{i, Ellipse{rng.point(-extent, extent),
                                                           rng.uniform(0.3, 1.0),
                                                           rng.uniform(0.3, 1.0),
                                                           rng.uniform(0, M_PI)}});
            else
                sc.obstacles.push_back(Obstacle{
                    i, testsupport::random_radial_polygon(rng, rng.uniform_int(4, 8), 0.3, 1.0,
                                                          rng.point(-extent, extent))});
        }
        std::vector<Shape> shapes;
        for (const auto& o : sc.obstacles) shapes.push_back(o.shape);
        bool ok = false;
        for (int tries = 0; tries < 200 && !ok; ++tries) {
            sc.start = rng.point(-extent - 2, extent + 2);
            sc.goal = rng.point(-extent - 2, extent + 2);
            ok = dist(sc.start, sc.goal) > extent;
            for (const auto& s : shapes)
                if (point_in_shape(s, sc.start, 1e-2) || point_in_shape(s, sc.goal, 1e-2))
                    ok = false;
        }
        if (!ok) continue;
        // Only score scenes that form a disjoint star world on the first frame.
        starworld::StarWorld world;
        try {
            world = starworld::form_star_world(sc.obstacles, sc.start, sc.goal, sc.form);
        } catch (const Error&) {
            continue;
        }
        if (world.status != starworld::StarWorld::Status::Disjoint) continue;
        ++attempted;
        PlannerParams params;
        params.max_steps = 8000;
        auto trace = simulate(sc, params);
        if (trace.reached_goal()) ++reached;
        for (const auto& st : trace.steps) CHECK(st.min_gamma >= 1.0 - 1e-6);
    }
    INFO("attempted=", attempted, " reached=", reached);
    CHECK(attempted >= 20);
    CHECK(reached >= attempted - 1);
}

TEST_CASE("center points stay valid along a trace") {
    SimScenario sc;
    sc.start = {-4, 0.05};
    sc.goal = {4, -0.02};
    sc.obstacles = {Obstacle{0, Ellipse{{0, 0.4}, 1.0, 0.8, 0.0}},
                    Obstacle{1, Ellipse{{0.6, -0.7}, 0.8, 0.6, 0.4}}};
    auto trace = simulate(sc);
    CHECK(trace.reached_goal());
}
