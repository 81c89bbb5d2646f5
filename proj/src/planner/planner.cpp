#include <chrono>
#include <cmath>

#include "starworlds/errors.hpp"
#include "starworlds/planner/planner.hpp"

namespace starworlds::planner {

using namespace geom;

Point2 center_point(const StarObstacle& s, const Point2& x, const Point2& x_g,
                    Orientation preferred_side) {
    Point2 c = s.kernel_centroid();
    if (orient(x, x_g, c) != Orientation::Collinear) return c;
    // Nudge off the line, staying inside CH(K).
    double clearance = 1e300;
    const auto& hull = s.kernel_hull;
    if (hull.size() >= 3) {
        for (size_t i = 0; i < hull.size(); ++i) {
            const Point2& a = hull[i];
            const Point2& b = hull[(i + 1) % hull.size()];
            Vec2 d = b - a;
            double t = std::clamp((c - a).dot(d) / std::max(d.norm2(), 1e-300), 0.0, 1.0);
            clearance = std::min(clearance, dist(c, a + d * t));
        }
    } else {
        clearance = 0;
    }
    if (!(clearance > 0) || clearance > 1e200) return c;
    Vec2 n = (x_g - x).perp().normalized();
    if (preferred_side == Orientation::CW) n = Vec2{0, 0} - n;
    return c + n * (0.5 * clearance);
}

double gamma(const StarObstacle& s, const Point2& c, const Point2& p) {
    Vec2 d = p - c;
    if (d.norm() <= eps_for(std::max(1.0, c.norm()))) return 0.0;
    // star_boundary_param is in units of |d|, so the distance ratio
    // |p - c| / |b - c| is simply 1 / t_b.
    double tb = starshape::star_boundary_param(s, c, d);
    double ratio = 1.0 / std::max(tb, 1e-300);
    return ratio * ratio;
}

Vec2 modulated_velocity(const Point2& x, const Point2& x_g,
                        const std::vector<StarObstacle>& stars,
                        const std::vector<Point2>& centers, double v_max) {
    Vec2 f = x_g - x;
    auto clamp = [&](Vec2 v) {
        double n = v.norm();
        return n > v_max ? v * (v_max / n) : v;
    };
    if (stars.empty()) return clamp(f);

    const size_t n = stars.size();
    std::vector<double> g(n);
    for (size_t i = 0; i < n; ++i) {
        g[i] = gamma(stars[i], centers[i], x);
        if (g[i] < 1.0 - 1e-9) throw InsideObstacle("robot is inside a star obstacle");
        g[i] = std::max(g[i], 1.0);
    }
    // Product weights: w_i -> 1 as Gamma_i -> 1, -> 0 when another obstacle
    // touches the robot.
    std::vector<double> w(n);
    double wsum = 0;
    for (size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (size_t j = 0; j < n; ++j)
            if (j != i) prod *= (g[j] - 1.0);
        double den = (g[i] - 1.0) + prod;
        w[i] = den > 0 ? prod / den : (g[i] - 1.0 <= 0 ? 1.0 : 0.0);
        wsum += w[i];
    }
    Vec2 out{0, 0};
    if (wsum <= 0) {
        for (auto& wi : w) wi = 1.0 / double(n);
        wsum = 1.0;
    }
    for (size_t i = 0; i < n; ++i) {
        Vec2 r = (x - centers[i]).normalized();
        Vec2 e = r.perp();
        double lr = 1.0 - 1.0 / g[i];
        double le = 1.0 + 1.0 / g[i];
        Vec2 mi = r * (lr * r.dot(f)) + e * (le * e.dot(f));
        out += mi * (w[i] / wsum);
    }
    return clamp(out);
}

namespace {

StarWorld raw_star_world(const std::vector<Obstacle>& obstacles) {
    StarWorld world;
    world.status = StarWorld::Status::Disjoint;
    world.iterations = 0;
    for (const auto& o : obstacles) {
        starshape::KernelSpec k;
        if (const auto* e = std::get_if<Ellipse>(&o.shape)) {
            k.points = {e->center};
        } else {
            const auto& p = std::get<SimplePolygon>(o.shape);
            auto ker = polygon_kernel(p);
            k.points = {ker ? ker->poly.centroid() : p.centroid()};
        }
        StarObstacle star;
        star.kernel_spec = k;
        star.kernel_hull = k.points;
        if (const auto* e = std::get_if<Ellipse>(&o.shape))
            star.pieces.push_back({starshape::StarPiece::Kind::OriginalConvex, *e});
        else
            star.pieces.push_back({starshape::StarPiece::Kind::OriginalConvex,
                                   ConvexPolygon{std::get<SimplePolygon>(o.shape)}});
        world.cluster_map[o.id].push_back(world.obstacles.size());
        world.obstacles.push_back(std::move(star));
    }
    return world;
}

Shape moved_shape(const Shape& s, const Vec2& delta) {
    if (const auto* e = std::get_if<Ellipse>(&s)) {
        Ellipse out = *e;
        out.center += delta;
        return out;
    }
    SimplePolygon out = std::get<SimplePolygon>(s);
    for (auto& v : out.v) v += delta;
    return out;
}

}  // namespace

SimulationTrace simulate(const SimScenario& scenario, const PlannerParams& params,
                         const FrameObserver& observer) {
    SimulationTrace trace;
    std::vector<Obstacle> obstacles = scenario.obstacles;
    Point2 x = scenario.start;
    StarWorld world;
    bool have_world = false;
    double t = 0;

    for (int step = 0; step < params.max_steps; ++step) {
        if (step > 0) {
            for (auto& o : obstacles)
                if (o.velocity.norm() > 0) o.shape = moved_shape(o.shape, o.velocity * params.dt);
        }
        auto t0 = std::chrono::steady_clock::now();
        if (params.starify) {
            world = form_star_world(obstacles, x, scenario.goal, scenario.form,
                                    have_world ? &world : nullptr);
            have_world = true;
        } else if (!have_world || std::any_of(obstacles.begin(), obstacles.end(),
                                              [](const Obstacle& o) { return o.velocity.norm() > 0; })) {
            world = raw_star_world(obstacles);
            have_world = true;
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                        .count();
        if (observer) observer(step, world, obstacles, x);

        std::vector<Point2> centers;
        centers.reserve(world.obstacles.size());
        for (const auto& s : world.obstacles) centers.push_back(center_point(s, x, scenario.goal));

        Vec2 v = modulated_velocity(x, scenario.goal, world.obstacles, centers, params.v_max);

        StepRecord rec;
        rec.t = t;
        rec.pos = x;
        rec.n_stars = int(world.obstacles.size());
        rec.fallback = world.status == StarWorld::Status::IntersectingFallback;
        rec.form_iterations = world.iterations;
        rec.form_ms = ms;
        rec.min_gamma = 1e300;
        for (size_t i = 0; i < world.obstacles.size(); ++i)
            rec.min_gamma = std::min(rec.min_gamma, gamma(world.obstacles[i], centers[i], x));
        if (world.obstacles.empty()) rec.min_gamma = 1e300;
        trace.steps.push_back(rec);

        if (dist(x, scenario.goal) < params.eps_goal) {
            trace.termination = Termination::GoalReached;
            break;
        }
        if (step >= params.stall_window) {
            const Point2& old = trace.steps[trace.steps.size() - 1 - params.stall_window].pos;
            if (dist(x, old) < eps_for(std::max(1.0, x.norm()))) {
                trace.termination = Termination::Stalled;
                break;
            }
        }
        // Euler step with a penetration guard: the explicit step can cut a
        // corner at a concave piece junction, so shrink and finally project
        // back onto the boundary along the center ray.
        double h = params.dt;
        Point2 next = x + v * h;
        auto min_gamma_at = [&](const Point2& q) {
            double m = 1e300;
            for (size_t i = 0; i < world.obstacles.size(); ++i)
                m = std::min(m, gamma(world.obstacles[i], centers[i], q));
            return m;
        };
        for (int sub = 0; sub < 4 && min_gamma_at(next) < 1.0; ++sub) {
            h *= 0.5;
            next = x + v * h;
        }
        if (min_gamma_at(next) < 1.0) {
            for (size_t i = 0; i < world.obstacles.size(); ++i) {
                if (gamma(world.obstacles[i], centers[i], next) >= 1.0) continue;
                Vec2 d = next - centers[i];
                double tb = starshape::star_boundary_param(world.obstacles[i], centers[i], d);
                next = centers[i] + d * (tb * (1.0 + 1e-7));
            }
            // Overlapping raw obstacles can make the projection bounce from
            // one region into another; holding position is the safe outcome.
            if (min_gamma_at(next) < 1.0) next = x;
        }
        x = next;
        t += params.dt;
    }
    trace.final_distance = dist(x, scenario.goal);
    if (trace.final_distance < params.eps_goal) trace.termination = Termination::GoalReached;
    return trace;
}

}  // namespace starworlds::planner
