#include <algorithm>
#include <cmath>

#include "starworlds/errors.hpp"
#include "starworlds/scenario/random_scene.hpp"

namespace starworlds::scenario {

using namespace geom;

double SceneRng::normal(double mean, double sd) {
    double u1 = std::max(uniform(), 1e-12);
    double u2 = uniform();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

SimplePolygon valtr_polygon(SceneRng& rng, int n, double box) {
    auto deltas = [&](std::vector<double>& out) {
        std::vector<double> vals(n);
        for (auto& v : vals) v = rng.uniform(0, box);
        std::sort(vals.begin(), vals.end());
        double lo = vals.front(), hi = vals.back();
        // Split interior points into two chains.
        double last_top = lo, last_bot = lo;
        for (int i = 1; i + 1 < n; ++i) {
            if (rng.next() & 1) {
                out.push_back(vals[i] - last_top);
                last_top = vals[i];
            } else {
                out.push_back(last_bot - vals[i]);
                last_bot = vals[i];
            }
        }
        out.push_back(hi - last_top);
        out.push_back(last_bot - hi);
    };
    std::vector<double> dx, dy;
    deltas(dx);
    deltas(dy);
    // Random pairing of the y-deltas with the x-deltas.
    for (size_t i = dy.size(); i > 1; --i)
        std::swap(dy[i - 1], dy[rng.next() % i]);
    std::vector<Vec2> vecs(dx.size());
    for (size_t i = 0; i < dx.size(); ++i) vecs[i] = {dx[i], dy[i]};
    std::sort(vecs.begin(), vecs.end(),
              [](const Vec2& a, const Vec2& b) { return a.angle() < b.angle(); });
    SimplePolygon poly;
    Point2 cur{0, 0};
    double minx = 0, miny = 0;
    for (const auto& v : vecs) {
        poly.v.push_back(cur);
        cur += v;
        minx = std::min(minx, cur.x);
        miny = std::min(miny, cur.y);
    }
    for (auto& p : poly.v) p -= Vec2{minx, miny};
    // Collinear chain links can duplicate directions; normalize defensively.
    return make_simple_polygon(poly.v, /*allow_cw_fix=*/true);
}

namespace {

// Mean area of a 10-vertex Valtr polygon in a 2x2 box, measured over
// 2*10^5 samples.
constexpr double kMeanValtrArea = 1.826;

bool in_free_space(const std::vector<Obstacle>& obstacles, const Point2& p, double margin) {
    for (const auto& o : obstacles) {
        if (const auto* e = std::get_if<Ellipse>(&o.shape)) {
            Ellipse grown = *e;
            grown.a += margin;
            grown.b += margin;
            if (grown.contains(p)) return false;
        } else {
            const auto& poly = std::get<SimplePolygon>(o.shape);
            if (in_polygon(poly, p)) return false;
            double best = 1e300;
            for (size_t i = 0; i < poly.size(); ++i) {
                Segment s = poly.edge(i);
                Vec2 d = s.b - s.a;
                double t = std::clamp((p - s.a).dot(d) / d.norm2(), 0.0, 1.0);
                best = std::min(best, dist(p, s.a + d * t));
            }
            if (best < margin) return false;
        }
    }
    return true;
}

}  // namespace

Scenario generate_random_scene(int n_obstacles, uint64_t seed) {
    if (n_obstacles < 1) throw MalformedInput("need at least one obstacle");
    SceneRng rng(seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);

    int n_ellipses = (n_obstacles + 1) / 2;
    int n_polygons = n_obstacles / 2;
    double expected_area = n_ellipses * M_PI + n_polygons * kMeanValtrArea;
    double side = std::sqrt(expected_area / 0.25);

    Scenario s;
    s.seed = seed;
    for (int i = 0; i < n_ellipses; ++i) {
        Obstacle o;
        o.id = i;
        double a = std::max(0.1, rng.normal(1.0, 0.2));
        double b = std::max(0.1, rng.normal(1.0, 0.2));
        o.shape = Ellipse{{rng.uniform(0, side), rng.uniform(0, side)}, a, b,
                          rng.uniform(0, M_PI)};
        s.obstacles.push_back(std::move(o));
    }
    for (int i = 0; i < n_polygons; ++i) {
        Obstacle o;
        o.id = n_ellipses + i;
        SimplePolygon poly = valtr_polygon(rng, 10, 2.0);
        Vec2 shift{rng.uniform(0, side - 2.0), rng.uniform(0, side - 2.0)};
        for (auto& v : poly.v) v += shift;
        o.shape = std::move(poly);
        s.obstacles.push_back(std::move(o));
    }

    double margin = 1e-3 * side;
    auto place = [&](const char* what) {
        for (int tries = 0; tries < 10000; ++tries) {
            Point2 p{rng.uniform(0, side), rng.uniform(0, side)};
            if (in_free_space(s.obstacles, p, margin)) return p;
        }
        throw PlacementFailure(std::string("cannot place ") + what + " in free space");
    };
    s.robot = place("robot");
    for (int tries = 0;; ++tries) {
        s.goal = place("goal");
        if (dist(s.robot, s.goal) > 0.05 * side) break;
        if (tries > 100) throw PlacementFailure("cannot separate robot and goal");
    }
    return s;
}

}  // namespace starworlds::scenario
