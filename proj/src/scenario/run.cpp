#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "starworlds/errors.hpp"
#include "starworlds/log.hpp"
#include "starworlds/scenario/random_scene.hpp"
#include "starworlds/scenario/run.hpp"
#include "starworlds/scenario/svg.hpp"

namespace starworlds::scenario {

using namespace geom;
using starworld::StarWorld;

namespace {

AABB view_box(const std::vector<Obstacle>& obstacles, const Point2& x, const Point2& x_g) {
    AABB box = AABB::of(x);
    box.expand(x_g);
    for (const auto& o : obstacles) box.expand(shape_bbox(o.shape));
    return box.inflated(0.08 * std::max(box.diameter(), 1.0));
}

std::string world_geometry_dump(const StarWorld& world) {
    std::ostringstream os;
    os << "status "
       << (world.status == StarWorld::Status::Disjoint ? "disjoint" : "intersecting-fallback")
       << "\n";
    os << "iterations " << world.iterations << "\n";
    os << "stars " << world.obstacles.size() << "\n";
    for (size_t i = 0; i < world.obstacles.size(); ++i) {
        const auto& s = world.obstacles[i];
        os << "star " << i << " pieces " << s.pieces.size() << " kernel";
        for (const auto& k : s.kernel_spec.points)
            os << " " << format_double(k.x) << " " << format_double(k.y);
        os << "\n";
        for (const auto& piece : s.pieces) {
            if (const auto* e = piece.ellipse()) {
                os << "  ellipse " << format_double(e->center.x) << " "
                   << format_double(e->center.y) << " " << format_double(e->a) << " "
                   << format_double(e->b) << " " << format_double(e->rotation) << "\n";
            } else {
                os << "  polygon";
                for (const auto& v : piece.polygon()->verts())
                    os << " " << format_double(v.x) << " " << format_double(v.y);
                os << "\n";
            }
        }
    }
    return os.str();
}

}  // namespace

void write_world_svg(const std::string& path, const StarWorld& world,
                     const std::vector<Obstacle>& originals, const Point2& x, const Point2& x_g,
                     const std::vector<Point2>& trajectory) {
    AABB box = view_box(originals, x, x_g);
    for (const auto& s : world.obstacles) box.expand(s.bbox());
    SvgWriter svg(box);
    double mark = 0.018 * box.diameter();
    // Star obstacles: one color per star; hull region under the originals.
    for (size_t i = 0; i < world.obstacles.size(); ++i) {
        const auto& s = world.obstacles[i];
        svg.polygon(s.boundary().v, SvgWriter::palette(i), "#333333", 0.55, mark * 0.12);
    }
    for (const auto& o : originals) {
        if (const auto* e = std::get_if<Ellipse>(&o.shape))
            svg.ellipse(*e, "#9e9e9e", "#555555", 0.9, mark * 0.12);
        else
            svg.polygon(std::get<SimplePolygon>(o.shape).v, "#9e9e9e", "#555555", 0.9,
                        mark * 0.12);
    }
    // Kernel hulls CH(K).
    for (const auto& s : world.obstacles) {
        if (s.kernel_hull.size() >= 3)
            svg.polygon(s.kernel_hull, "#1565c0", "#0d47a1", 0.9, mark * 0.1);
        else if (!s.kernel_hull.empty())
            svg.circle(s.kernel_hull[0], mark * 0.4, "#1565c0");
    }
    if (trajectory.size() >= 2) svg.polyline(trajectory, "#fbc02d", mark * 0.25, "0.1,0.06");
    svg.circle(x, mark, "#212121");
    svg.star_marker(x_g, 1.6 * mark, "#212121");
    write_file_atomic(path, svg.finish());
}

StarifyResult starify_once(const Scenario& s, const std::string& out_dir) {
    StarifyResult res;
    auto obstacles = s.inflated();
    res.world = starworld::form_star_world(obstacles, s.robot, s.goal, s.form);
    res.report = starworld::validate_star_world(res.world, obstacles, s.robot, s.goal);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file_atomic(out_dir + "/report.txt", res.report.to_string());
        if (!res.report.pass())
            throw Error("star world failed validation; see " + out_dir + "/report.txt");
        write_file_atomic(out_dir + "/world.txt", world_geometry_dump(res.world));
        write_world_svg(out_dir + "/world.svg", res.world, obstacles, s.robot, s.goal);
    } else if (!res.report.pass()) {
        throw Error("star world failed validation:\n" + res.report.to_string());
    }
    return res;
}

planner::SimulationTrace run_simulate(const Scenario& s, const std::string& out_dir,
                                      int svg_stride, bool starify) {
    planner::SimScenario sim;
    sim.obstacles = s.inflated();
    sim.start = s.robot;
    sim.goal = s.goal;
    sim.form = s.form;
    planner::PlannerParams params = s.planner;
    params.starify = starify;

    planner::FrameObserver observer;
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        observer = [&](int step, const StarWorld& world, const std::vector<Obstacle>& frame_obs,
                       const Point2& x) {
            if (svg_stride <= 0 || step % svg_stride != 0) return;
            char name[64];
            std::snprintf(name, sizeof(name), "/frame_%06d.svg", step);
            write_world_svg(out_dir + name, world, frame_obs, x, s.goal);
        };
    }
    auto trace = planner::simulate(sim, params, observer);

    if (!out_dir.empty()) {
        std::ostringstream csv;
        csv << "t,x,y\n";
        for (const auto& st : trace.steps)
            csv << format_double(st.t) << "," << format_double(st.pos.x) << ","
                << format_double(st.pos.y) << "\n";
        write_file_atomic(out_dir + "/trajectory.csv", csv.str());
        std::vector<Point2> path;
        path.reserve(trace.steps.size());
        for (const auto& st : trace.steps) path.push_back(st.pos);
        // Final frame with the trajectory overlay.
        auto obstacles = s.inflated();
        StarWorld final_world;
        try {
            final_world =
                starworld::form_star_world(obstacles, trace.steps.back().pos, s.goal, s.form);
        } catch (const Error&) {
            // Moving obstacles may have swallowed the last pose; draw without stars.
        }
        write_world_svg(out_dir + "/final.svg", final_world, obstacles, trace.steps.back().pos,
                        s.goal, path);
    }
    return trace;
}

uint64_t bench_scene_seed(uint64_t seed, int index) {
    return seed * 1000003ull + uint64_t(index);
}

BenchReport bench(int n_scenes, int min_obs, int max_obs, uint64_t seed) {
    BenchReport report;
    for (int i = 0; i < n_scenes; ++i) {
        uint64_t scene_seed = bench_scene_seed(seed, i);
        SceneRng pick(scene_seed ^ 0x5bf03635ull);
        int n = min_obs >= max_obs ? min_obs : pick.uniform_int(min_obs, max_obs);
        Scenario s;
        try {
            s = generate_random_scene(n, scene_seed);
        } catch (const Error& e) {
            log(LogLevel::Warn, "bench scene %d generation failed: %s", i, e.what());
            ++report.skipped;
            continue;
        }
        BenchRow row;
        row.scene = i;
        row.n = n;
        try {
            (void)starworld::form_star_world(s.obstacles, s.robot, s.goal, s.form);  // warm
            auto t0 = std::chrono::steady_clock::now();
            auto world = starworld::form_star_world(s.obstacles, s.robot, s.goal, s.form);
            row.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                               t0)
                         .count();
            row.iterations = world.iterations;
            row.fallback = world.status == StarWorld::Status::IntersectingFallback;
        } catch (const Error& e) {
            log(LogLevel::Warn, "bench scene %d failed: %s", i, e.what());
            ++report.skipped;
            continue;
        }
        report.rows.push_back(row);
    }
    return report;
}

std::string BenchReport::to_csv() const {
    std::ostringstream os;
    os << "scene,n,M,status,ms\n";
    for (const auto& r : rows)
        os << r.scene << "," << r.n << "," << r.iterations << ","
           << (r.fallback ? "intersecting-fallback" : "disjoint") << ","
           << format_double(std::round(r.ms * 1000.0) / 1000.0) << "\n";
    return os.str();
}

std::map<int, int> BenchReport::iteration_histogram() const {
    std::map<int, int> h;
    for (const auto& r : rows) ++h[r.iterations];
    return h;
}

double BenchReport::median_ms_for(int n) const {
    std::vector<double> ms;
    for (const auto& r : rows)
        if (r.n == n) ms.push_back(r.ms);
    if (ms.empty()) return 0;
    std::sort(ms.begin(), ms.end());
    return ms[ms.size() / 2];
}

std::string BenchReport::summary() const {
    std::map<int, std::vector<double>> buckets;
    for (const auto& r : rows) buckets[r.n].push_back(r.ms);
    std::ostringstream os;
    os << "scenes=" << rows.size() << " skipped=" << skipped << "\n";
    os << "iteration histogram:";
    for (const auto& [m, c] : iteration_histogram()) os << " M=" << m << ":" << c;
    os << "\n";
    for (auto& [n, ms] : buckets) {
        std::sort(ms.begin(), ms.end());
        double mean = 0, mx = 0;
        for (double v : ms) { mean += v; mx = std::max(mx, v); }
        mean /= double(ms.size());
        double sd = 0;
        for (double v : ms) sd += (v - mean) * (v - mean);
        sd = std::sqrt(sd / double(ms.size()));
        os << "n=" << n << " count=" << ms.size() << " median=" << format_double(ms[ms.size() / 2])
           << "ms mean=" << format_double(mean) << "ms sd=" << format_double(sd)
           << "ms max=" << format_double(mx) << "ms\n";
    }
    return os.str();
}

}  // namespace starworlds::scenario
