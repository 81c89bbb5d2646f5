#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "starworlds/planner/planner.hpp"
#include "starworlds/starworld/starworld.hpp"

namespace starworlds::scenario {

using geom::Point2;
using planner::PlannerParams;
using starworld::FormOptions;
using starworld::Obstacle;

// A workspace description: obstacles with optional velocities, robot start,
// goal, inflation radius and solver/planner options. Serialized as a
// line-delimited text format (see docs in the repo README):
//
//   starworlds 1
//   seed <u64>
//   robot <x> <y>
//   goal <x> <y>
//   inflation <r>
//   kernel_side <l>
//   exclude_obstacle_points <0|1>
//   max_iterations <n>
//   dt <s> / vmax <v> / max_steps <n> / eps_goal <d>
//   ellipse <id> <cx> <cy> <a> <b> <rot> [<vx> <vy>]
//   polygon <id> <x1> <y1> ... <xn> <yn> [vel <vx> <vy>]
struct Scenario {
    uint64_t seed = 0;
    Point2 robot;
    Point2 goal;
    double inflation = 0.0;
    FormOptions form;
    PlannerParams planner;
    std::vector<Obstacle> obstacles;

    // Obstacles grown by the inflation radius (robot radius): ellipse
    // semi-axes extended by r, polygons offset with a 16-gon disc.
    std::vector<Obstacle> inflated() const;
};

Scenario load_scenario(const std::string& path);
Scenario parse_scenario(const std::string& text, const std::string& name = "<string>");
void save_scenario(const Scenario& s, const std::string& path);
std::string serialize_scenario(const Scenario& s);

// Shortest round-trip decimal representation.
std::string format_double(double v);

geom::SimplePolygon inflate_polygon(const geom::SimplePolygon& p, double r, int disc_segments = 16);

}  // namespace starworlds::scenario
