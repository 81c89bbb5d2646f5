#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "starworlds/starworld/starworld.hpp"

namespace starworlds::planner {

using geom::Orientation;
using geom::Point2;
using geom::Vec2;
using starshape::StarObstacle;
using starworld::FormOptions;
using starworld::Obstacle;
using starworld::StarWorld;

// Center point x_c in int CH(K), kept off the line through robot and goal so
// the modulated field has no spurious equilibria on the attractor line.
Point2 center_point(const StarObstacle& s, const Point2& x, const Point2& x_g,
                    Orientation preferred_side = Orientation::CW);

// Obstacle function: 1 on the boundary, <1 inside, growing quadratically with
// the center distance ratio.
double gamma(const StarObstacle& s, const Point2& c, const Point2& p);

// Modulated attractor dynamics: per-obstacle modulation matrices with
// eigenvalues (1 - 1/Gamma) along the center direction and (1 + 1/Gamma)
// along the tangent, blended by the standard product weights. Speed clamped
// to v_max. Throws InsideObstacle when some Gamma < 1.
Vec2 modulated_velocity(const Point2& x, const Point2& x_g,
                        const std::vector<StarObstacle>& stars,
                        const std::vector<Point2>& centers, double v_max);

struct PlannerParams {
    double dt = 0.02;
    double v_max = 1.0;
    double eps_goal = 0.05;
    int max_steps = 10000;
    int stall_window = 100;
    bool starify = true;  // false feeds the raw obstacles to the planner
};

struct StepRecord {
    double t = 0;
    Point2 pos;
    int n_stars = 0;
    bool fallback = false;
    int form_iterations = 0;
    double form_ms = 0;
    double min_gamma = 0;
};

enum class Termination { GoalReached, MaxSteps, Stalled };

struct SimulationTrace {
    std::vector<StepRecord> steps;
    Termination termination = Termination::MaxSteps;
    double final_distance = 0;

    bool reached_goal() const { return termination == Termination::GoalReached; }
};

struct SimScenario {
    std::vector<Obstacle> obstacles;
    Point2 start;
    Point2 goal;
    FormOptions form;
};

// Per-frame hook for rendering and diagnostics.
using FrameObserver = std::function<void(int step, const StarWorld& world,
                                         const std::vector<Obstacle>& obstacles,
                                         const Point2& x)>;

// Euler rollout: advance moving obstacles, rebuild the star world with the
// previous frame for kernel reuse, and integrate the modulated velocity.
SimulationTrace simulate(const SimScenario& scenario, const PlannerParams& params = {},
                         const FrameObserver& observer = {});

}  // namespace starworlds::planner
