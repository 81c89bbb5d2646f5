#pragma once

#include <map>
#include <string>

#include "starworlds/scenario/scenario.hpp"

namespace starworlds::scenario {

struct StarifyResult {
    starworld::StarWorld world;
    starworld::ValidationReport report;
};

// Form the star world once, validate it, and (out_dir nonempty) emit the
// geometry dump, validation report and SVG. A failing validation still writes
// the report, then throws.
StarifyResult starify_once(const Scenario& s, const std::string& out_dir = "");

// Simulate the scenario; out_dir nonempty emits trajectory.csv and per-frame
// SVGs every svg_stride steps.
planner::SimulationTrace run_simulate(const Scenario& s, const std::string& out_dir = "",
                                      int svg_stride = 50, bool starify = true);

struct BenchRow {
    int scene = 0;
    int n = 0;
    int iterations = 0;
    bool fallback = false;
    double ms = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    int skipped = 0;  // scenes whose generation failed

    std::string to_csv() const;
    std::string summary() const;
    std::map<int, int> iteration_histogram() const;
    double median_ms_for(int n) const;
};

// Generate scenes with obstacle counts in [min_obs, max_obs], time
// form_star_world per scene (one warmup, one timed run) and collect rows.
// Scene k is reproducible in isolation from (seed, k).
BenchReport bench(int n_scenes, int min_obs, int max_obs, uint64_t seed);

uint64_t bench_scene_seed(uint64_t seed, int index);

void write_world_svg(const std::string& path, const starworld::StarWorld& world,
                     const std::vector<Obstacle>& originals, const Point2& x, const Point2& x_g,
                     const std::vector<Point2>& trajectory = {});

}  // namespace starworlds::scenario
