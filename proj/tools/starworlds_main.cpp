#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "starworlds/errors.hpp"
#include "starworlds/scenario/random_scene.hpp"
#include "starworlds/scenario/run.hpp"
#include "starworlds/scenario/svg.hpp"

using namespace starworlds;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitIterationLimit = 4;

int classify_exit(const Error& e) {
    if (dynamic_cast<const RobotInsideObstacle*>(&e) ||
        dynamic_cast<const GoalInsideObstacle*>(&e) || dynamic_cast<const InsideObstacle*>(&e))
        return kExitPrecondition;
    if (dynamic_cast<const IterationLimit*>(&e)) return kExitIterationLimit;
    return kExitParse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"starworlds: reshape intersecting obstacles into a disjoint star world"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir = "out", out_file;
    bool exclude_points = false, no_starify = false;
    double dt = -1, vmax = -1;
    int max_steps = -1, svg_stride = 50;
    int gen_n = 5;
    uint64_t seed = 0;
    int bench_scenes = 100, min_obs = 5, max_obs = 50;

    auto* starify = app.add_subcommand("starify", "form the star world once and emit artifacts");
    starify->add_option("scenario", scenario_path, "scenario file")->required();
    starify->add_flag("--exclude-obstacle-points", exclude_points,
                      "add per-obstacle excluding points");
    starify->add_option("--out", out_dir, "output directory");

    auto* simulate = app.add_subcommand("simulate", "run the reactive planner to the goal");
    simulate->add_option("scenario", scenario_path, "scenario file")->required();
    simulate->add_option("--dt", dt, "integration step [s]");
    simulate->add_option("--vmax", vmax, "speed limit");
    simulate->add_option("--max-steps", max_steps, "step budget");
    simulate->add_option("--out", out_dir, "output directory");
    simulate->add_option("--svg-stride", svg_stride, "frames between SVG snapshots");
    simulate->add_flag("--no-starify", no_starify, "feed raw obstacles to the planner");

    auto* gen = app.add_subcommand("gen", "generate a random scene");
    gen->add_option("--n", gen_n, "obstacle count")->required();
    gen->add_option("--seed", seed, "rng seed");
    gen->add_option("--out", out_file, "output scenario file")->required();

    auto* bench_cmd = app.add_subcommand("bench", "time star world formation over random scenes");
    bench_cmd->add_option("--scenes", bench_scenes, "number of scenes");
    bench_cmd->add_option("--min-obs", min_obs, "minimum obstacle count");
    bench_cmd->add_option("--max-obs", max_obs, "maximum obstacle count");
    bench_cmd->add_option("--seed", seed, "rng seed");
    bench_cmd->add_option("--out", out_file, "output CSV")->required();

    auto* validate = app.add_subcommand("validate", "parse and check a scenario file");
    validate->add_option("scenario", scenario_path, "scenario file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (starify->parsed()) {
            scenario::Scenario s = scenario::load_scenario(scenario_path);
            if (exclude_points) s.form.exclude_obstacle_points = true;
            auto res = scenario::starify_once(s, out_dir);
            std::printf("%s", res.report.to_string().c_str());
            return res.report.pass() ? 0 : kExitParse;
        }
        if (simulate->parsed()) {
            scenario::Scenario s = scenario::load_scenario(scenario_path);
            if (dt > 0) s.planner.dt = dt;
            if (vmax > 0) s.planner.v_max = vmax;
            if (max_steps > 0) s.planner.max_steps = max_steps;
            auto trace = scenario::run_simulate(s, out_dir, svg_stride, !no_starify);
            const char* term = trace.termination == planner::Termination::GoalReached ? "goal"
                               : trace.termination == planner::Termination::Stalled  ? "stalled"
                                                                                     : "max-steps";
            std::printf("termination=%s steps=%zu final_distance=%s\n", term, trace.steps.size(),
                        scenario::format_double(trace.final_distance).c_str());
            return 0;
        }
        if (gen->parsed()) {
            auto s = scenario::generate_random_scene(gen_n, seed);
            scenario::save_scenario(s, out_file);
            std::printf("wrote %s (%zu obstacles)\n", out_file.c_str(), s.obstacles.size());
            return 0;
        }
        if (bench_cmd->parsed()) {
            auto report = scenario::bench(bench_scenes, min_obs, max_obs, seed);
            scenario::write_file_atomic(out_file, report.to_csv());
            std::printf("%s", report.summary().c_str());
            return 0;
        }
        if (validate->parsed()) {
            auto s = scenario::load_scenario(scenario_path);
            std::printf("ok: %zu obstacles, robot (%s, %s), goal (%s, %s)\n", s.obstacles.size(),
                        scenario::format_double(s.robot.x).c_str(),
                        scenario::format_double(s.robot.y).c_str(),
                        scenario::format_double(s.goal.x).c_str(),
                        scenario::format_double(s.goal.y).c_str());
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify_exit(e);
    }
    return 0;
}
