#pragma once

#include <cstdint>

#include "starworlds/scenario/scenario.hpp"

namespace starworlds::scenario {

// Deterministic generator (splitmix64-based) so scenes are reproducible
// across platforms and independently addressable per (seed, index).
struct SceneRng {
    uint64_t state;
    explicit SceneRng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ull;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * (1.0 / 9007199254740992.0); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int lo, int hi) { return lo + int(next() % uint64_t(hi - lo + 1)); }
    double normal(double mean, double sd);
};

// Random convex polygon with n vertices inside [0, box] x [0, box]
// (Valtr's construction).
geom::SimplePolygon valtr_polygon(SceneRng& rng, int n, double box);

// Random scene following the evaluation protocol: half ellipses with
// normal-distributed semi-axes, half 10-vertex convex polygons in 2x2 boxes,
// scene side scaled for ~25% obstacle coverage, robot and goal rejection-
// sampled in free space. Deterministic per seed.
Scenario generate_random_scene(int n_obstacles, uint64_t seed);

}  // namespace starworlds::scenario
