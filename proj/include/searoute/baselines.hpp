#ifndef SEAROUTE_BASELINES_HPP
#define SEAROUTE_BASELINES_HPP

#include "searoute/archipelago.hpp"
#include "searoute/convergence.hpp"
#include "searoute/penalty.hpp"
#include "searoute/problem.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace searoute {

struct SaParams {
    double initial_temperature = 1.0;
    double cooling = 0.95;          // geometric factor per temperature stage
    int steps_per_temperature = 50;
    int step_cells = 2;             // proposal magnitude in decoding cells
    int resolution = 8;             // bits per ordinate
    double lambda0 = 1.0;
    double anneal_rate = 0.1;       // lambda growth per stage, mirroring the GA
    std::uint64_t max_evaluations = 100000;
    double min_temperature = 1e-6;
};

struct SolverResult {
    bool feasible = false;
    Chromosome chromosome;
    Evaluation evaluation;
    std::uint64_t evaluations = 0;
    double wall_ms = 0.0;
    ConvergenceLog log;
    std::vector<TracePoint> feasible_trace;
};

// Metropolis annealing over the same binary encoding and generalized cost as
// the evolutionary solver: single-ordinate cell perturbations, geometric
// cooling, lambda annealed once per temperature stage.
SolverResult simulated_annealing(const ProblemContext& problem, const SaParams& params,
                                 std::uint64_t seed);

struct PathResult {
    bool found = false;
    std::vector<Vec2> polyline;
    double length = 0.0;
};

// Shortest obstacle-avoiding polyline through the visibility graph over the
// (clearance-inflated) obstacle vertices. The geometric lower bound for
// alpha = 1 in a uniform environment.
PathResult shortest_feasible_path(std::span<const Obstacle> obstacles, Vec2 start, Vec2 end,
                                  double clearance = 0.0);

// One side choice (above/below the route corridor) per obstacle between the
// endpoints, with a seed route threading those sides.
struct BypassClass {
    std::vector<bool> above; // per obstacle, sorted by x-span
    std::vector<double> seed_ordinates;
};

struct BypassOptions {
    int cap = 14;          // refuse beyond 2^cap classes
    double clearance = 0.0;
    double margin = 0.0;   // extra standoff added to the threaded envelopes
};

// All 2^N side-choice classes for the N obstacles inside the x-span, each
// with a seed route. Refuses when N exceeds the cap: the class count doubles
// per obstacle, which is exactly why this approach breaks down on long routes.
std::vector<BypassClass> enumerate_bypasses(std::span<const Obstacle> obstacles, double span,
                                            int free_waypoints, const BypassOptions& options = {});

struct BypassSolverParams {
    std::size_t population_size = 20;
    std::uint64_t generations = 40; // per class
    int resolution = 8;
    int init_attempts = 5;          // multiples of the population to draw for a feasible seed pool
    GaParams ga;
};

// Per class, evolves a small death-penalty population seeded near the class
// seed route (infeasible offspring are discarded outright) and returns the
// best feasible route over all classes.
SolverResult bypass_solver(std::span<const BypassClass> classes, const ProblemContext& problem,
                           const BypassSolverParams& params, std::uint64_t seed);

// Exact argmin over every chromosome at the given lambda; ties resolve to the
// lexicographically smallest bit string. Refuses above 24 total bits.
SolverResult exhaustive_search(const ProblemContext& problem, int resolution, double lambda);

} // namespace searoute

#endif
