#ifndef SEAROUTE_ARCHIPELAGO_HPP
#define SEAROUTE_ARCHIPELAGO_HPP

#include "searoute/convergence.hpp"
#include "searoute/evo_core.hpp"
#include "searoute/problem.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace searoute {

struct IslandConfig {
    int resolution = 8;              // bits per ordinate
    std::size_t population_size = 40;
    double anneal_rate = 0.1;        // per-generation fractional lambda increase
    double lambda0 = 1.0;
    int migration_interval = 10;     // generations between model publications
    int level = 0;                   // position in the resolution hierarchy
};

// Hierarchical island network: models may only migrate toward islands with
// equal or finer resolution, so the edge list forms a DAG by level.
struct IslandNetwork {
    std::vector<IslandConfig> islands;
    std::vector<std::pair<int, int>> edges; // directed source -> target
};

struct LevelSpec {
    int resolution = 8;
    int islands = 1;
    double anneal_rate = 0.1;
};

struct NetworkDefaults {
    std::size_t population_size = 40;
    double lambda0 = 1.0;
    int migration_interval = 10;
};

// Builds the complete coarse-to-fine topology: every island of a level feeds
// every island of every deeper level. Levels must come sorted by strictly
// increasing resolution.
IslandNetwork build_network(std::span<const LevelSpec> levels, NetworkDefaults defaults = {});

struct MigrationMessage {
    int source = 0;
    std::uint64_t generation = 0;
    DistributionModel model;
};

// Lifts a distribution model to a finer resolution: source marginals become
// the most-significant-bit marginals of each ordinate and the appended low
// bits are uninformative (0.5). Lowering the resolution is illegal.
DistributionModel project_model(const DistributionModel& model, int target_resolution);

// Samples ceil(fraction * size) immigrants from the (projected) model and
// merges them elitist-style into the population.
Population incorporate(const Population& pop, const MigrationMessage& msg, double fraction,
                       const FitnessFn& evaluate, std::mt19937_64& rng);

struct Termination {
    std::uint64_t max_generations = 500;
    std::uint64_t plateau_generations = 30; // 0 disables the plateau stop
    double wall_time_ms = 0.0;              // 0 disables; ignored in deterministic mode
};

struct RunOptions {
    int workers = 1;
    bool deterministic = true;
    double migration_fraction = 0.25;
    double selection_fraction = 0.30; // elite share the EDA model is fitted on
    double ga_offspring_share = 0.50; // remainder comes from the EDA sampler
    GaParams ga;
};

struct RunResult {
    bool feasible = false;
    Chromosome chromosome; // best feasible, or best infeasible when none found
    Evaluation evaluation; // at the lambda of the owning island when recorded
    std::uint64_t generations = 0;
    double wall_ms = 0.0;
    std::vector<double> final_lambdas;
    ConvergenceLog log;
    std::vector<TracePoint> feasible_trace;

    Route route(const ProblemContext& problem) const {
        return problem.decode_route(chromosome);
    }
};

// Evolves all islands under the shared problem, exchanging distribution
// models along the network edges, and returns the best feasible route seen.
// Deterministic mode steps islands in lockstep generations: identical
// (seed, config) gives identical results for any worker count, and the log's
// wall_ms column is zeroed. Free-running mode lets islands progress
// asynchronously and records real timings.
RunResult run(const IslandNetwork& network, const ProblemContext& problem,
              const Termination& termination, std::uint64_t seed, const RunOptions& options = {});

} // namespace searoute

#endif
