#ifndef SEAROUTE_SCENARIO_HPP
#define SEAROUTE_SCENARIO_HPP

#include "searoute/archipelago.hpp"
#include "searoute/baselines.hpp"
#include "searoute/convergence.hpp"
#include "searoute/problem.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace searoute {

// All validation failures of one scenario file, reported together.
class ScenarioError : public InvalidInput {
public:
    ScenarioError(std::string summary, std::vector<std::string> issues);
    const std::vector<std::string>& issues() const { return issues_; }

private:
    std::vector<std::string> issues_;
};

struct EnvironmentSpec {
    std::optional<std::filesystem::path> grid_csv;
    std::optional<std::filesystem::path> meta_json;
    std::optional<FieldSample> uniform; // constant wind/wave over the planning box
};

struct ObstacleSpec {
    std::filesystem::path geojson;
    bool frame_coords = true; // false: vertices are lat/lon and need conversion
};

struct Scenario {
    std::string name;
    int schema_version = 1;

    bool geodetic = false;
    GeoPoint departure_geo{};
    GeoPoint arrival_geo{};
    Vec2 departure_planar{};
    Vec2 arrival_planar{};
    double frame_scale_m = 1000.0;

    EnvironmentSpec environment;
    std::optional<ObstacleSpec> obstacles;

    ShipModel ship;
    double alpha = 1.0;
    int free_waypoints = 20;
    int quadrature_samples = 8;
    bool gray_code = false;
    PenaltyParams penalty;
    double lambda0 = 1.0;

    std::vector<LevelSpec> levels;
    NetworkDefaults network_defaults;
    double migration_fraction = 0.25;
    Termination termination;
    std::optional<std::uint64_t> seed;

    // Baseline knobs, all defaulted from the main configuration.
    std::optional<SaParams> sa;
    BypassOptions bypass_options;
    BypassSolverParams bypass_params;
};

// Parses and validates a scenario file; every violation is collected and
// reported at once, including unreadable referenced files.
Scenario load_scenario(const std::filesystem::path& path);

struct PreparedScenario {
    PlanningFrame frame;
    ProblemContext problem;
    IslandNetwork network;
    Termination termination;
    double migration_fraction = 0.25;
    int finest_resolution = 8;
    double finest_anneal_rate = 0.1;
};

// Resolves the frame, loads environment and obstacles into frame
// coordinates, and builds the island network.
PreparedScenario prepare(const Scenario& scenario);

struct RouteResult {
    std::string scenario_name;
    std::string solver;
    std::uint64_t seed = 0;
    bool feasible = false;
    std::vector<Vec2> frame_waypoints;
    CostBreakdown breakdown;
    ConstraintReport report;
    double penalty_value = 0.0;
    double generalized_value = 0.0;
    std::vector<double> final_lambdas;
    std::uint64_t generations = 0;
    double wall_ms = 0.0;
    ConvergenceLog log;
};

RouteResult solve_scenario(const Scenario& scenario, const PreparedScenario& prepared,
                           std::uint64_t seed, const RunOptions& options);

enum class BaselineSolver { Sa, Shortest, Bypass, Brute };

BaselineSolver baseline_from_name(const std::string& name);

RouteResult run_baseline(const Scenario& scenario, const PreparedScenario& prepared,
                         BaselineSolver solver, std::uint64_t seed);

// Writes route.geojson (display coordinates, 6 decimals), result.json (full
// precision) and convergence.csv into out_dir.
void emit_result(const RouteResult& result, const std::filesystem::path& out_dir,
                 const PlanningFrame& frame);

// Re-ingests the full-precision waypoints from an emitted result.json, for
// round-trip re-scoring.
std::vector<Vec2> load_result_waypoints(const std::filesystem::path& result_json);

struct BenchRow {
    int workers = 0;
    double wall_ms = 0.0;
    double speedup = 1.0;
};

// Runs the identical free-running workload at each worker count and reports
// median wall time over `repeats`, with speedup relative to one worker.
std::vector<BenchRow> bench_workers(const Scenario& scenario, const PreparedScenario& prepared,
                                    std::span<const int> worker_counts, int repeats,
                                    std::uint64_t seed);

std::string bench_csv(std::span<const BenchRow> rows);

} // namespace searoute

#endif
