#include "searoute/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace searoute;

namespace {

const std::filesystem::path kScenarioDir{SEAROUTE_SCENARIO_DIR};

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto dir = std::filesystem::temp_directory_path() / "searoute_tests";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream(path) << body;
    return path;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("bundled scenarios load and validate") {
    for (const char* name : {"straight.json", "single_square.json", "oracle4096.json"}) {
        CAPTURE(name);
        const Scenario s = load_scenario(kScenarioDir / name);
        CHECK_FALSE(s.name.empty());
        CHECK_NOTHROW(prepare(s));
    }
}

TEST_CASE("missing file is a load error") {
    CHECK_THROWS_AS(load_scenario(kScenarioDir / "no_such_scenario.json"), ScenarioError);
}

TEST_CASE("validation enumerates every violation at once") {
    const auto path = write_temp("broken.json", R"({
        "schema_version": 3,
        "name": "broken",
        "frame": {"mode": "planar"},
        "departure": {"x": 0, "y": 0},
        "arrival": {"x": 10, "y": 0},
        "environment": {"uniform": {"wind": [0, 0], "wave": [0, 0]}},
        "ship": {"speed": -2, "wind_response": [[1,0],[0,1]], "wave_response": [[1,0],[0,1]], "max_turn_deg": 60},
        "alpha": 1.5,
        "network": {"levels": [{"resolution": 8, "anneal_rate": 0.1}, {"resolution": 4, "anneal_rate": 0.1}]}
    })");
    try {
        load_scenario(path);
        FAIL("expected a ScenarioError");
    } catch (const ScenarioError& e) {
        CHECK(e.issues().size() >= 4);
        const std::string all = e.what();
        CHECK(all.find("alpha") != std::string::npos);
        CHECK(all.find("schema_version") != std::string::npos);
        CHECK(all.find("speed") != std::string::npos);
        CHECK(all.find("strictly increasing") != std::string::npos);
    }
}

TEST_CASE("alpha bounds are reported with the offending value") {
    const auto path = write_temp("bad_alpha.json", R"({
        "schema_version": 1,
        "name": "bad-alpha",
        "frame": {"mode": "planar"},
        "departure": {"x": 0, "y": 0},
        "arrival": {"x": 10, "y": 0},
        "environment": {"uniform": {"wind": [0, 0], "wave": [0, 0]}},
        "ship": {"speed": 2, "wind_response": [[1,0],[0,1]], "wave_response": [[1,0],[0,1]], "max_turn_deg": 60},
        "alpha": 1.5,
        "network": {"levels": [{"resolution": 6, "anneal_rate": 0.1}]}
    })");
    CHECK_THROWS_WITH_AS(load_scenario(path),
                         doctest::Contains("alpha must lie in [0, 1]"), ScenarioError);
}

TEST_CASE("solve, emit, reload, re-score round trip") {
    const Scenario scenario = load_scenario(kScenarioDir / "single_square.json");
    const PreparedScenario prepared = prepare(scenario);
    RunOptions options;
    options.workers = 2;
    const RouteResult result = solve_scenario(scenario, prepared, 42, options);
    REQUIRE(result.feasible);

    const auto out = std::filesystem::temp_directory_path() / "searoute_tests" / "roundtrip";
    emit_result(result, out, prepared.frame);
    CHECK(std::filesystem::exists(out / "route.geojson"));
    CHECK(std::filesystem::exists(out / "result.json"));
    CHECK(std::filesystem::exists(out / "convergence.csv"));

    const auto waypoints = load_result_waypoints(out / "result.json");
    const Route reloaded{waypoints};
    const auto rescored = prepared.problem.cost_breakdown(reloaded);
    CHECK(std::abs(rescored.total - result.breakdown.total) <=
          1e-9 * std::max(1.0, std::abs(result.breakdown.total)));

    const std::string csv = slurp(out / "convergence.csv");
    CHECK(csv.rfind("island,generation,lambda,best_E,best_S,best_P,wall_ms\n", 0) == 0);
}

TEST_CASE("aegean20 round trip re-scores within 1e-9 relative") {
    Scenario scenario = load_scenario(kScenarioDir / "aegean20.json");
    scenario.termination.max_generations = 60;
    scenario.termination.plateau_generations = 0;
    const PreparedScenario prepared = prepare(scenario);
    const RouteResult result = solve_scenario(scenario, prepared, 3, RunOptions{.workers = 2});
    REQUIRE(result.feasible);

    const auto out = std::filesystem::temp_directory_path() / "searoute_tests" / "aegean_rt";
    emit_result(result, out, prepared.frame);
    const Route reloaded{load_result_waypoints(out / "result.json")};
    const auto rescored = prepared.problem.cost_breakdown(reloaded);
    CHECK(std::abs(rescored.total - result.breakdown.total) <=
          1e-9 * std::abs(result.breakdown.total));
}

TEST_CASE("deterministic emission is byte-identical across worker counts") {
    const Scenario scenario = load_scenario(kScenarioDir / "single_square.json");
    const PreparedScenario prepared = prepare(scenario);

    const auto base = std::filesystem::temp_directory_path() / "searoute_tests";
    RunOptions one;
    one.workers = 1;
    RunOptions four;
    four.workers = 4;

    emit_result(solve_scenario(scenario, prepared, 9, one), base / "w1", prepared.frame);
    emit_result(solve_scenario(scenario, prepared, 9, four), base / "w4", prepared.frame);

    CHECK(slurp(base / "w1" / "route.geojson") == slurp(base / "w4" / "route.geojson"));
    CHECK(slurp(base / "w1" / "result.json") == slurp(base / "w4" / "result.json"));
    CHECK(slurp(base / "w1" / "convergence.csv") == slurp(base / "w4" / "convergence.csv"));
}

TEST_CASE("baseline dispatch") {
    CHECK(baseline_from_name("sa") == BaselineSolver::Sa);
    CHECK(baseline_from_name("shortest") == BaselineSolver::Shortest);
    CHECK(baseline_from_name("bypass") == BaselineSolver::Bypass);
    CHECK(baseline_from_name("brute") == BaselineSolver::Brute);
    CHECK_THROWS_AS(baseline_from_name("tabu"), InvalidInput);
}

TEST_CASE("baselines run from scenarios") {
    const Scenario scenario = load_scenario(kScenarioDir / "single_square.json");
    const PreparedScenario prepared = prepare(scenario);

    SUBCASE("shortest emits the geometric reference") {
        const auto result = run_baseline(scenario, prepared, BaselineSolver::Shortest, 1);
        REQUIRE(result.feasible);
        CHECK(result.breakdown.time > 0.0);
        CHECK(result.frame_waypoints.size() >= 2);
    }
    SUBCASE("brute respects the configured schedule") {
        const Scenario tiny = load_scenario(kScenarioDir / "oracle4096.json");
        const PreparedScenario tiny_prepared = prepare(tiny);
        const auto result = run_baseline(tiny, tiny_prepared, BaselineSolver::Brute, 1);
        CHECK(result.generations == 4096); // evaluation count for brute
        CHECK(result.feasible);
    }
    SUBCASE("sa returns a result with a log") {
        const auto result = run_baseline(scenario, prepared, BaselineSolver::Sa, 4);
        CHECK_FALSE(result.log.empty());
    }
}

TEST_CASE("bench rows carry speedups relative to one worker") {
    Scenario scenario = load_scenario(kScenarioDir / "straight.json");
    scenario.termination.max_generations = 10;
    const PreparedScenario prepared = prepare(scenario);
    const std::vector<int> workers{1, 2, 8};
    const auto rows = bench_workers(scenario, prepared, workers, 1, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].workers == 1);
    CHECK(rows[0].speedup == doctest::Approx(1.0));
    CHECK(rows[1].wall_ms > 0.0);
    for (const auto& row : rows) {
        // Never better than ideal; extra workers beyond the island count add
        // nothing but must not corrupt the measurement.
        CHECK(row.speedup <= row.workers + 0.35);
    }
    const std::string csv = bench_csv(rows);
    CHECK(csv.rfind("workers,wall_ms,speedup\n", 0) == 0);
}

TEST_CASE("meltemi grid scenario loads and scores comfort") {
    const Scenario s = load_scenario(kScenarioDir / "meltemi.json");
    const PreparedScenario prepared = prepare(s);
    CHECK(prepared.problem.environment().nx() >= 30);
    // Nonzero comfort on the straight-ish reference path under the wind grid.
    const auto result = run_baseline(s, prepared, BaselineSolver::Shortest, 1);
    REQUIRE(result.feasible);
    CHECK(result.breakdown.comfort != 0.0);
    CHECK(result.breakdown.total ==
          doctest::Approx(0.7 * result.breakdown.time + 0.3 * result.breakdown.comfort));
}

TEST_CASE("infeasible problems surface the best infeasible candidate") {
    // Overlapping walls sealing off the departure: no route with pinned
    // endpoints can be feasible.
    const auto dir = std::filesystem::temp_directory_path() / "searoute_tests";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "corral.geojson") << R"({
      "type": "FeatureCollection",
      "features": [
        {"type": "Feature", "properties": {},
         "geometry": {"type": "Polygon", "coordinates":
           [[[1.0,-4.0],[2.0,-4.0],[2.0,4.0],[1.0,4.0],[1.0,-4.0]]]}},
        {"type": "Feature", "properties": {},
         "geometry": {"type": "Polygon", "coordinates":
           [[[-4.0,2.0],[2.0,2.0],[2.0,4.0],[-4.0,4.0],[-4.0,2.0]]]}},
        {"type": "Feature", "properties": {},
         "geometry": {"type": "Polygon", "coordinates":
           [[[-4.0,-4.0],[2.0,-4.0],[2.0,-2.0],[-4.0,-2.0],[-4.0,-4.0]]]}},
        {"type": "Feature", "properties": {},
         "geometry": {"type": "Polygon", "coordinates":
           [[[-4.0,-3.0],[-3.0,-3.0],[-3.0,3.0],[-4.0,3.0],[-4.0,-3.0]]]}}
      ]})";
    std::ofstream(dir / "corral.json") << R"({
      "schema_version": 1,
      "name": "corral",
      "frame": {"mode": "planar"},
      "departure": {"x": 0, "y": 0},
      "arrival": {"x": 10, "y": 0},
      "environment": {"uniform": {"wind": [0, 0], "wave": [0, 0]}},
      "obstacles": {"geojson": "corral.geojson", "coords": "frame"},
      "ship": {"speed": 1.0, "wind_response": [[1,0],[0,1]], "wave_response": [[1,0],[0,1]],
               "max_turn_deg": 70},
      "alpha": 1.0,
      "route": {"free_waypoints": 4},
      "network": {"levels": [{"resolution": 5, "islands": 1, "anneal_rate": 0.2}],
                  "population_size": 16},
      "termination": {"max_generations": 25, "plateau_generations": 0},
      "seed": 3
    })";
    const Scenario s = load_scenario(dir / "corral.json");
    const PreparedScenario prepared = prepare(s);
    const RouteResult result = solve_scenario(s, prepared, 3, RunOptions{});
    CHECK_FALSE(result.feasible);
    CHECK_FALSE(result.report.feasible);
    CHECK_FALSE(result.frame_waypoints.empty());
}

TEST_CASE("CLI exit codes: 0 feasible, 2 infeasible, 1 input error") {
    const auto dir = std::filesystem::temp_directory_path() / "searoute_tests";
    const std::string cli = SEAROUTE_CLI_PATH;
    auto run_cli = [&](const std::string& args) {
        const std::string cmd = "SEAROUTE_LOG=quiet " + cli + " " + args + " > /dev/null 2>&1";
        const int rc = std::system(cmd.c_str());
        return WEXITSTATUS(rc);
    };

    CHECK(run_cli("solve --scenario " + (kScenarioDir / "straight.json").string() +
                  " --out " + (dir / "cli_ok").string()) == 0);
    CHECK(run_cli("solve --scenario " + (dir / "corral.json").string() +
                  " --out " + (dir / "cli_infeasible").string()) == 2);
    CHECK(run_cli("solve --scenario " + (dir / "bad_alpha.json").string() +
                  " --out " + (dir / "cli_bad").string()) == 1);
    CHECK(run_cli("solve --scenario " + (kScenarioDir / "no_such.json").string()) == 1);
    CHECK(run_cli("baseline --solver tabu --scenario " +
                  (kScenarioDir / "straight.json").string()) == 1);
    CHECK(run_cli("validate --scenario " + (kScenarioDir / "aegean20.json").string()) == 0);

    // Deterministic mode without any seed is a usage error.
    std::ofstream(dir / "no_seed.json") << R"({
      "schema_version": 1,
      "name": "no-seed",
      "frame": {"mode": "planar"},
      "departure": {"x": 0, "y": 0},
      "arrival": {"x": 10, "y": 0},
      "environment": {"uniform": {"wind": [0, 0], "wave": [0, 0]}},
      "ship": {"speed": 1.0, "wind_response": [[1,0],[0,1]], "wave_response": [[1,0],[0,1]],
               "max_turn_deg": 70},
      "alpha": 1.0,
      "network": {"levels": [{"resolution": 5, "islands": 1, "anneal_rate": 0.2}]},
      "termination": {"max_generations": 5}
    })";
    CHECK(run_cli("solve --scenario " + (dir / "no_seed.json").string()) == 1);
    CHECK(run_cli("solve --scenario " + (dir / "no_seed.json").string() + " --seed 4 --out " +
                  (dir / "cli_seeded").string()) == 0);
}
