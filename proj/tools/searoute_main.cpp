#include "searoute/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

namespace {

enum class LogLevel { Quiet = 0, Info = 1, Debug = 2 };

LogLevel log_level() {
    const char* env = std::getenv("SEAROUTE_LOG");
    if (!env) return LogLevel::Info;
    const std::string v(env);
    if (v == "quiet") return LogLevel::Quiet;
    if (v == "debug") return LogLevel::Debug;
    return LogLevel::Info;
}

void info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::cerr << msg << '\n';
}

std::vector<int> parse_worker_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& cli_seed,
                           const searoute::Scenario& scenario, bool deterministic) {
    if (cli_seed) return *cli_seed;
    if (scenario.seed) return *scenario.seed;
    if (deterministic) {
        throw searoute::InvalidInput(
            "deterministic mode needs a seed: set --seed or the scenario 'seed' field");
    }
    return std::random_device{}();
}

int emit_and_report(const searoute::RouteResult& result, const std::filesystem::path& out_dir,
                    const searoute::PlanningFrame& frame) {
    searoute::emit_result(result, out_dir, frame);
    std::ostringstream line;
    line << result.solver << ": " << (result.feasible ? "feasible" : "NO feasible route") << ", S="
         << result.breakdown.total << ", T=" << result.breakdown.time << ", C="
         << result.breakdown.comfort << ", wall=" << result.wall_ms << " ms -> "
         << out_dir.string();
    info(line.str());
    return result.feasible ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"searoute: optimal ship routes through obstacle fields (island GA-EDA)"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    bool free_running = false;
    int workers = 1;

    auto add_common = [&](CLI::App* cmd, bool wants_out) {
        cmd->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
        if (wants_out) cmd->add_option("--out", out_dir, "Output directory");
        cmd->add_option("--seed", seed, "Override the scenario seed");
        cmd->add_flag("--free-running", free_running,
                      "Asynchronous islands with real timings (default: deterministic)");
        cmd->add_option("--workers", workers, "Worker threads");
    };

    auto* solve = app.add_subcommand("solve", "Run the island GA-EDA solver");
    add_common(solve, true);

    auto* baseline = app.add_subcommand("baseline", "Run a reference solver");
    std::string solver_name;
    baseline->add_option("--solver", solver_name, "One of sa|shortest|bypass|brute")->required();
    add_common(baseline, true);

    auto* bench = app.add_subcommand("bench", "Thread-scaling benchmark (free-running)");
    std::string worker_list = "1,2,4";
    int repeats = 3;
    std::string bench_out;
    bench->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    bench->add_option("--workers", worker_list, "Comma-separated worker counts");
    bench->add_option("--repeats", repeats, "Repeats per worker count (median reported)");
    bench->add_option("--seed", seed, "Override the scenario seed");
    bench->add_option("--out", bench_out, "CSV output file (default: stdout)");

    auto* validate = app.add_subcommand("validate", "Check a scenario file and its references");
    validate->add_option("--scenario", scenario_path, "Scenario JSON file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        const searoute::Scenario scenario = searoute::load_scenario(scenario_path);

        if (validate->parsed()) {
            searoute::prepare(scenario);
            info("scenario '" + scenario.name + "' is valid");
            return 0;
        }

        const searoute::PreparedScenario prepared = searoute::prepare(scenario);

        if (solve->parsed()) {
            const bool deterministic = !free_running;
            const std::uint64_t run_seed = resolve_seed(seed, scenario, deterministic);
            searoute::RunOptions options;
            options.deterministic = deterministic;
            options.workers = workers;
            const auto result = searoute::solve_scenario(scenario, prepared, run_seed, options);
            return emit_and_report(result, out_dir, prepared.frame);
        }

        if (baseline->parsed()) {
            const auto solver = searoute::baseline_from_name(solver_name);
            const std::uint64_t run_seed = resolve_seed(seed, scenario, true);
            const auto result = searoute::run_baseline(scenario, prepared, solver, run_seed);
            return emit_and_report(result, out_dir, prepared.frame);
        }

        if (bench->parsed()) {
            const std::uint64_t run_seed = resolve_seed(seed, scenario, true);
            const auto counts = parse_worker_list(worker_list);
            const auto rows = searoute::bench_workers(scenario, prepared, counts, repeats,
                                                      run_seed);
            const std::string csv = searoute::bench_csv(rows);
            if (bench_out.empty()) {
                std::cout << csv;
            } else {
                std::ofstream(bench_out) << csv;
                info("bench results -> " + bench_out);
            }
            return 0;
        }
    } catch (const searoute::ScenarioError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const searoute::InvalidInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
