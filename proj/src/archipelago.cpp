#include "searoute/archipelago.hpp"

#include "searoute/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

namespace searoute {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

bool bits_less(const Chromosome& a, const Chromosome& b) {
    return std::lexicographical_compare(a.bits.begin(), a.bits.end(), b.bits.begin(),
                                        b.bits.end());
}

struct Candidate {
    bool valid = false;
    Chromosome chromosome;
    Evaluation eval;
};

// Feasible candidates compare by real cost; E would be the same number but S
// is lambda-independent, which keeps bests comparable across generations.
bool improves_feasible(const Candidate& incoming, const Candidate& current) {
    if (!incoming.valid) return false;
    if (!current.valid) return true;
    if (incoming.eval.real_cost != current.eval.real_cost) {
        return incoming.eval.real_cost < current.eval.real_cost;
    }
    return bits_less(incoming.chromosome, current.chromosome);
}

bool improves_infeasible(const Candidate& incoming, const Candidate& current) {
    if (!incoming.valid) return false;
    if (!current.valid) return true;
    if (incoming.eval.value != current.eval.value) {
        return incoming.eval.value < current.eval.value;
    }
    return bits_less(incoming.chromosome, current.chromosome);
}

std::mt19937_64 island_rng(std::uint64_t seed, int island_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(island_id)};
    return std::mt19937_64(seq);
}

struct IslandState {
    IslandConfig cfg;
    int id = 0;
    std::mt19937_64 rng;
    std::optional<Population> pop;
    double lambda = 1.0;
    std::uint64_t generation = 0;
    std::vector<int> out_edges;

    std::mutex inbox_mutex;
    std::vector<MigrationMessage> inbox;
    std::optional<DistributionModel> published; // set when this generation publishes

    Candidate best_feasible;
    Candidate best_infeasible;
    ConvergenceLog log;
};

// Cross-island best tracking. In deterministic mode only the coordinator
// touches it, in island order; in free-running mode workers merge under the
// mutex as they go.
struct GlobalTracker {
    std::mutex mutex;
    Candidate feasible;
    Candidate infeasible;
    std::vector<TracePoint> trace;
    std::atomic<std::uint64_t> ticks{0};              // island-generations completed
    std::atomic<std::uint64_t> last_improve_tick{0};
    std::uint64_t last_improve_generation = 0;

    void merge(const IslandState& isl, double wall, std::uint64_t generation) {
        std::lock_guard lock(mutex);
        if (improves_feasible(isl.best_feasible, feasible)) {
            feasible = isl.best_feasible;
            trace.push_back({wall, feasible.eval.real_cost, generation});
            last_improve_tick.store(ticks.load());
            last_improve_generation = generation;
        }
        if (improves_infeasible(isl.best_infeasible, infeasible)) {
            infeasible = isl.best_infeasible;
        }
    }
};

void validate_network(const IslandNetwork& network) {
    if (network.islands.empty()) throw InvalidInput("island network is empty");
    for (const IslandConfig& cfg : network.islands) {
        if (cfg.resolution < 1) throw InvalidInput("island resolution must be >= 1");
        if (cfg.population_size < 2) throw InvalidInput("island population must be >= 2");
        if (cfg.anneal_rate < 0.0) throw InvalidInput("annealing rate must be >= 0");
        if (!(cfg.lambda0 > 0.0)) throw InvalidInput("lambda0 must be positive");
        if (cfg.migration_interval < 1) throw InvalidInput("migration interval must be >= 1");
    }
    const int n = static_cast<int>(network.islands.size());
    for (const auto& [src, tgt] : network.edges) {
        if (src < 0 || src >= n || tgt < 0 || tgt >= n || src == tgt) {
            throw InvalidInput("migration edge references an unknown island");
        }
        if (network.islands[src].resolution > network.islands[tgt].resolution) {
            throw InvalidInput("migration edge runs against the resolution hierarchy");
        }
    }
}

// One generation of one island: drain immigrants, breed, merge, publish.
// Touches only island-local state, so islands step concurrently.
void step_island(IslandState& isl, const ProblemContext& problem, const RunOptions& options) {
    const double lambda = isl.lambda;
    auto fitness = [&](const Chromosome& c) {
        const Evaluation ev = problem.evaluate(c, lambda);
        Candidate cand{true, c, ev};
        if (ev.feasible) {
            if (improves_feasible(cand, isl.best_feasible)) isl.best_feasible = std::move(cand);
        } else if (improves_infeasible(cand, isl.best_infeasible)) {
            isl.best_infeasible = std::move(cand);
        }
        return ev.value;
    };

    if (!isl.pop) {
        // Random members plus one straight-line seed: the axis-parallel
        // route is smooth (zero turns), so only obstacle splits pull on it
        // and their sign points the bends in the right direction.
        auto pop = Population::random(isl.cfg.population_size, problem.config().free_waypoints,
                                      isl.cfg.resolution, fitness, isl.rng);
        const std::vector<double> zeros(problem.config().free_waypoints, 0.0);
        const Chromosome straight = encode_ordinates(zeros, problem.span(), isl.cfg.resolution,
                                                     problem.config().gray_code);
        isl.pop = next_generation(pop, {&straight, 1}, {}, fitness);
    }

    std::vector<MigrationMessage> msgs;
    {
        std::lock_guard lock(isl.inbox_mutex);
        msgs.swap(isl.inbox);
    }
    std::sort(msgs.begin(), msgs.end(), [](const MigrationMessage& a, const MigrationMessage& b) {
        return a.source != b.source ? a.source < b.source : a.generation < b.generation;
    });
    for (const MigrationMessage& msg : msgs) {
        isl.pop = incorporate(*isl.pop, msg, options.migration_fraction, fitness, isl.rng);
    }

    const std::size_t offspring = isl.pop->size();
    const auto ga_count = static_cast<std::size_t>(
        std::lround(options.ga_offspring_share * static_cast<double>(offspring)));
    const auto ga = ga_offspring(*isl.pop, ga_count, options.ga, isl.rng);
    const auto model = eda_fit(isl.pop->elite(options.selection_fraction));
    const auto eda = eda_sample(model, offspring - ga_count, isl.rng);
    isl.pop = next_generation(*isl.pop, ga, eda, fitness);
    isl.generation += 1;

    if (isl.generation % static_cast<std::uint64_t>(isl.cfg.migration_interval) == 0 &&
        !isl.out_edges.empty()) {
        isl.published = eda_fit(isl.pop->elite(options.selection_fraction));
    } else {
        isl.published.reset();
    }

    const Evaluation best_ev = problem.evaluate(isl.pop->best().chromosome, lambda);
    isl.log.push_back({isl.id, isl.generation, lambda, best_ev.value, best_ev.real_cost,
                       best_ev.penalty_value, 0.0});
    isl.lambda = anneal(lambda, isl.cfg.anneal_rate);
}

void deliver(IslandState& from, std::vector<IslandState>& islands) {
    if (!from.published) return;
    for (const int tgt : from.out_edges) {
        MigrationMessage msg{from.id, from.generation, *from.published};
        std::lock_guard lock(islands[tgt].inbox_mutex);
        islands[tgt].inbox.push_back(std::move(msg));
    }
    from.published.reset();
}

void parallel_for_islands(std::vector<IslandState>& islands, int workers,
                          const std::function<void(IslandState&)>& fn) {
    if (workers <= 1 || islands.size() <= 1) {
        for (IslandState& isl : islands) fn(isl);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next.fetch_add(1); i < islands.size(); i = next.fetch_add(1)) {
            fn(islands[i]);
        }
    };
    std::vector<std::thread> pool;
    const int extra = std::min<int>(workers, static_cast<int>(islands.size())) - 1;
    pool.reserve(extra);
    for (int t = 0; t < extra; ++t) pool.emplace_back(body);
    body();
    for (auto& th : pool) th.join();
}

RunResult finish(std::vector<IslandState>& islands, GlobalTracker& tracker, double wall,
                 bool deterministic) {
    RunResult result;
    result.wall_ms = deterministic ? 0.0 : wall;
    for (IslandState& isl : islands) {
        result.generations = std::max(result.generations, isl.generation);
        result.final_lambdas.push_back(isl.lambda);
        result.log.insert(result.log.end(), isl.log.begin(), isl.log.end());
    }
    std::stable_sort(result.log.begin(), result.log.end(), [](const LogRow& a, const LogRow& b) {
        return a.generation != b.generation ? a.generation < b.generation : a.island < b.island;
    });

    if (tracker.feasible.valid) {
        result.feasible = true;
        result.chromosome = tracker.feasible.chromosome;
        result.evaluation = tracker.feasible.eval;
    } else if (tracker.infeasible.valid) {
        result.feasible = false;
        result.chromosome = tracker.infeasible.chromosome;
        result.evaluation = tracker.infeasible.eval;
    } else {
        throw std::logic_error("run finished without evaluating any candidate");
    }
    result.feasible_trace = std::move(tracker.trace);
    return result;
}

} // namespace

IslandNetwork build_network(std::span<const LevelSpec> levels, NetworkDefaults defaults) {
    if (levels.empty()) throw InvalidInput("network needs at least one level");
    IslandNetwork net;
    int level_index = 0;
    int previous_resolution = 0;
    std::vector<std::pair<int, int>> level_ranges; // [first, last) island ids per level
    for (const LevelSpec& level : levels) {
        if (level.resolution <= previous_resolution) {
            throw InvalidInput("network levels must have strictly increasing resolution");
        }
        if (level.islands < 1) throw InvalidInput("each level needs at least one island");
        previous_resolution = level.resolution;
        const int first = static_cast<int>(net.islands.size());
        for (int i = 0; i < level.islands; ++i) {
            IslandConfig cfg;
            cfg.resolution = level.resolution;
            cfg.population_size = defaults.population_size;
            cfg.anneal_rate = level.anneal_rate;
            cfg.lambda0 = defaults.lambda0;
            cfg.migration_interval = defaults.migration_interval;
            cfg.level = level_index;
            net.islands.push_back(cfg);
        }
        level_ranges.emplace_back(first, static_cast<int>(net.islands.size()));
        ++level_index;
    }
    for (std::size_t a = 0; a < level_ranges.size(); ++a) {
        for (std::size_t b = a + 1; b < level_ranges.size(); ++b) {
            for (int src = level_ranges[a].first; src < level_ranges[a].second; ++src) {
                for (int tgt = level_ranges[b].first; tgt < level_ranges[b].second; ++tgt) {
                    net.edges.emplace_back(src, tgt);
                }
            }
        }
    }
    validate_network(net);
    return net;
}

DistributionModel project_model(const DistributionModel& model, int target_resolution) {
    if (target_resolution < model.resolution) {
        throw InvalidInput("distribution models may only migrate to equal or finer resolution");
    }
    if (model.resolution < 1 || model.marginals.size() % model.resolution != 0) {
        throw InvalidInput("malformed distribution model");
    }
    if (target_resolution == model.resolution) return model;

    const std::size_t ordinates = model.marginals.size() / model.resolution;
    DistributionModel out;
    out.resolution = target_resolution;
    out.fitted_from = model.fitted_from;
    out.marginals.reserve(ordinates * target_resolution);
    for (std::size_t i = 0; i < ordinates; ++i) {
        for (int b = 0; b < model.resolution; ++b) {
            out.marginals.push_back(model.marginals[i * model.resolution + b]);
        }
        for (int b = model.resolution; b < target_resolution; ++b) {
            out.marginals.push_back(0.5);
        }
    }
    return out;
}

Population incorporate(const Population& pop, const MigrationMessage& msg, double fraction,
                       const FitnessFn& evaluate, std::mt19937_64& rng) {
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw InvalidInput("migration fraction must lie in (0, 1)");
    }
    const int resolution = pop.members().front().chromosome.resolution;
    const DistributionModel projected = project_model(msg.model, resolution);
    if (projected.marginals.size() != pop.members().front().chromosome.bits.size()) {
        throw std::logic_error("projected migration model does not match the population encoding");
    }
    const auto immigrants = static_cast<std::size_t>(
        std::ceil(fraction * static_cast<double>(pop.size())));
    const auto pool = eda_sample(projected, immigrants, rng);
    return next_generation(pop, {}, pool, evaluate);
}

RunResult run(const IslandNetwork& network, const ProblemContext& problem,
              const Termination& termination, std::uint64_t seed, const RunOptions& options) {
    validate_network(network);
    if (options.workers < 1) throw InvalidInput("worker count must be >= 1");
    if (termination.max_generations == 0) throw InvalidInput("max_generations must be >= 1");

    const auto start = Clock::now();
    std::vector<IslandState> islands(network.islands.size());
    for (std::size_t i = 0; i < islands.size(); ++i) {
        islands[i].cfg = network.islands[i];
        islands[i].id = static_cast<int>(i);
        islands[i].rng = island_rng(seed, static_cast<int>(i));
        islands[i].lambda = network.islands[i].lambda0;
    }
    for (const auto& [src, tgt] : network.edges) {
        islands[src].out_edges.push_back(tgt);
    }
    for (auto& isl : islands) std::sort(isl.out_edges.begin(), isl.out_edges.end());

    GlobalTracker tracker;

    if (options.deterministic) {
        // Lockstep generations; islands run concurrently inside one
        // generation and synchronize at the migration barrier. Wall-clock
        // readings are suppressed so identical inputs give identical output.
        for (std::uint64_t gen = 1; gen <= termination.max_generations; ++gen) {
            parallel_for_islands(islands, options.workers,
                                 [&](IslandState& isl) { step_island(isl, problem, options); });
            for (IslandState& isl : islands) {
                tracker.ticks.fetch_add(1);
                tracker.merge(isl, 0.0, gen);
            }
            for (IslandState& isl : islands) deliver(isl, islands);
            if (termination.plateau_generations > 0 && tracker.feasible.valid &&
                gen - tracker.last_improve_generation >= termination.plateau_generations) {
                break;
            }
        }
        return finish(islands, tracker, elapsed_ms(start), true);
    }

    // Free-running: a fixed share of islands per worker, each advancing its
    // islands round-robin with no cross-island barrier.
    std::atomic<bool> stop{false};
    const std::uint64_t plateau_ticks =
        termination.plateau_generations * static_cast<std::uint64_t>(islands.size());
    const int workers = std::min<int>(options.workers, static_cast<int>(islands.size()));

    auto worker_body = [&](int worker_id) {
        bool all_done = false;
        while (!all_done && !stop.load(std::memory_order_relaxed)) {
            all_done = true;
            for (std::size_t i = worker_id; i < islands.size();
                 i += static_cast<std::size_t>(workers)) {
                IslandState& isl = islands[i];
                if (isl.generation >= termination.max_generations) continue;
                all_done = false;
                step_island(isl, problem, options);
                isl.log.back().wall_ms = elapsed_ms(start);
                deliver(isl, islands);
                const std::uint64_t tick = tracker.ticks.fetch_add(1) + 1;
                tracker.merge(isl, elapsed_ms(start), isl.generation);
                if (plateau_ticks > 0 && tracker.feasible.valid &&
                    tick - tracker.last_improve_tick.load() >= plateau_ticks) {
                    stop.store(true, std::memory_order_relaxed);
                }
                if (termination.wall_time_ms > 0.0 && elapsed_ms(start) > termination.wall_time_ms) {
                    stop.store(true, std::memory_order_relaxed);
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker_body, w);
    worker_body(0);
    for (auto& th : pool) th.join();
    return finish(islands, tracker, elapsed_ms(start), false);
}

} // namespace searoute
