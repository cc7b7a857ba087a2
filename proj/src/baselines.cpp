#include "searoute/baselines.hpp"

#include "searoute/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <random>

namespace searoute {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::mt19937_64 seeded_rng(std::uint64_t seed, int stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream)};
    return std::mt19937_64(seq);
}

// Best-so-far bookkeeping shared by the baselines: feasible candidates race
// on real cost, infeasible ones on generalized cost.
struct BestTracker {
    bool has_feasible = false;
    bool has_any = false;
    Chromosome feasible_chromosome;
    Evaluation feasible_eval;
    Chromosome fallback_chromosome;
    Evaluation fallback_eval;
    std::vector<TracePoint> trace;

    void offer(const Chromosome& c, const Evaluation& ev, double wall, std::uint64_t generation) {
        if (ev.feasible) {
            if (!has_feasible || ev.real_cost < feasible_eval.real_cost) {
                has_feasible = true;
                feasible_chromosome = c;
                feasible_eval = ev;
                trace.push_back({wall, ev.real_cost, generation});
            }
        } else if (!has_any || (!has_feasible && ev.value < fallback_eval.value)) {
            fallback_chromosome = c;
            fallback_eval = ev;
        }
        has_any = true;
    }

    void finalize(SolverResult& out) const {
        if (has_feasible) {
            out.feasible = true;
            out.chromosome = feasible_chromosome;
            out.evaluation = feasible_eval;
        } else if (has_any) {
            out.feasible = false;
            out.chromosome = fallback_chromosome;
            out.evaluation = fallback_eval;
        } else {
            throw std::logic_error("solver finished without evaluating any candidate");
        }
        out.feasible_trace = trace;
    }
};

std::uint32_t max_code(int resolution) {
    return (std::uint32_t{1} << resolution) - 1;
}

// Outward miter offset of a counter-clockwise polygon. Degenerates gracefully
// to a bisector push when adjacent edges are nearly parallel.
std::vector<Vec2> inflate_polygon(const Obstacle& obstacle, double clearance) {
    const auto& poly = obstacle.vertices();
    if (clearance <= 0.0) return poly;
    const std::size_t n = poly.size();
    std::vector<Vec2> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 prev = poly[(i + n - 1) % n];
        const Vec2 cur = poly[i];
        const Vec2 next = poly[(i + 1) % n];
        const Vec2 n0 = normalized(Vec2{(cur - prev).y, -(cur - prev).x}); // outward for CCW
        const Vec2 n1 = normalized(Vec2{(next - cur).y, -(next - cur).x});
        const Vec2 bisector = n0 + n1;
        const double blen2 = dot(bisector, bisector);
        if (blen2 < 1e-12) {
            out[i] = cur + n0 * clearance;
        } else {
            // Miter: scale so both edges end up offset by exactly `clearance`.
            out[i] = cur + bisector * (2.0 * clearance / blen2);
        }
    }
    return out;
}

// Vertical-line sweep of a polygon at abscissa x: min/max boundary ordinates.
std::optional<std::pair<double, double>> envelope_at(const std::vector<Vec2>& poly, double x) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    bool hit = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        if ((a.x - x) * (b.x - x) > 0.0) continue;
        if (a.x == b.x) {
            if (a.x != x) continue;
            lo = std::min({lo, a.y, b.y});
            hi = std::max({hi, a.y, b.y});
            hit = true;
            continue;
        }
        const double y = a.y + (x - a.x) / (b.x - a.x) * (b.y - a.y);
        lo = std::min(lo, y);
        hi = std::max(hi, y);
        hit = true;
    }
    if (!hit) return std::nullopt;
    return std::make_pair(lo, hi);
}

} // namespace

SolverResult simulated_annealing(const ProblemContext& problem, const SaParams& params,
                                 std::uint64_t seed) {
    if (!(params.initial_temperature > 0.0)) throw InvalidInput("initial temperature must be > 0");
    if (!(params.cooling > 0.0 && params.cooling < 1.0)) {
        throw InvalidInput("cooling factor must lie in (0, 1)");
    }
    if (params.steps_per_temperature < 1) throw InvalidInput("steps per temperature must be >= 1");
    if (params.step_cells < 1) throw InvalidInput("proposal step must be at least one cell");
    if (params.resolution < 1 || params.resolution > 30) throw InvalidInput("resolution out of range");

    const auto start = Clock::now();
    auto rng = seeded_rng(seed, 0);
    const auto m = static_cast<std::size_t>(problem.config().free_waypoints);
    const std::uint32_t top = max_code(params.resolution);

    // Start from the straight line, the same seed the evolutionary solver
    // plants in its initial populations.
    const bool gray = problem.config().gray_code;
    const Chromosome straight =
        encode_ordinates(std::vector<double>(m, 0.0), problem.span(), params.resolution, gray);
    std::vector<std::uint32_t> codes = chromosome_codes(straight, gray);

    BestTracker tracker;
    SolverResult result;
    double lambda = params.lambda0;
    double temperature = params.initial_temperature;

    Chromosome current = codes_to_chromosome(codes, params.resolution, gray);
    Evaluation current_ev = problem.evaluate(current, lambda);
    result.evaluations = 1;
    tracker.offer(current, current_ev, elapsed_ms(start), 0);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    std::uniform_int_distribution<int> magnitude(1, params.step_cells);

    std::uint64_t stage = 0;
    while (result.evaluations < params.max_evaluations &&
           temperature > params.min_temperature) {
        for (int stepi = 0; stepi < params.steps_per_temperature &&
                            result.evaluations < params.max_evaluations;
             ++stepi) {
            const std::size_t j = pick(rng);
            const int delta = magnitude(rng) * (unit(rng) < 0.5 ? -1 : 1);
            const std::uint32_t old_code = codes[j];
            const auto shifted = static_cast<std::int64_t>(old_code) + delta;
            codes[j] = static_cast<std::uint32_t>(std::clamp<std::int64_t>(shifted, 0, top));

            const Chromosome candidate = codes_to_chromosome(codes, params.resolution, gray);
            const Evaluation ev = problem.evaluate(candidate, lambda);
            result.evaluations += 1;
            tracker.offer(candidate, ev, elapsed_ms(start), stage);

            const double diff = ev.value - current_ev.value;
            if (diff <= 0.0 || unit(rng) < std::exp(-diff / temperature)) {
                current = candidate;
                current_ev = ev;
            } else {
                codes[j] = old_code;
            }
        }
        stage += 1;
        result.log.push_back({0, stage, lambda, current_ev.value, current_ev.real_cost,
                              current_ev.penalty_value, elapsed_ms(start)});
        temperature *= params.cooling;
        lambda = anneal(lambda, params.anneal_rate);
    }

    result.wall_ms = elapsed_ms(start);
    tracker.finalize(result);
    return result;
}

PathResult shortest_feasible_path(std::span<const Obstacle> obstacles, Vec2 start, Vec2 end,
                                  double clearance) {
    if (clearance < 0.0) throw InvalidInput("clearance must be nonnegative");

    std::vector<std::vector<Vec2>> polys;
    polys.reserve(obstacles.size());
    for (const Obstacle& o : obstacles) polys.push_back(inflate_polygon(o, clearance));

    for (const auto& poly : polys) {
        if (point_in_polygon(poly, start) == PointSide::Inside) {
            throw InvalidInput("start point lies inside an obstacle");
        }
        if (point_in_polygon(poly, end) == PointSide::Inside) {
            throw InvalidInput("end point lies inside an obstacle");
        }
    }

    std::vector<Vec2> nodes{start, end};
    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
        for (const Vec2 v : polys[pi]) {
            bool buried = false;
            for (std::size_t qi = 0; qi < polys.size() && !buried; ++qi) {
                if (qi != pi && point_in_polygon(polys[qi], v) == PointSide::Inside) buried = true;
            }
            if (!buried) nodes.push_back(v);
        }
    }

    std::vector<Aabb> boxes;
    boxes.reserve(polys.size());
    for (const auto& poly : polys) boxes.push_back(polygon_bounds(poly));

    auto visible = [&](Vec2 a, Vec2 b) {
        const Aabb seg_box{{std::min(a.x, b.x), std::min(a.y, b.y)},
                           {std::max(a.x, b.x), std::max(a.y, b.y)}};
        for (std::size_t pi = 0; pi < polys.size(); ++pi) {
            if (!boxes[pi].overlaps(seg_box)) continue;
            if (segment_crosses_interior(polys[pi], a, b)) return false;
        }
        return true;
    };

    const std::size_t n = nodes.size();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, kInf);
    std::vector<std::size_t> prev(n, SIZE_MAX);
    using QEntry = std::pair<double, std::size_t>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue;

    dist[0] = 0.0;
    queue.push({0.0, 0});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        if (u == 1) break; // reached the end node
        for (std::size_t v = 0; v < n; ++v) {
            if (v == u) continue;
            const double w = norm(nodes[v] - nodes[u]);
            if (dist[u] + w >= dist[v]) continue;
            if (!visible(nodes[u], nodes[v])) continue;
            dist[v] = dist[u] + w;
            prev[v] = u;
            queue.push({dist[v], v});
        }
    }

    PathResult out;
    if (dist[1] == kInf) return out;
    out.found = true;
    out.length = dist[1];
    std::vector<Vec2> reversed;
    for (std::size_t v = 1; v != SIZE_MAX; v = prev[v]) {
        reversed.push_back(nodes[v]);
        if (v == 0) break;
    }
    out.polyline.assign(reversed.rbegin(), reversed.rend());
    return out;
}

std::vector<BypassClass> enumerate_bypasses(std::span<const Obstacle> obstacles, double span,
                                            int free_waypoints, const BypassOptions& options) {
    if (!(span > 0.0)) throw InvalidInput("span must be positive");
    if (free_waypoints < 1) throw InvalidInput("need at least one free waypoint");
    if (options.cap < 0) throw InvalidInput("bypass cap must be nonnegative");

    struct Entry {
        std::vector<Vec2> poly;
        Aabb box;
    };
    std::vector<Entry> relevant;
    for (const Obstacle& o : obstacles) {
        if (o.bounds().hi.x <= 0.0 || o.bounds().lo.x >= span) continue;
        auto poly = inflate_polygon(o, options.clearance);
        auto box = polygon_bounds(poly);
        relevant.push_back({std::move(poly), box});
    }
    std::sort(relevant.begin(), relevant.end(), [](const Entry& a, const Entry& b) {
        return a.box.lo.x != b.box.lo.x ? a.box.lo.x < b.box.lo.x : a.box.hi.x < b.box.hi.x;
    });

    const auto n_obstacles = relevant.size();
    if (n_obstacles > static_cast<std::size_t>(options.cap)) {
        throw InvalidInput("bypass enumeration refused: " + std::to_string(n_obstacles) +
                           " obstacles means 2^" + std::to_string(n_obstacles) +
                           " classes, over the cap of 2^" + std::to_string(options.cap));
    }

    const auto m = static_cast<std::size_t>(free_waypoints);
    const double spacing = span / static_cast<double>(m + 1);
    std::vector<double> xs(m);
    for (std::size_t j = 0; j < m; ++j) xs[j] = spacing * static_cast<double>(j + 1);

    // Per obstacle and abscissa: the boundary envelope, evaluated at the
    // abscissa clamped into the obstacle's x-range so neighbouring waypoints
    // get standoff too.
    std::vector<std::vector<std::optional<std::pair<double, double>>>> envelopes(n_obstacles);
    for (std::size_t i = 0; i < n_obstacles; ++i) {
        envelopes[i].resize(m);
        const auto& entry = relevant[i];
        for (std::size_t j = 0; j < m; ++j) {
            if (xs[j] < entry.box.lo.x - spacing || xs[j] > entry.box.hi.x + spacing) continue;
            const double cx = std::clamp(xs[j], entry.box.lo.x + 1e-9 * (entry.box.hi.x - entry.box.lo.x),
                                         entry.box.hi.x - 1e-9 * (entry.box.hi.x - entry.box.lo.x));
            envelopes[i][j] = envelope_at(entry.poly, cx);
        }
    }

    const std::size_t count = std::size_t{1} << n_obstacles;
    std::vector<BypassClass> classes;
    classes.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        BypassClass cls;
        cls.above.resize(n_obstacles);
        for (std::size_t i = 0; i < n_obstacles; ++i) cls.above[i] = (mask >> i) & 1u;

        cls.seed_ordinates.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            double floor_y = -std::numeric_limits<double>::infinity();
            double ceil_y = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < n_obstacles; ++i) {
                if (!envelopes[i][j]) continue;
                const auto [lo, hi] = *envelopes[i][j];
                if (cls.above[i]) {
                    floor_y = std::max(floor_y, hi + options.margin);
                } else {
                    ceil_y = std::min(ceil_y, lo - options.margin);
                }
            }
            double y = 0.0;
            if (std::isfinite(floor_y) && std::isfinite(ceil_y)) {
                y = 0.5 * (floor_y + ceil_y); // corridor midline, possibly inverted
            } else if (std::isfinite(floor_y)) {
                y = std::max(0.0, floor_y);
            } else if (std::isfinite(ceil_y)) {
                y = std::min(0.0, ceil_y);
            }
            cls.seed_ordinates[j] = std::clamp(y, -span, span);
        }
        classes.push_back(std::move(cls));
    }
    return classes;
}

SolverResult bypass_solver(std::span<const BypassClass> classes, const ProblemContext& problem,
                           const BypassSolverParams& params, std::uint64_t seed) {
    if (classes.empty()) throw InvalidInput("bypass solver needs at least one class");
    if (params.population_size < 2) throw InvalidInput("bypass population must be >= 2");

    const auto start = Clock::now();
    const double span = problem.span();
    const auto m = static_cast<std::size_t>(problem.config().free_waypoints);
    const std::uint32_t top = max_code(params.resolution);

    BestTracker tracker;
    SolverResult result;

    // Death penalty: infeasible candidates never enter a population, so the
    // fitness of surviving members is just the physical cost.
    constexpr double kDead = 1e300;
    auto fitness_of = [&](const Evaluation& ev) { return ev.feasible ? ev.real_cost : kDead; };

    for (std::size_t ci = 0; ci < classes.size(); ++ci) {
        const BypassClass& cls = classes[ci];
        auto rng = seeded_rng(seed, static_cast<int>(ci));
        if (cls.seed_ordinates.size() != m) {
            throw InvalidInput("bypass class seed does not match the waypoint count");
        }

        const bool gray = problem.config().gray_code;
        const Chromosome seed_chromosome = encode_ordinates(cls.seed_ordinates, span,
                                                            params.resolution, gray);
        std::uniform_int_distribution<int> jitter(-2, 2);

        std::vector<Member> feasible_members;
        const std::size_t budget = params.population_size *
                                   static_cast<std::size_t>(std::max(params.init_attempts, 1));
        for (std::size_t attempt = 0;
             attempt < budget && feasible_members.size() < params.population_size; ++attempt) {
            Chromosome candidate = seed_chromosome;
            if (attempt > 0) {
                auto codes = chromosome_codes(candidate, gray);
                for (std::size_t j = 0; j < m; ++j) {
                    const auto shifted = static_cast<std::int64_t>(codes[j]) + jitter(rng);
                    codes[j] = static_cast<std::uint32_t>(std::clamp<std::int64_t>(shifted, 0, top));
                }
                candidate = codes_to_chromosome(codes, params.resolution, gray);
            }
            const Evaluation ev = problem.evaluate(candidate, 1.0);
            tracker.offer(candidate, ev, elapsed_ms(start), 0);
            result.evaluations += 1;
            if (ev.feasible) feasible_members.push_back({candidate, ev.real_cost, 0});
        }

        if (feasible_members.empty()) {
            result.log.push_back({static_cast<int>(ci), 0, 0.0, kDead, kDead, 0.0,
                                  elapsed_ms(start)});
            continue; // class has no feasible corridor under this seeding
        }
        while (feasible_members.size() < params.population_size) {
            feasible_members.push_back(feasible_members[feasible_members.size() %
                                                        feasible_members.size()]);
        }

        Population pop(std::move(feasible_members), 0);
        for (std::uint64_t gen = 1; gen <= params.generations; ++gen) {
            const auto raw = ga_offspring(pop, params.population_size, params.ga, rng);
            std::vector<Chromosome> survivors;
            survivors.reserve(raw.size());
            for (const Chromosome& c : raw) {
                const Evaluation ev = problem.evaluate(c, 1.0);
                tracker.offer(c, ev, elapsed_ms(start), gen);
                result.evaluations += 1;
                if (ev.feasible) survivors.push_back(c);
            }
            pop = next_generation(pop, survivors, {}, [&](const Chromosome& c) {
                return fitness_of(problem.evaluate(c, 1.0));
            });
            result.log.push_back({static_cast<int>(ci), gen, 0.0, pop.best().fitness,
                                  pop.best().fitness, 0.0, elapsed_ms(start)});
        }
    }

    result.wall_ms = elapsed_ms(start);
    tracker.finalize(result);
    return result;
}

SolverResult exhaustive_search(const ProblemContext& problem, int resolution, double lambda) {
    const auto m = static_cast<std::size_t>(problem.config().free_waypoints);
    const std::size_t total_bits = m * static_cast<std::size_t>(resolution);
    if (resolution < 1) throw InvalidInput("resolution must be >= 1");
    if (total_bits > 24) {
        throw InvalidInput("exhaustive search refused: " + std::to_string(total_bits) +
                           " bits exceeds the 24-bit cap");
    }

    const auto start = Clock::now();
    const std::uint64_t count = std::uint64_t{1} << total_bits;

    SolverResult result;
    bool have_best = false;
    double best_value = 0.0;
    Chromosome best;
    Evaluation best_ev;

    std::vector<std::uint8_t> bits(total_bits);
    for (std::uint64_t code = 0; code < count; ++code) {
        for (std::size_t i = 0; i < total_bits; ++i) {
            bits[i] = static_cast<std::uint8_t>((code >> (total_bits - 1 - i)) & 1u);
        }
        Chromosome c{bits, resolution};
        const Evaluation ev = problem.evaluate(c, lambda);
        result.evaluations += 1;
        if (!have_best || ev.value < best_value) {
            have_best = true;
            best_value = ev.value;
            best = std::move(c);
            best_ev = ev;
        }
    }

    result.feasible = best_ev.feasible;
    result.chromosome = std::move(best);
    result.evaluation = best_ev;
    result.wall_ms = elapsed_ms(start);
    return result;
}

} // namespace searoute
