#include "searoute/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace searoute {

using nlohmann::json;

namespace {

std::string join_issues(const std::string& summary, const std::vector<std::string>& issues) {
    std::ostringstream out;
    out << summary;
    for (const auto& issue : issues) out << "\n  - " << issue;
    return out.str();
}

struct Collector {
    std::vector<std::string> issues;
    void add(std::string msg) { issues.push_back(std::move(msg)); }
    bool ok() const { return issues.empty(); }
};

template <typename T>
std::optional<T> field(const json& j, const std::string& key, Collector& c, bool required,
                       const char* what) {
    if (!j.is_object() || !j.contains(key)) {
        if (required) c.add("missing field: " + key);
        return std::nullopt;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        c.add("field '" + key + "' is not " + what);
        return std::nullopt;
    }
}

json parse_json_file(const std::filesystem::path& path, Collector& c) {
    std::ifstream in(path);
    if (!in) {
        c.add("cannot open file: " + path.string());
        return json();
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        c.add("JSON parse error in " + path.string() + ": " + e.what());
        return json();
    }
}

Mat2 parse_mat2(const json& j, const std::string& key, Collector& c) {
    Mat2 m{};
    const auto rows = field<std::vector<std::vector<double>>>(j, key, c, true, "a 2x2 array");
    if (!rows) return m;
    if (rows->size() != 2 || (*rows)[0].size() != 2 || (*rows)[1].size() != 2) {
        c.add("field '" + key + "' must be a 2x2 array");
        return m;
    }
    m.xx = (*rows)[0][0];
    m.xy = (*rows)[0][1];
    m.yx = (*rows)[1][0];
    m.yy = (*rows)[1][1];
    return m;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

// Comfort integral over an arbitrary polyline (the visibility-graph path is
// not a function graph, so route_cost cannot score it).
double polyline_comfort(std::span<const Vec2> pts, const EnvironmentField& env,
                        const ShipModel& ship, int subsamples) {
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const Vec2 a = pts[k];
        const Vec2 b = pts[k + 1];
        const double len = norm(b - a);
        if (len == 0.0) continue;
        const Vec2 t = (b - a) / len;
        double seg = 0.0;
        for (int j = 0; j < subsamples; ++j) {
            const Vec2 p = a + (b - a) * ((j + 0.5) / subsamples);
            const FieldSample f = env.sample(p);
            seg += dot(left_mul(f.wind, ship.wind_response) + left_mul(f.wave, ship.wave_response),
                       t);
        }
        total += seg * len / subsamples;
    }
    return total;
}

EnvironmentField load_grid(const EnvironmentSpec& spec, Collector& c) {
    const json meta = parse_json_file(*spec.meta_json, c);
    if (!c.ok()) throw ScenarioError("environment metadata failed to load", c.issues);

    Collector mc;
    const auto origin = field<std::vector<double>>(meta, "origin", mc, true, "an [x, y] array");
    const auto cell = field<double>(meta, "cell_size", mc, true, "a number");
    const auto nx = field<int>(meta, "nx", mc, true, "an integer");
    const auto ny = field<int>(meta, "ny", mc, true, "an integer");
    if (origin && origin->size() != 2) mc.add("metadata origin must have two entries");
    if (!mc.ok()) throw ScenarioError("invalid environment metadata " + spec.meta_json->string(),
                                      mc.issues);

    std::ifstream in(*spec.grid_csv);
    if (!in) throw ScenarioError("environment grid failed to load",
                                 {"cannot open file: " + spec.grid_csv->string()});
    std::string line;
    if (!std::getline(in, line) || line.rfind("x,y,vx,vy,wx,wy", 0) != 0) {
        throw ScenarioError("invalid environment grid " + spec.grid_csv->string(),
                            {"expected header x,y,vx,vy,wx,wy"});
    }

    const std::size_t expected = static_cast<std::size_t>(*nx) * static_cast<std::size_t>(*ny);
    std::vector<Vec2> wind;
    std::vector<Vec2> wave;
    wind.reserve(expected);
    wave.reserve(expected);
    const double tol = 1e-6 * std::max(std::abs(*cell), 1.0);
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double x, y, vx, vy, wx, wy;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &x, &y, &vx, &vy, &wx, &wy) != 6) {
            throw ScenarioError("invalid environment grid " + spec.grid_csv->string(),
                                {"unparsable row " + std::to_string(row + 2)});
        }
        const std::size_t ix = row % static_cast<std::size_t>(*nx);
        const std::size_t iy = row / static_cast<std::size_t>(*nx);
        const double ex = (*origin)[0] + *cell * static_cast<double>(ix);
        const double ey = (*origin)[1] + *cell * static_cast<double>(iy);
        if (std::abs(x - ex) > tol || std::abs(y - ey) > tol) {
            throw ScenarioError("invalid environment grid " + spec.grid_csv->string(),
                                {"row " + std::to_string(row + 2) +
                                 " coordinates disagree with the metadata lattice"});
        }
        wind.push_back({vx, vy});
        wave.push_back({wx, wy});
        ++row;
    }
    if (row != expected) {
        throw ScenarioError("invalid environment grid " + spec.grid_csv->string(),
                            {"expected " + std::to_string(expected) + " rows, found " +
                             std::to_string(row)});
    }
    return EnvironmentField({(*origin)[0], (*origin)[1]}, *cell, *nx, *ny, std::move(wind),
                            std::move(wave));
}

std::vector<std::vector<Vec2>> load_geojson_polygons(const std::filesystem::path& path,
                                                     Collector& c) {
    std::vector<std::vector<Vec2>> polys;
    const json root = parse_json_file(path, c);
    if (!c.ok()) return polys;

    if (root.value("type", "") != "FeatureCollection" || !root.contains("features")) {
        c.add(path.string() + ": expected a GeoJSON FeatureCollection");
        return polys;
    }
    std::size_t index = 0;
    for (const json& feature : root.at("features")) {
        const std::string where = path.string() + " feature " + std::to_string(index++);
        if (!feature.contains("geometry")) {
            c.add(where + ": missing geometry");
            continue;
        }
        const json& geom = feature.at("geometry");
        if (geom.value("type", "") != "Polygon") {
            c.add(where + ": only Polygon geometries are supported");
            continue;
        }
        const json& rings = geom.at("coordinates");
        if (!rings.is_array() || rings.empty()) {
            c.add(where + ": polygon has no rings");
            continue;
        }
        if (rings.size() > 1) {
            c.add(where + ": polygon holes are not supported");
            continue;
        }
        std::vector<Vec2> ring;
        for (const json& pt : rings.at(0)) {
            if (!pt.is_array() || pt.size() < 2) {
                c.add(where + ": malformed coordinate pair");
                break;
            }
            ring.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
        }
        if (ring.size() >= 2 && norm(ring.front() - ring.back()) == 0.0) {
            ring.pop_back(); // closed ring convention
        }
        if (ring.size() < 3) {
            c.add(where + ": polygon needs at least 3 distinct vertices");
            continue;
        }
        polys.push_back(std::move(ring));
    }
    return polys;
}

std::string format_double(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

} // namespace

ScenarioError::ScenarioError(std::string summary, std::vector<std::string> issues)
    : InvalidInput(join_issues(summary, issues)), issues_(std::move(issues)) {}

Scenario load_scenario(const std::filesystem::path& path) {
    Collector c;
    const json j = parse_json_file(path, c);
    if (!c.ok()) throw ScenarioError("scenario failed to load", c.issues);
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");

    Scenario s;
    const auto version = field<int>(j, "schema_version", c, true, "an integer");
    if (version && *version != 1) {
        c.add("unsupported schema_version " + std::to_string(*version) + " (expected 1)");
    }
    s.name = field<std::string>(j, "name", c, true, "a string").value_or("");

    if (const auto frame = field<json>(j, "frame", c, true, "an object")) {
        const auto mode = field<std::string>(*frame, "mode", c, true, "a string");
        if (mode && *mode != "planar" && *mode != "geodetic") {
            c.add("frame.mode must be 'planar' or 'geodetic'");
        }
        s.geodetic = mode.value_or("planar") == "geodetic";
        s.frame_scale_m = field<double>(*frame, "scale_m", c, false, "a number").value_or(1000.0);
        if (!(s.frame_scale_m > 0.0)) c.add("frame.scale_m must be positive");
    }

    auto parse_point = [&](const char* key) {
        if (const auto pt = field<json>(j, key, c, true, "an object")) {
            if (s.geodetic) {
                const auto lat = field<double>(*pt, "lat", c, true, "a number");
                const auto lon = field<double>(*pt, "lon", c, true, "a number");
                return std::pair<GeoPoint, Vec2>{{lat.value_or(0), lon.value_or(0)}, {}};
            }
            const auto x = field<double>(*pt, "x", c, true, "a number");
            const auto y = field<double>(*pt, "y", c, true, "a number");
            return std::pair<GeoPoint, Vec2>{{}, {x.value_or(0), y.value_or(0)}};
        }
        return std::pair<GeoPoint, Vec2>{{}, {}};
    };
    std::tie(s.departure_geo, s.departure_planar) = parse_point("departure");
    std::tie(s.arrival_geo, s.arrival_planar) = parse_point("arrival");

    if (const auto env = field<json>(j, "environment", c, true, "an object")) {
        if (env->contains("uniform")) {
            const json& u = env->at("uniform");
            const auto wind = field<std::vector<double>>(u, "wind", c, true, "a [vx, vy] array");
            const auto wave = field<std::vector<double>>(u, "wave", c, true, "a [wx, wy] array");
            if ((wind && wind->size() != 2) || (wave && wave->size() != 2)) {
                c.add("environment.uniform vectors must have two components");
            } else if (wind && wave) {
                s.environment.uniform = FieldSample{{(*wind)[0], (*wind)[1]},
                                                    {(*wave)[0], (*wave)[1]}};
            }
        } else {
            const auto csv = field<std::string>(*env, "grid_csv", c, true, "a string");
            const auto meta = field<std::string>(*env, "meta_json", c, true, "a string");
            if (csv) {
                s.environment.grid_csv = base / *csv;
                if (!std::filesystem::exists(*s.environment.grid_csv)) {
                    c.add("environment.grid_csv not found: " + s.environment.grid_csv->string());
                }
            }
            if (meta) {
                s.environment.meta_json = base / *meta;
                if (!std::filesystem::exists(*s.environment.meta_json)) {
                    c.add("environment.meta_json not found: " + s.environment.meta_json->string());
                }
            }
        }
    }

    if (j.contains("obstacles") && !j.at("obstacles").is_null()) {
        ObstacleSpec spec;
        const json& o = j.at("obstacles");
        const auto file = field<std::string>(o, "geojson", c, true, "a string");
        const auto coords = field<std::string>(o, "coords", c, false, "a string").value_or("frame");
        if (coords != "frame" && coords != "geodetic") {
            c.add("obstacles.coords must be 'frame' or 'geodetic'");
        }
        spec.frame_coords = coords != "geodetic";
        if (file) {
            spec.geojson = base / *file;
            if (!std::filesystem::exists(spec.geojson)) {
                c.add("obstacles.geojson not found: " + spec.geojson.string());
            }
            s.obstacles = spec;
        }
    }

    if (const auto ship = field<json>(j, "ship", c, true, "an object")) {
        s.ship.speed = field<double>(*ship, "speed", c, true, "a number").value_or(1.0);
        s.ship.wind_response = parse_mat2(*ship, "wind_response", c);
        s.ship.wave_response = parse_mat2(*ship, "wave_response", c);
        const auto turn = field<double>(*ship, "max_turn_deg", c, true, "a number");
        s.ship.max_turn = turn.value_or(60.0) * std::numbers::pi / 180.0;
        if (!(s.ship.speed > 0.0)) c.add("ship.speed must be positive");
        if (turn && !(*turn > 0.0 && *turn < 180.0)) c.add("ship.max_turn_deg must lie in (0, 180)");
    }

    s.alpha = field<double>(j, "alpha", c, true, "a number").value_or(1.0);
    if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) {
        c.add("alpha must lie in [0, 1], got " + format_double(s.alpha, "%g"));
    }

    if (const auto route = field<json>(j, "route", c, false, "an object")) {
        s.free_waypoints = field<int>(*route, "free_waypoints", c, false, "an integer").value_or(20);
        s.quadrature_samples =
            field<int>(*route, "quadrature_samples", c, false, "an integer").value_or(8);
        s.gray_code = field<bool>(*route, "gray_code", c, false, "a boolean").value_or(false);
    }
    if (s.free_waypoints < 1) c.add("route.free_waypoints must be at least 1");
    if (s.quadrature_samples < 1) c.add("route.quadrature_samples must be at least 1");

    if (const auto pen = field<json>(j, "penalty", c, false, "an object")) {
        s.penalty.step_sharpness =
            field<double>(*pen, "step_sharpness", c, false, "a number").value_or(1.0);
        s.penalty.delta_sharpness =
            field<double>(*pen, "delta_sharpness", c, false, "a number").value_or(1.0);
        s.lambda0 = field<double>(*pen, "lambda0", c, false, "a number").value_or(1.0);
        s.penalty.area_tolerance =
            field<double>(*pen, "area_tolerance", c, false, "a number").value_or(1e-9);
        s.penalty.tie_sharpness_to_lambda =
            field<bool>(*pen, "tie_sharpness_to_lambda", c, false, "a boolean").value_or(true);
        if (!(s.penalty.step_sharpness > 0.0) || !(s.penalty.delta_sharpness > 0.0)) {
            c.add("penalty sharpness parameters must be positive");
        }
        if (!(s.lambda0 > 0.0)) c.add("penalty.lambda0 must be positive");
        if (s.penalty.area_tolerance < 0.0) c.add("penalty.area_tolerance must be nonnegative");
    }
    s.penalty.lambda = s.lambda0;

    if (const auto net = field<json>(j, "network", c, true, "an object")) {
        const auto levels = field<std::vector<json>>(*net, "levels", c, true, "an array");
        if (levels) {
            int prev = 0;
            for (const json& level : *levels) {
                LevelSpec spec;
                Collector lc;
                spec.resolution = field<int>(level, "resolution", lc, true, "an integer").value_or(0);
                spec.islands = field<int>(level, "islands", lc, false, "an integer").value_or(1);
                spec.anneal_rate =
                    field<double>(level, "anneal_rate", lc, true, "a number").value_or(0.0);
                for (auto& issue : lc.issues) c.add("network.levels: " + issue);
                if (spec.resolution <= prev) {
                    c.add("network.levels resolutions must be strictly increasing");
                }
                if (spec.islands < 1) c.add("network.levels islands must be at least 1");
                if (spec.anneal_rate < 0.0) c.add("network.levels anneal_rate must be >= 0");
                prev = spec.resolution;
                s.levels.push_back(spec);
            }
            if (s.levels.empty()) c.add("network.levels must not be empty");
        }
        s.network_defaults.population_size =
            field<std::size_t>(*net, "population_size", c, false, "an integer").value_or(40);
        s.network_defaults.migration_interval =
            field<int>(*net, "migration_interval", c, false, "an integer").value_or(10);
        s.network_defaults.lambda0 = s.lambda0;
        s.migration_fraction =
            field<double>(*net, "migration_fraction", c, false, "a number").value_or(0.25);
        if (s.network_defaults.population_size < 2) c.add("network.population_size must be >= 2");
        if (s.network_defaults.migration_interval < 1) {
            c.add("network.migration_interval must be >= 1");
        }
        if (!(s.migration_fraction > 0.0 && s.migration_fraction < 1.0)) {
            c.add("network.migration_fraction must lie in (0, 1)");
        }
    }

    if (const auto term = field<json>(j, "termination", c, false, "an object")) {
        s.termination.max_generations =
            field<std::uint64_t>(*term, "max_generations", c, false, "an integer").value_or(500);
        s.termination.plateau_generations =
            field<std::uint64_t>(*term, "plateau_generations", c, false, "an integer").value_or(30);
        s.termination.wall_time_ms =
            field<double>(*term, "wall_time_ms", c, false, "a number").value_or(0.0);
        if (s.termination.max_generations == 0) c.add("termination.max_generations must be >= 1");
    }

    if (const auto seed = field<std::uint64_t>(j, "seed", c, false, "an integer")) s.seed = *seed;

    if (const auto sa = field<json>(j, "sa", c, false, "an object")) {
        SaParams p;
        p.initial_temperature =
            field<double>(*sa, "initial_temperature", c, false, "a number").value_or(1.0);
        p.cooling = field<double>(*sa, "cooling", c, false, "a number").value_or(0.95);
        p.steps_per_temperature =
            field<int>(*sa, "steps_per_temperature", c, false, "an integer").value_or(50);
        p.step_cells = field<int>(*sa, "step_cells", c, false, "an integer").value_or(2);
        p.resolution = field<int>(*sa, "resolution", c, false, "an integer").value_or(0);
        p.max_evaluations =
            field<std::uint64_t>(*sa, "max_evaluations", c, false, "an integer").value_or(100000);
        p.anneal_rate = field<double>(*sa, "anneal_rate", c, false, "a number").value_or(-1.0);
        s.sa = p;
    }

    if (const auto byp = field<json>(j, "bypass", c, false, "an object")) {
        s.bypass_options.cap = field<int>(*byp, "cap", c, false, "an integer").value_or(14);
        s.bypass_options.clearance =
            field<double>(*byp, "clearance", c, false, "a number").value_or(0.0);
        s.bypass_options.margin = field<double>(*byp, "margin", c, false, "a number").value_or(0.0);
        s.bypass_params.population_size =
            field<std::size_t>(*byp, "population_size", c, false, "an integer").value_or(20);
        s.bypass_params.generations =
            field<std::uint64_t>(*byp, "generations", c, false, "an integer").value_or(40);
    }

    if (!c.ok()) throw ScenarioError("invalid scenario " + path.string(), c.issues);
    return s;
}

PreparedScenario prepare(const Scenario& s) {
    Collector c;

    PlanningFrame frame = s.geodetic
        ? PlanningFrame::from_geodetic(s.departure_geo, s.arrival_geo, s.frame_scale_m)
        : PlanningFrame::from_planar(s.departure_planar, s.arrival_planar);
    const double d = frame.span();

    EnvironmentField env = [&] {
        if (s.environment.uniform) {
            return EnvironmentField::uniform({-0.1 * d, -1.1 * d}, {1.1 * d, 1.1 * d},
                                             s.environment.uniform->wind,
                                             s.environment.uniform->wave);
        }
        return load_grid(s.environment, c);
    }();

    std::vector<Obstacle> obstacles;
    if (s.obstacles) {
        const auto rings = load_geojson_polygons(s.obstacles->geojson, c);
        if (!c.ok()) throw ScenarioError("obstacle file failed to load", c.issues);
        for (auto ring : rings) {
            if (!s.obstacles->frame_coords) {
                if (!s.geodetic) {
                    throw ScenarioError("obstacle file failed to load",
                                        {"geodetic obstacle coordinates need a geodetic frame"});
                }
                for (Vec2& v : ring) v = frame.to_frame({v.y, v.x}); // GeoJSON order is lon,lat
            }
            obstacles.emplace_back(std::move(ring));
        }
    }

    ProblemConfig config;
    config.alpha = s.alpha;
    config.free_waypoints = s.free_waypoints;
    config.quadrature_samples = s.quadrature_samples;
    config.gray_code = s.gray_code;
    config.penalty = s.penalty;

    PreparedScenario out{
        .frame = frame,
        .problem = ProblemContext(d, std::move(env), s.ship, std::move(obstacles), config),
        .network = build_network(s.levels, s.network_defaults),
        .termination = s.termination,
        .migration_fraction = s.migration_fraction,
        .finest_resolution = s.levels.back().resolution,
        .finest_anneal_rate = s.levels.back().anneal_rate,
    };
    return out;
}

RouteResult solve_scenario(const Scenario& scenario, const PreparedScenario& prepared,
                           std::uint64_t seed, const RunOptions& options) {
    RunOptions opts = options;
    opts.migration_fraction = prepared.migration_fraction;
    const RunResult rr = run(prepared.network, prepared.problem, prepared.termination, seed, opts);
    const Route route = rr.route(prepared.problem);

    RouteResult out;
    out.scenario_name = scenario.name;
    out.solver = "ga-eda";
    out.seed = seed;
    out.feasible = rr.feasible;
    out.frame_waypoints = route.waypoints();
    out.breakdown = prepared.problem.cost_breakdown(route);
    out.report = prepared.problem.constraints(route);
    out.penalty_value = rr.evaluation.penalty_value;
    out.generalized_value = rr.evaluation.value;
    out.final_lambdas = rr.final_lambdas;
    out.generations = rr.generations;
    out.wall_ms = rr.wall_ms;
    out.log = rr.log;
    return out;
}

BaselineSolver baseline_from_name(const std::string& name) {
    if (name == "sa") return BaselineSolver::Sa;
    if (name == "shortest") return BaselineSolver::Shortest;
    if (name == "bypass") return BaselineSolver::Bypass;
    if (name == "brute") return BaselineSolver::Brute;
    throw InvalidInput("unknown baseline solver '" + name + "' (expected sa|shortest|bypass|brute)");
}

RouteResult run_baseline(const Scenario& scenario, const PreparedScenario& prepared,
                         BaselineSolver solver, std::uint64_t seed) {
    const ProblemContext& problem = prepared.problem;
    RouteResult out;
    out.scenario_name = scenario.name;
    out.seed = seed;

    auto fill_from_chromosome = [&](const SolverResult& res, const char* name) {
        const Route route = problem.decode_route(res.chromosome);
        out.solver = name;
        out.feasible = res.feasible;
        out.frame_waypoints = route.waypoints();
        out.breakdown = problem.cost_breakdown(route);
        out.report = problem.constraints(route);
        out.penalty_value = res.evaluation.penalty_value;
        out.generalized_value = res.evaluation.value;
        out.generations = res.evaluations;
        out.wall_ms = res.wall_ms;
        out.log = res.log;
    };

    switch (solver) {
    case BaselineSolver::Sa: {
        SaParams params = scenario.sa.value_or(SaParams{});
        if (params.resolution <= 0) params.resolution = prepared.finest_resolution;
        if (params.anneal_rate < 0.0) params.anneal_rate = prepared.finest_anneal_rate;
        params.lambda0 = scenario.lambda0;
        fill_from_chromosome(simulated_annealing(problem, params, seed), "sa");
        out.final_lambdas = {scenario.lambda0};
        break;
    }
    case BaselineSolver::Brute: {
        const double lambda_final =
            scenario.lambda0 *
            std::pow(1.0 + prepared.finest_anneal_rate,
                     static_cast<double>(prepared.termination.max_generations));
        fill_from_chromosome(exhaustive_search(problem, prepared.finest_resolution, lambda_final),
                             "brute");
        out.final_lambdas = {lambda_final};
        break;
    }
    case BaselineSolver::Bypass: {
        const auto classes = enumerate_bypasses(problem.obstacles(), problem.span(),
                                                problem.config().free_waypoints,
                                                scenario.bypass_options);
        BypassSolverParams params = scenario.bypass_params;
        if (params.resolution <= 0) params.resolution = prepared.finest_resolution;
        fill_from_chromosome(bypass_solver(classes, problem, params, seed), "bypass");
        break;
    }
    case BaselineSolver::Shortest: {
        const PathResult path = shortest_feasible_path(problem.obstacles(), {0.0, 0.0},
                                                       {problem.span(), 0.0},
                                                       scenario.bypass_options.clearance);
        out.solver = "shortest";
        out.feasible = path.found;
        if (path.found) {
            out.frame_waypoints = path.polyline;
            out.breakdown.time = path.length / problem.ship().speed;
            out.breakdown.comfort = polyline_comfort(path.polyline, problem.environment(),
                                                     problem.ship(),
                                                     problem.config().quadrature_samples);
            out.breakdown.total = scenario.alpha * out.breakdown.time +
                                  (1.0 - scenario.alpha) * out.breakdown.comfort;
            out.report.feasible = true;
        }
        break;
    }
    }
    return out;
}

std::string convergence_csv(const ConvergenceLog& log) {
    std::ostringstream out;
    out << "island,generation,lambda,best_E,best_S,best_P,wall_ms\n";
    for (const LogRow& row : log) {
        out << row.island << ',' << row.generation << ',' << format_double(row.lambda, "%.12g")
            << ',' << format_double(row.best_value, "%.12g") << ','
            << format_double(row.best_real, "%.12g") << ','
            << format_double(row.best_penalty, "%.12g") << ','
            << format_double(row.wall_ms, "%.3f") << '\n';
    }
    return out.str();
}

void emit_result(const RouteResult& result, const std::filesystem::path& out_dir,
                 const PlanningFrame& frame) {
    std::filesystem::create_directories(out_dir);

    json coords = json::array();
    json geo_waypoints = json::array();
    for (const Vec2 p : result.frame_waypoints) {
        if (frame.geodetic()) {
            const GeoPoint g = frame.to_geodetic(p);
            coords.push_back({round6(g.lon_deg), round6(g.lat_deg)});
            geo_waypoints.push_back({round6(g.lat_deg), round6(g.lon_deg)});
        } else {
            const Vec2 q = frame.frame_to_planar(p);
            coords.push_back({round6(q.x), round6(q.y)});
        }
    }

    json geojson{
        {"type", "FeatureCollection"},
        {"features",
         json::array({json{{"type", "Feature"},
                           {"properties",
                            {{"scenario", result.scenario_name},
                             {"solver", result.solver},
                             {"feasible", result.feasible},
                             {"total_cost", result.breakdown.total}}},
                           {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}}})},
    };

    json frame_waypoints = json::array();
    for (const Vec2 p : result.frame_waypoints) frame_waypoints.push_back({p.x, p.y});

    json result_json{
        {"scenario", result.scenario_name},
        {"solver", result.solver},
        {"seed", result.seed},
        {"feasible", result.feasible},
        {"cost",
         {{"total", result.breakdown.total},
          {"time", result.breakdown.time},
          {"comfort", result.breakdown.comfort}}},
        {"penalty",
         {{"value", result.penalty_value},
          {"generalized_cost", result.generalized_value},
          {"final_lambdas", result.final_lambdas}}},
        {"constraints",
         {{"feasible", result.report.feasible},
          {"split_ratios", result.report.split_ratios},
          {"turn_slacks", result.report.turn_slacks}}},
        {"route", {{"frame_waypoints", frame_waypoints}, {"geodetic_waypoints", geo_waypoints}}},
        {"meta", {{"generations", result.generations}, {"wall_ms", result.wall_ms}}},
    };

    std::ofstream(out_dir / "route.geojson") << geojson.dump(2) << '\n';
    std::ofstream(out_dir / "result.json") << result_json.dump(2) << '\n';
    std::ofstream(out_dir / "convergence.csv") << convergence_csv(result.log);
}

std::vector<Vec2> load_result_waypoints(const std::filesystem::path& result_json) {
    Collector c;
    const json j = parse_json_file(result_json, c);
    if (!c.ok()) throw ScenarioError("result file failed to load", c.issues);
    std::vector<Vec2> out;
    try {
        for (const json& pt : j.at("route").at("frame_waypoints")) {
            out.push_back({pt.at(0).get<double>(), pt.at(1).get<double>()});
        }
    } catch (const json::exception& e) {
        throw ScenarioError("result file failed to load",
                            {result_json.string() + ": " + e.what()});
    }
    return out;
}

std::vector<BenchRow> bench_workers(const Scenario& scenario, const PreparedScenario& prepared,
                                    std::span<const int> worker_counts, int repeats,
                                    std::uint64_t seed) {
    if (repeats < 1) throw InvalidInput("bench repeats must be >= 1");
    if (worker_counts.empty()) throw InvalidInput("bench needs at least one worker count");

    // Identical fixed-generation workload per worker count: the adaptive
    // stops would otherwise change the work done and skew the comparison.
    Termination termination = prepared.termination;
    termination.plateau_generations = 0;
    termination.wall_time_ms = 0.0;

    auto measure = [&](int workers) {
        RunOptions opts;
        opts.deterministic = false;
        opts.workers = workers;
        opts.migration_fraction = prepared.migration_fraction;
        std::vector<double> walls;
        walls.reserve(repeats);
        for (int r = 0; r < repeats; ++r) {
            const RunResult rr = run(prepared.network, prepared.problem, termination,
                                     seed + static_cast<std::uint64_t>(r), opts);
            walls.push_back(rr.wall_ms);
        }
        std::sort(walls.begin(), walls.end());
        return walls[walls.size() / 2];
    };

    double reference = -1.0;
    std::vector<BenchRow> rows;
    for (const int workers : worker_counts) {
        if (workers < 1) throw InvalidInput("worker counts must be >= 1");
        const double wall = measure(workers);
        if (workers == 1) reference = wall;
        rows.push_back({workers, wall, 1.0});
    }
    if (reference < 0.0) reference = measure(1);
    for (BenchRow& row : rows) row.speedup = reference / row.wall_ms;
    return rows;
}

std::string bench_csv(std::span<const BenchRow> rows) {
    std::ostringstream out;
    out << "workers,wall_ms,speedup\n";
    for (const BenchRow& row : rows) {
        out << row.workers << ',' << format_double(row.wall_ms, "%.3f") << ','
            << format_double(row.speedup, "%.4f") << '\n';
    }
    return out.str();
}

} // namespace searoute
