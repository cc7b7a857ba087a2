#ifndef SEAROUTE_CONVERGENCE_HPP
#define SEAROUTE_CONVERGENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace searoute {

// One per-island, per-generation progress record.
struct LogRow {
    int island = 0;
    std::uint64_t generation = 0;
    double lambda = 0.0;
    double best_value = 0.0;   // best E in the population
    double best_real = 0.0;    // its S
    double best_penalty = 0.0; // its P
    double wall_ms = 0.0;
};

using ConvergenceLog = std::vector<LogRow>;

// Wall-clock trace of improvements to the best feasible cost, for
// time-to-threshold comparisons between solvers.
struct TracePoint {
    double wall_ms = 0.0;
    double feasible_cost = 0.0;
    std::uint64_t generation = 0;
};

// CSV with the fixed header island,generation,lambda,best_E,best_S,best_P,wall_ms.
std::string convergence_csv(const ConvergenceLog& log);

} // namespace searoute

#endif
