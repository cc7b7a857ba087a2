#ifndef SEAROUTE_PROBLEM_HPP
#define SEAROUTE_PROBLEM_HPP

#include "searoute/evo_core.hpp"
#include "searoute/geo_env.hpp"
#include "searoute/penalty.hpp"

#include <memory>
#include <vector>

namespace searoute {

struct Evaluation {
    double real_cost = 0.0;    // S
    double penalty_value = 0.0; // P at the lambda used
    double value = 0.0;         // E
    bool feasible = false;      // exact constraint check, not P == 0
};

struct ProblemConfig {
    double alpha = 1.0;
    int free_waypoints = 20;
    int quadrature_samples = 8;
    bool gray_code = false; // interpret chromosome bits as Gray codes
    PenaltyParams penalty;
};

// Everything a solver needs to score a candidate: frame span, environment,
// ship, obstacles and the cost/penalty configuration. Immutable and safe to
// share across threads.
class ProblemContext {
public:
    ProblemContext(double span, EnvironmentField env, ShipModel ship,
                   std::vector<Obstacle> obstacles, ProblemConfig config);

    Evaluation evaluate(const Chromosome& c, double lambda) const;
    Evaluation evaluate(const Route& route, double lambda) const;

    Route decode_route(const Chromosome& c) const;

    CostBreakdown cost_breakdown(const Route& route) const;
    ConstraintReport constraints(const Route& route) const;

    double span() const { return span_; }
    const ProblemConfig& config() const { return config_; }
    const EnvironmentField& environment() const { return env_; }
    const ShipModel& ship() const { return ship_; }
    const std::vector<Obstacle>& obstacles() const { return obstacles_; }

private:
    double span_;
    EnvironmentField env_;
    ShipModel ship_;
    std::vector<Obstacle> obstacles_;
    ProblemConfig config_;
};

} // namespace searoute

#endif
