#include "searoute/problem.hpp"

#include "searoute/errors.hpp"

namespace searoute {

ProblemContext::ProblemContext(double span, EnvironmentField env, ShipModel ship,
                               std::vector<Obstacle> obstacles, ProblemConfig config)
    : span_(span), env_(std::move(env)), ship_(ship), obstacles_(std::move(obstacles)),
      config_(config) {
    if (!(span_ > 0.0)) throw InvalidInput("problem span must be positive");
    if (!(config_.alpha >= 0.0 && config_.alpha <= 1.0)) {
        throw InvalidInput("alpha must lie in [0, 1]");
    }
    if (config_.free_waypoints < 1) throw InvalidInput("need at least one free waypoint");
    ship_.validate();
}

Evaluation ProblemContext::evaluate(const Chromosome& c, double lambda) const {
    return evaluate(decode_route(c), lambda);
}

Route ProblemContext::decode_route(const Chromosome& c) const {
    return decode(c, span_, config_.gray_code);
}

Evaluation ProblemContext::evaluate(const Route& route, double lambda) const {
    // Skip whichever cost term alpha zeroes out; the comfort integral is the
    // expensive half.
    double time = 0.0;
    double comfort = 0.0;
    if (config_.alpha > 0.0) time = route.length() / ship_.speed;
    if (config_.alpha < 1.0) {
        comfort = comfort_cost(route, env_, ship_, config_.quadrature_samples);
    }
    const double real = config_.alpha * time + (1.0 - config_.alpha) * comfort;

    const ConstraintReport report = evaluate_constraints(route, obstacles_, ship_.max_turn,
                                                         config_.penalty.area_tolerance);
    const PenaltyParams params = config_.penalty.at_lambda(lambda);
    const double p = penalty(report, params);
    const GeneralizedCost gc = generalized_cost(real, p, lambda);

    Evaluation out;
    out.real_cost = real;
    out.penalty_value = p;
    out.value = gc.value;
    out.feasible = report.feasible;
    return out;
}

CostBreakdown ProblemContext::cost_breakdown(const Route& route) const {
    return route_cost(route, env_, ship_, config_.alpha, config_.quadrature_samples);
}

ConstraintReport ProblemContext::constraints(const Route& route) const {
    return evaluate_constraints(route, obstacles_, ship_.max_turn,
                                config_.penalty.area_tolerance);
}

} // namespace searoute
