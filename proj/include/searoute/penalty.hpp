#ifndef SEAROUTE_PENALTY_HPP
#define SEAROUTE_PENALTY_HPP

#include "searoute/geo_env.hpp"
#include "searoute/geometry.hpp"

#include <span>
#include <vector>

namespace searoute {

// Simple polygon (island) in the planning frame, stored counter-clockwise.
class Obstacle {
public:
    explicit Obstacle(std::vector<Vec2> vertices);

    const std::vector<Vec2>& vertices() const { return vertices_; }
    double area() const { return area_; }
    const Aabb& bounds() const { return bounds_; }

private:
    std::vector<Vec2> vertices_;
    double area_ = 0.0;
    Aabb bounds_{};
};

struct ConstraintReport {
    std::vector<double> split_ratios; // h per obstacle, each in [-1, 0]
    std::vector<double> turn_slacks;  // max_turn - turn angle per interior waypoint
    bool feasible = false;            // all h exactly 0 and all slacks >= 0
};

struct PenaltyParams {
    double step_sharpness = 1.0;    // a in the smooth step
    double delta_sharpness = 1.0;   // b in the smooth delta
    double lambda = 1.0;            // annealed feasibility-zone parameter
    double area_tolerance = 1e-9;   // split slivers below this fraction of the area count as 0
    bool tie_sharpness_to_lambda = true;

    // Params for one annealing step: lambda replaced, and when tied, both
    // sharpness values follow it.
    PenaltyParams at_lambda(double new_lambda) const;
};

// Ratio -min(S1,S2)/max(S1,S2) of the two areas the route's graph cuts the
// obstacle into, counting only the part of the obstacle inside the route's
// x-span. 0 when the route misses the obstacle, -1 at an exact bisection.
double split_ratio(const Route& route, const Obstacle& obstacle, double area_tolerance = 1e-9);

// max_turn minus the heading change at each interior waypoint; the turn is
// permissible iff the slack is nonnegative.
std::vector<double> turn_slacks(const Route& route, double max_turn);

ConstraintReport evaluate_constraints(const Route& route, std::span<const Obstacle> obstacles,
                                      double max_turn, double area_tolerance = 1e-9);

// C-infinity approximation of the unit step: 1 for x >= 0, 1 - exp(-1/(ax)^2)
// below, sharpening toward the exact step as a grows.
double smooth_step(double x, double a);

// C-infinity approximation of 1/delta(x): 0 inside the dead zone |x| <= 1/a,
// then 1/(exp(1/(ax+-1)^2) - 1), growing like (a|x|-1)^2 far from zero.
double smooth_delta_inv(double x, double a);

// Total penalty: sum of (1-u)/u over turn slacks plus sum of 1/delta over
// split ratios. Zero on feasible reports; large but finite on violations.
double penalty(const ConstraintReport& report, const PenaltyParams& params);

struct GeneralizedCost {
    double real_cost = 0.0;  // S
    double penalty = 0.0;    // P
    double multiplier = 1.0; // rho
    double value = 0.0;      // E = |S + iP| * rho
};

// Modulus of the complex cost S + iP scaled by a multiplier that is 1 inside
// the zone P <= 1/lambda and climbs steeply outside it.
GeneralizedCost generalized_cost(double real_cost, double penalty_value, double lambda);

// One annealing step: lambda grows by the fractional rate per generation.
double anneal(double lambda, double rate);

} // namespace searoute

#endif
