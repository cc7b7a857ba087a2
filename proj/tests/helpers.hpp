#ifndef SEAROUTE_TESTS_HELPERS_HPP
#define SEAROUTE_TESTS_HELPERS_HPP

#include "searoute/problem.hpp"

#include <numbers>
#include <vector>

namespace searoute::testing {

// Small synthetic problem: uniform (default zero) environment over the
// planning box, unit-speed ship, generous turn limit.
inline ProblemContext make_problem(double span, std::vector<Obstacle> obstacles, double alpha,
                                   int free_waypoints, Vec2 wind = {0, 0},
                                   double max_turn = 2.0 * std::numbers::pi / 3.0,
                                   bool tie_lambda = true) {
    ShipModel ship;
    ship.speed = 1.0;
    ship.wind_response = Mat2::identity();
    ship.wave_response = Mat2{};
    ship.max_turn = max_turn;

    ProblemConfig config;
    config.alpha = alpha;
    config.free_waypoints = free_waypoints;
    config.quadrature_samples = 4;
    config.penalty.tie_sharpness_to_lambda = tie_lambda;

    auto env = EnvironmentField::uniform({-0.2 * span, -1.2 * span}, {1.2 * span, 1.2 * span},
                                         wind, {0, 0});
    return ProblemContext(span, std::move(env), ship, std::move(obstacles), config);
}

inline Obstacle box(double x0, double y0, double x1, double y1) {
    return Obstacle({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

} // namespace searoute::testing

#endif
