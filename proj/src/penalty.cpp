#include "searoute/penalty.hpp"

#include "searoute/errors.hpp"

#include <algorithm>
#include <cmath>

namespace searoute {

namespace {

// exp() overflows just past 709; everything here saturates harmlessly at 700.
constexpr double kMaxExponent = 700.0;

double stable_reciprocal_expm1(double exponent) {
    return 1.0 / std::expm1(std::min(exponent, kMaxExponent));
}

} // namespace

Obstacle::Obstacle(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw InvalidInput("obstacle polygon needs at least 3 vertices");
    if (!polygon_is_simple(vertices_)) throw InvalidInput("obstacle polygon is not simple");
    double signed_area = polygon_area(vertices_);
    if (signed_area < 0.0) {
        std::reverse(vertices_.begin(), vertices_.end());
        signed_area = -signed_area;
    }
    if (!(signed_area > 0.0)) throw InvalidInput("obstacle polygon has zero area");
    area_ = signed_area;
    bounds_ = polygon_bounds(vertices_);
}

PenaltyParams PenaltyParams::at_lambda(double new_lambda) const {
    PenaltyParams p = *this;
    p.lambda = new_lambda;
    if (p.tie_sharpness_to_lambda) {
        p.step_sharpness = new_lambda;
        p.delta_sharpness = new_lambda;
    }
    return p;
}

double split_ratio(const Route& route, const Obstacle& obstacle, double area_tolerance) {
    const auto& poly = obstacle.vertices();
    const auto& wps = route.waypoints();

    double above = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < wps.size(); ++k) {
        const Vec2 a = wps[k];
        const Vec2 b = wps[k + 1];
        if (!obstacle.bounds().overlaps_x(a.x, b.x)) continue;

        // Clip the polygon to the vertical strip of this segment; inside the
        // strip the route graph is exactly the chord a->b.
        auto piece = clip_left_of(poly, {a.x, 0.0}, {a.x, -1.0}); // x >= a.x
        if (piece.empty()) continue;
        piece = clip_left_of(piece, {b.x, 0.0}, {b.x, 1.0}); // x <= b.x
        if (piece.empty()) continue;

        total += std::max(polygon_area(piece), 0.0);
        const auto above_piece = clip_left_of(piece, a, b);
        above += std::max(polygon_area(above_piece), 0.0);
    }

    const double below = std::max(total - above, 0.0);
    const double smaller = std::min(above, below);
    const double larger = std::max(above, below);
    if (smaller <= area_tolerance * obstacle.area() || larger <= 0.0) return 0.0;
    return -smaller / larger;
}

std::vector<double> turn_slacks(const Route& route, double max_turn) {
    std::vector<double> slacks;
    const std::size_t segments = route.segment_count();
    if (segments < 2) return slacks;
    slacks.reserve(segments - 1);
    for (std::size_t k = 0; k + 1 < segments; ++k) {
        const double c = std::clamp(dot(route.segment_tangent(k), route.segment_tangent(k + 1)),
                                    -1.0, 1.0);
        slacks.push_back(max_turn - std::acos(c));
    }
    return slacks;
}

ConstraintReport evaluate_constraints(const Route& route, std::span<const Obstacle> obstacles,
                                      double max_turn, double area_tolerance) {
    ConstraintReport report;
    report.split_ratios.reserve(obstacles.size());
    for (const Obstacle& obstacle : obstacles) {
        report.split_ratios.push_back(split_ratio(route, obstacle, area_tolerance));
    }
    report.turn_slacks = turn_slacks(route, max_turn);

    report.feasible = true;
    for (const double h : report.split_ratios) {
        if (h != 0.0) report.feasible = false;
    }
    for (const double g : report.turn_slacks) {
        if (g < 0.0) report.feasible = false;
    }
    return report;
}

double smooth_step(double x, double a) {
    if (x >= 0.0) return 1.0;
    const double ax = a * x;
    return 1.0 - std::exp(-std::min(1.0 / (ax * ax), kMaxExponent));
}

double smooth_delta_inv(double x, double a) {
    const double ax = a * x;
    if (std::abs(ax) <= 1.0) return 0.0;
    const double shifted = x < 0.0 ? ax + 1.0 : ax - 1.0;
    return stable_reciprocal_expm1(1.0 / (shifted * shifted));
}

double penalty(const ConstraintReport& report, const PenaltyParams& params) {
    double total = 0.0;
    for (const double g : report.turn_slacks) {
        if (g >= 0.0) continue;
        // (1 - u)/u with u = 1 - exp(-t) collapses to 1/(exp(t) - 1), which
        // stays finite instead of dividing by an underflowed u.
        const double ag = params.step_sharpness * g;
        total += stable_reciprocal_expm1(1.0 / (ag * ag));
    }
    for (const double h : report.split_ratios) {
        total += smooth_delta_inv(h, params.delta_sharpness);
    }
    return total;
}

GeneralizedCost generalized_cost(double real_cost, double penalty_value, double lambda) {
    GeneralizedCost out;
    out.real_cost = real_cost;
    out.penalty = penalty_value;
    if (penalty_value * lambda > 1.0) {
        const double shifted = lambda * penalty_value - 1.0;
        out.multiplier = 1.0 + stable_reciprocal_expm1(1.0 / (shifted * shifted));
    } else {
        out.multiplier = 1.0;
    }
    out.value = penalty_value == 0.0 ? real_cost
                                     : std::hypot(real_cost, penalty_value) * out.multiplier;
    return out;
}

double anneal(double lambda, double rate) {
    return lambda * (1.0 + rate);
}

} // namespace searoute
