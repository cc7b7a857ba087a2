#include "searoute/penalty.hpp"

#include "searoute/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace searoute;

namespace {

Obstacle unit_square() {
    return Obstacle({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

Route level_route(double y, double x0 = -1.0, double x1 = 2.0) {
    return Route({{x0, y}, {x1, y}});
}

} // namespace

TEST_CASE("obstacle validation") {
    CHECK_THROWS_AS(Obstacle({{0, 0}, {1, 0}}), InvalidInput);
    CHECK_THROWS_AS(Obstacle({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), InvalidInput); // bowtie
    // Clockwise input is normalized to CCW, area stays positive.
    const Obstacle o({{0, 1}, {1, 1}, {1, 0}, {0, 0}});
    CHECK(o.area() == doctest::Approx(1.0));
    CHECK(polygon_area(o.vertices()) > 0.0);
}

TEST_CASE("split ratio on the unit square") {
    const auto square = unit_square();
    SUBCASE("missing the obstacle gives 0") {
        CHECK(split_ratio(level_route(2.0), square) == 0.0);
        CHECK(split_ratio(level_route(-2.0), square) == 0.0);
    }
    SUBCASE("bisecting gives -1") {
        CHECK(split_ratio(level_route(0.5), square) == doctest::Approx(-1.0));
    }
    SUBCASE("quarter split gives -1/3") {
        CHECK(split_ratio(level_route(0.25), square) == doctest::Approx(-1.0 / 3.0));
    }
    SUBCASE("grazing the boundary counts as no crossing") {
        CHECK(split_ratio(level_route(0.0), square) == 0.0);
        CHECK(split_ratio(level_route(1.0), square) == 0.0);
    }
}

TEST_CASE("split ratio only sees the obstacle inside the route x-span") {
    const auto square = unit_square();
    // Route covering only the left half of the square, at y = 0.5: the
    // clipped half is still bisected.
    const Route half({{-1.0, 0.5}, {0.5, 0.5}});
    CHECK(split_ratio(half, square) == doctest::Approx(-1.0));
    // Route entirely left of the square.
    const Route outside({{-2.0, 0.5}, {-1.0, 0.5}});
    CHECK(split_ratio(outside, square) == 0.0);
}

TEST_CASE("split ratio with a multi-segment crossing") {
    const auto square = unit_square();
    // Piecewise route entering at y=0.25 on the left and leaving at y=0.75:
    // area below the chord y = 0.25 + 0.5x is 0.5 by symmetry.
    const Route chord({{0.0, 0.25}, {1.0, 0.75}});
    CHECK(split_ratio(chord, square) == doctest::Approx(-1.0));
}

TEST_CASE("directional response: retreating from the centroid raises h") {
    const auto square = unit_square();
    // Crossing below the centroid: moving further down (away from the
    // centroid) shrinks the smaller part, so h rises toward 0.
    double prev = -2.0;
    for (double y = 0.45; y > 0.04; y -= 0.05) {
        const double h = split_ratio(level_route(y), square);
        CHECK(h > prev);
        CHECK(h < 0.0);
        prev = h;
    }
    CHECK(prev == doctest::Approx(split_ratio(level_route(0.05), square)));
}

TEST_CASE("h stays in [-1, 0] over random convex obstacles") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int checked = 0;
    // Large randomized sweep; budget-scaled stand-in for the 1e5 bound.
    while (checked < 20000) {
        std::vector<double> angles;
        for (int i = 0; i < 6; ++i) angles.push_back(unit(rng) * 6.283185307179586);
        std::sort(angles.begin(), angles.end());
        std::vector<Vec2> poly;
        const Vec2 center{unit(rng) * 4 - 2, unit(rng) * 2 - 1};
        const double rad = 0.2 + unit(rng);
        for (const double a : angles) {
            poly.push_back({center.x + rad * std::cos(a), center.y + rad * std::sin(a)});
        }
        if (!polygon_is_simple(poly)) continue;
        const Obstacle obstacle{poly};

        std::vector<double> ys;
        for (int i = 0; i < 4; ++i) ys.push_back(unit(rng) * 6 - 3);
        const Route route = Route::from_ordinates(ys, 6.0);
        const Route shifted({{route.waypoints()[0].x - 3.0, route.waypoints()[0].y},
                             route.waypoints()[1],
                             route.waypoints()[2],
                             route.waypoints()[3],
                             route.waypoints()[4],
                             {route.waypoints()[5].x + 0.0, route.waypoints()[5].y}});
        const double h = split_ratio(shifted, obstacle);
        CHECK(h <= 0.0);
        CHECK(h >= -1.0);
        ++checked;
    }
}

TEST_CASE("turn slacks") {
    const double quarter = std::numbers::pi / 4;
    SUBCASE("collinear horizontal") {
        const auto g = turn_slacks(Route({{0, 0}, {1, 0}, {2, 0}}), quarter);
        REQUIRE(g.size() == 1);
        CHECK(g[0] == doctest::Approx(quarter));
        CHECK(g[0] > 0.0);
    }
    SUBCASE("right-angle turn is infeasible at pi/4") {
        const auto g = turn_slacks(Route({{0, 0}, {1, 1}, {2, 0}}), quarter);
        REQUIRE(g.size() == 1);
        CHECK(g[0] == doctest::Approx(-quarter));
    }
    SUBCASE("collinear diagonal keeps full slack") {
        const auto g = turn_slacks(Route({{0, 0}, {1, 1}, {2, 2}}), 0.1);
        REQUIRE(g.size() == 1);
        CHECK(g[0] == doctest::Approx(0.1));
    }
    SUBCASE("single segment has no turns") {
        CHECK(turn_slacks(Route({{0, 0}, {1, 0}}), quarter).empty());
    }
}

TEST_CASE("smooth step values and shape") {
    SUBCASE("x >= 0 is exactly 1") {
        CHECK(smooth_step(0.7, 1.0) == 1.0);
        CHECK(smooth_step(0.0, 5.0) == 1.0);
        CHECK(smooth_step(1e-300, 2.0) == 1.0);
    }
    SUBCASE("hand-derived negative branch") {
        CHECK(smooth_step(-1.0, 1.0) == doctest::Approx(0.632121).epsilon(1e-6));
        CHECK(smooth_step(-1.0, 2.0) == doctest::Approx(0.221199).epsilon(1e-6));
    }
    SUBCASE("continuity at 0") {
        CHECK(std::abs(smooth_step(-1e-4, 1.0) - smooth_step(0.0, 1.0)) <= 1e-6);
    }
    SUBCASE("monotone nondecreasing") {
        double prev = 0.0;
        for (double x = -50.0; x <= 1.0; x += 0.01) {
            const double v = smooth_step(x, 1.5);
            CHECK(v >= prev);
            prev = v;
        }
    }
    SUBCASE("sharpness limit: u_a(x) -> 0 for fixed x < 0") {
        const double v1 = smooth_step(-0.5, 1.0);
        const double v10 = smooth_step(-0.5, 10.0);
        const double v100 = smooth_step(-0.5, 100.0);
        CHECK(v1 > v10);
        CHECK(v10 > v100);
    }
}

TEST_CASE("smooth delta inverse values and shape") {
    SUBCASE("dead zone") {
        CHECK(smooth_delta_inv(0.0, 1.0) == 0.0);
        CHECK(smooth_delta_inv(0.99, 1.0) == 0.0);
        CHECK(smooth_delta_inv(-0.99, 1.0) == 0.0);
    }
    SUBCASE("hand-derived branches, symmetric") {
        const double expected = 1.0 / (std::exp(1.0) - 1.0);
        CHECK(smooth_delta_inv(-2.0, 1.0) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(smooth_delta_inv(2.0, 1.0) == doctest::Approx(expected).epsilon(1e-9));
        CHECK(expected == doctest::Approx(0.581977).epsilon(1e-5));
    }
    SUBCASE("continuity at the dead-zone edges") {
        CHECK(std::abs(smooth_delta_inv(1.0 + 1e-4, 1.0) - smooth_delta_inv(1.0, 1.0)) <= 1e-6);
        CHECK(std::abs(smooth_delta_inv(-1.0 - 1e-4, 1.0) - smooth_delta_inv(-1.0, 1.0)) <= 1e-6);
    }
    SUBCASE("monotone away from the dead zone") {
        double prev = -1.0;
        for (double x = 1.0; x < 30.0; x += 0.05) {
            const double v = smooth_delta_inv(x, 2.0);
            CHECK(v >= prev);
            prev = v;
        }
        prev = -1.0;
        for (double x = -1.0; x > -30.0; x -= 0.05) {
            const double v = smooth_delta_inv(x, 2.0);
            CHECK(v >= prev);
            prev = v;
        }
    }
    SUBCASE("quadratic growth far out") {
        const double x = 1000.0;
        const double a = 2.0;
        const double expected = (a * x - 1.0) * (a * x - 1.0);
        CHECK(smooth_delta_inv(x, a) == doctest::Approx(expected).epsilon(1e-3));
    }
    SUBCASE("increasing in sharpness once outside the dead zone") {
        const double x = -0.8;
        double prev = 0.0;
        for (double a = 2.0; a < 50.0; a *= 1.5) {
            const double v = smooth_delta_inv(x, a);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("penalty assembly") {
    PenaltyParams params;
    params.tie_sharpness_to_lambda = false;

    SUBCASE("feasible report carries zero penalty") {
        ConstraintReport report{{0.0, 0.0}, {0.3, 0.1}, true};
        CHECK(penalty(report, params) == 0.0);
    }
    SUBCASE("split inside the dead zone at b = 1") {
        ConstraintReport report{{-1.0}, {}, false};
        params.delta_sharpness = 1.0;
        CHECK(penalty(report, params) == 0.0);
    }
    SUBCASE("split outside the dead zone at b = 2") {
        ConstraintReport report{{-1.0}, {}, false};
        params.delta_sharpness = 2.0;
        CHECK(penalty(report, params) == doctest::Approx(0.581977).epsilon(1e-5));
    }
    SUBCASE("turn violation uses the stable inequality form") {
        ConstraintReport report{{}, {-1.0}, false};
        params.step_sharpness = 1.0;
        // (1-u)/u with u = 1 - exp(-1) equals exp(-1)/(1-exp(-1)).
        const double expected = std::exp(-1.0) / (1.0 - std::exp(-1.0));
        CHECK(penalty(report, params) == doctest::Approx(expected).epsilon(1e-9));
    }
    SUBCASE("barely-violated constraints vanish smoothly, grossly violated grow") {
        ConstraintReport tiny{{}, {-1e-9}, false};
        CHECK(penalty(tiny, params) == doctest::Approx(0.0));
        ConstraintReport gross{{}, {-100.0}, false};
        CHECK(penalty(gross, params) > 1000.0);
        CHECK(std::isfinite(penalty(gross, params)));
    }
    SUBCASE("terms add across constraints") {
        ConstraintReport one{{-1.0}, {}, false};
        ConstraintReport two{{-1.0, -1.0}, {}, false};
        params.delta_sharpness = 2.0;
        CHECK(penalty(two, params) == doctest::Approx(2.0 * penalty(one, params)));
    }
}

TEST_CASE("generalized cost") {
    SUBCASE("real axis passes through") {
        const auto gc = generalized_cost(7.0, 0.0, 123.0);
        CHECK(gc.value == 7.0);
        CHECK(gc.multiplier == 1.0);
    }
    SUBCASE("boundary of the feasible zone: 3-4-5") {
        const auto gc = generalized_cost(3.0, 4.0, 0.25);
        CHECK(gc.multiplier == 1.0);
        CHECK(gc.value == doctest::Approx(5.0));
    }
    SUBCASE("outside the zone the multiplier bites") {
        const auto gc = generalized_cost(0.0, 2.0, 1.0);
        CHECK(gc.multiplier == doctest::Approx(1.0 + 1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-9));
        CHECK(gc.value == doctest::Approx(2.0 * gc.multiplier));
        CHECK(gc.value == doctest::Approx(3.163954).epsilon(1e-5));
    }
    SUBCASE("E == S exactly whenever P == 0") {
        for (const double lambda : {0.01, 1.0, 1e6}) {
            CHECK(generalized_cost(3.14159, 0.0, lambda).value == 3.14159);
        }
    }
    SUBCASE("nondecreasing in P and lambda beyond the zone") {
        double prev = 0.0;
        for (double p = 0.0; p < 10.0; p += 0.1) {
            const double v = generalized_cost(5.0, p, 2.0).value;
            CHECK(v >= prev);
            prev = v;
        }
        prev = 0.0;
        for (double lambda = 0.5; lambda < 100.0; lambda *= 1.3) {
            const double v = generalized_cost(5.0, 3.0, lambda).value;
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("annealing schedule") {
    CHECK(anneal(1.0, 0.10) == doctest::Approx(1.1));
    double lambda = 1.0;
    for (int i = 0; i < 10; ++i) lambda = anneal(lambda, 0.10);
    CHECK(lambda == doctest::Approx(std::pow(1.1, 10)).epsilon(1e-12));
    CHECK(lambda == doctest::Approx(2.59374).epsilon(1e-5));
    CHECK(anneal(3.5, 0.0) == 3.5);
}

TEST_CASE("params tie sharpness to lambda") {
    PenaltyParams params;
    params.tie_sharpness_to_lambda = true;
    const auto tied = params.at_lambda(7.5);
    CHECK(tied.lambda == 7.5);
    CHECK(tied.step_sharpness == 7.5);
    CHECK(tied.delta_sharpness == 7.5);

    params.tie_sharpness_to_lambda = false;
    params.step_sharpness = 2.0;
    params.delta_sharpness = 3.0;
    const auto untied = params.at_lambda(7.5);
    CHECK(untied.lambda == 7.5);
    CHECK(untied.step_sharpness == 2.0);
    CHECK(untied.delta_sharpness == 3.0);
}

TEST_CASE("constraint report over obstacles and turns") {
    // Obstacle away from the pinned endpoints so a level detour clears it.
    const std::vector<Obstacle> obstacles{Obstacle({{1.5, 0}, {2.5, 0}, {2.5, 1}, {1.5, 1}})};
    const Route clear = Route::from_ordinates(std::vector<double>{2.0, 2.0, 2.0}, 4.0);
    const auto ok = evaluate_constraints(clear, obstacles, 1.2); // first bend is ~1.107 rad
    CHECK(ok.feasible);
    CHECK(ok.split_ratios[0] == 0.0);

    const Route crossing = Route::from_ordinates(std::vector<double>{0.5, 0.5, 0.5}, 4.0);
    const auto bad = evaluate_constraints(crossing, obstacles, 1.2);
    CHECK_FALSE(bad.feasible);
    CHECK(bad.split_ratios[0] < 0.0);

    const Route sharp = Route::from_ordinates(std::vector<double>{2.0, -2.0, 2.0}, 4.0);
    const auto turny = evaluate_constraints(sharp, obstacles, 0.5);
    CHECK_FALSE(turny.feasible);
    bool violated = false;
    for (const double g : turny.turn_slacks) violated = violated || g < 0.0;
    CHECK(violated);
}
