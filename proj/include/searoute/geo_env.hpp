#ifndef SEAROUTE_GEO_ENV_HPP
#define SEAROUTE_GEO_ENV_HPP

#include "searoute/errors.hpp"
#include "searoute/geometry.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace searoute {

struct GeoPoint {
    double lat_deg = 0.0;
    double lon_deg = 0.0;
};

// Rotated local frame with the departure at the origin and the arrival at
// (d, 0) on the positive x-axis. Geodetic inputs go through an
// equirectangular projection at the departure latitude before the rotation;
// planar inputs skip the projection and keep their own units.
class PlanningFrame {
public:
    static PlanningFrame from_geodetic(GeoPoint departure, GeoPoint arrival,
                                       double metres_per_unit = 1000.0);
    static PlanningFrame from_planar(Vec2 departure, Vec2 arrival);

    Vec2 to_frame(GeoPoint p) const;
    GeoPoint to_geodetic(Vec2 p) const;
    Vec2 planar_to_frame(Vec2 p) const;
    Vec2 frame_to_planar(Vec2 p) const;

    double span() const { return span_; }        // d
    double rotation() const { return rotation_; }
    double scale() const { return scale_; }      // metres per frame unit
    bool geodetic() const { return geodetic_; }
    GeoPoint origin() const { return origin_; }

private:
    PlanningFrame() = default;

    GeoPoint origin_{};
    Vec2 planar_origin_{};
    double rotation_ = 0.0;
    double scale_ = 1.0;
    double span_ = 0.0;
    double cos_lat0_ = 1.0;
    bool geodetic_ = false;
};

// Piecewise-linear polyline with strictly increasing x, which makes it the
// graph of a function y(x). Search routes additionally pin the endpoints to
// (0,0) and (d,0) and bound |y| by d; from_ordinates enforces that.
class Route {
public:
    explicit Route(std::vector<Vec2> waypoints);

    static Route from_ordinates(std::span<const double> ordinates, double span);

    const std::vector<Vec2>& waypoints() const { return waypoints_; }
    std::size_t segment_count() const { return waypoints_.size() - 1; }

    Vec2 segment_tangent(std::size_t k) const; // unit vector, k in [0, segment_count)
    double segment_length(std::size_t k) const;
    double length() const;

private:
    std::vector<Vec2> waypoints_;
};

struct FieldSample {
    Vec2 wind;
    Vec2 wave;
};

// Two regular-grid vector fields (wind, wave) over the planning rectangle,
// sampled with bilinear interpolation. Queries outside the grid are a hard
// error: forecast data does not extrapolate.
class EnvironmentField {
public:
    EnvironmentField(Vec2 origin, double cell_size, int nx, int ny,
                     std::vector<Vec2> wind, std::vector<Vec2> wave);

    static EnvironmentField uniform(Vec2 lo, Vec2 hi, Vec2 wind, Vec2 wave);

    FieldSample sample(Vec2 p) const;

    Vec2 origin() const { return origin_; }
    double cell_size() const { return cell_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    Aabb bounds() const;
    const std::vector<Vec2>& wind_nodes() const { return wind_; }
    const std::vector<Vec2>& wave_nodes() const { return wave_; }

private:
    std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(iy) * nx_ + ix; }

    Vec2 origin_;
    double cell_;
    int nx_;
    int ny_;
    std::vector<Vec2> wind_; // row-major, y-major rows
    std::vector<Vec2> wave_;
};

struct ShipModel {
    double speed = 1.0;       // u, frame units per time unit
    Mat2 wind_response{};     // response tensor to the wind vector
    Mat2 wave_response{};     // response tensor to the wave vector
    double max_turn = 1.0;    // radians, in (0, pi)

    void validate() const;

    // Hook for a sea-state speed response (the F term in |r'| = u + F).
    // Fixed at zero; voyage_time assumes it stays that way.
    double speed_response(Vec2 /*wind*/, Vec2 /*wave*/, Vec2 /*tangent*/) const { return 0.0; }
};

struct CostBreakdown {
    double time = 0.0;    // T
    double comfort = 0.0; // C
    double total = 0.0;   // S = alpha*T + (1-alpha)*C
    std::vector<double> segment_time;
    std::vector<double> segment_comfort;
};

// T = polyline length / cruise speed (zero speed response).
double voyage_time(const Route& route, const ShipModel& ship);

// Line integral of the ship response along the route, composite midpoint rule
// with `subsamples` points per segment.
double comfort_cost(const Route& route, const EnvironmentField& env, const ShipModel& ship,
                    int subsamples = 8);

CostBreakdown route_cost(const Route& route, const EnvironmentField& env, const ShipModel& ship,
                         double alpha, int subsamples = 8);

} // namespace searoute

#endif
