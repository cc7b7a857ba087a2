#include "searoute/geo_env.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace searoute {

namespace {

constexpr double kEarthRadiusM = 6371000.0;
constexpr double kDegToRad = std::numbers::pi / 180.0;

Vec2 rotate(Vec2 p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {p.x * c - p.y * s, p.x * s + p.y * c};
}

} // namespace

PlanningFrame PlanningFrame::from_geodetic(GeoPoint departure, GeoPoint arrival,
                                           double metres_per_unit) {
    if (metres_per_unit <= 0.0) throw InvalidInput("planning frame scale must be positive");
    PlanningFrame f;
    f.geodetic_ = true;
    f.origin_ = departure;
    f.scale_ = metres_per_unit;
    f.cos_lat0_ = std::cos(departure.lat_deg * kDegToRad);

    const Vec2 arr{kEarthRadiusM * f.cos_lat0_ * (arrival.lon_deg - departure.lon_deg) * kDegToRad
                       / metres_per_unit,
                   kEarthRadiusM * (arrival.lat_deg - departure.lat_deg) * kDegToRad
                       / metres_per_unit};
    const double d = norm(arr);
    if (d == 0.0) throw InvalidInput("departure and arrival coincide");
    f.rotation_ = -std::atan2(arr.y, arr.x);
    f.span_ = d;
    return f;
}

PlanningFrame PlanningFrame::from_planar(Vec2 departure, Vec2 arrival) {
    PlanningFrame f;
    f.geodetic_ = false;
    f.planar_origin_ = departure;
    f.scale_ = 1.0;
    const Vec2 arr = arrival - departure;
    const double d = norm(arr);
    if (d == 0.0) throw InvalidInput("departure and arrival coincide");
    f.rotation_ = -std::atan2(arr.y, arr.x);
    f.span_ = d;
    return f;
}

Vec2 PlanningFrame::to_frame(GeoPoint p) const {
    const Vec2 projected{kEarthRadiusM * cos_lat0_ * (p.lon_deg - origin_.lon_deg) * kDegToRad
                             / scale_,
                         kEarthRadiusM * (p.lat_deg - origin_.lat_deg) * kDegToRad / scale_};
    return rotate(projected, rotation_);
}

GeoPoint PlanningFrame::to_geodetic(Vec2 p) const {
    const Vec2 projected = rotate(p, -rotation_);
    GeoPoint g;
    g.lat_deg = origin_.lat_deg + projected.y * scale_ / kEarthRadiusM / kDegToRad;
    g.lon_deg = origin_.lon_deg + projected.x * scale_ / (kEarthRadiusM * cos_lat0_) / kDegToRad;
    return g;
}

Vec2 PlanningFrame::planar_to_frame(Vec2 p) const {
    return rotate(p - planar_origin_, rotation_);
}

Vec2 PlanningFrame::frame_to_planar(Vec2 p) const {
    return rotate(p, -rotation_) + planar_origin_;
}

Route::Route(std::vector<Vec2> waypoints) : waypoints_(std::move(waypoints)) {
    if (waypoints_.size() < 2) throw InvalidInput("route needs at least two waypoints");
    for (std::size_t i = 0; i < waypoints_.size(); ++i) {
        const Vec2 p = waypoints_[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InvalidInput("route waypoint is not finite");
        }
        if (i > 0 && !(waypoints_[i - 1].x < p.x)) {
            throw InvalidInput("route x-coordinates must be strictly increasing");
        }
    }
}

Route Route::from_ordinates(std::span<const double> ordinates, double span) {
    if (span <= 0.0) throw InvalidInput("route span must be positive");
    const std::size_t m = ordinates.size();
    std::vector<Vec2> pts;
    pts.reserve(m + 2);
    pts.push_back({0.0, 0.0});
    const double step = span / static_cast<double>(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        const double y = ordinates[i];
        if (std::abs(y) > span * (1.0 + 1e-12)) {
            throw InvalidInput("route ordinate exceeds the +-d bound");
        }
        pts.push_back({step * static_cast<double>(i + 1), y});
    }
    pts.push_back({span, 0.0});
    return Route(std::move(pts));
}

Vec2 Route::segment_tangent(std::size_t k) const {
    return normalized(waypoints_[k + 1] - waypoints_[k]);
}

double Route::segment_length(std::size_t k) const {
    return norm(waypoints_[k + 1] - waypoints_[k]);
}

double Route::length() const {
    double total = 0.0;
    for (std::size_t k = 0; k < segment_count(); ++k) total += segment_length(k);
    return total;
}

EnvironmentField::EnvironmentField(Vec2 origin, double cell_size, int nx, int ny,
                                   std::vector<Vec2> wind, std::vector<Vec2> wave)
    : origin_(origin), cell_(cell_size), nx_(nx), ny_(ny), wind_(std::move(wind)),
      wave_(std::move(wave)) {
    if (nx_ < 2 || ny_ < 2) throw InvalidInput("environment grid needs at least 2x2 nodes");
    if (!(cell_ > 0.0)) throw InvalidInput("environment cell size must be positive");
    const std::size_t expected = static_cast<std::size_t>(nx_) * ny_;
    if (wind_.size() != expected || wave_.size() != expected) {
        throw InvalidInput("environment node count does not match nx*ny");
    }
    for (std::size_t i = 0; i < expected; ++i) {
        if (!std::isfinite(wind_[i].x) || !std::isfinite(wind_[i].y) ||
            !std::isfinite(wave_[i].x) || !std::isfinite(wave_[i].y)) {
            throw InvalidInput("environment field values must be finite");
        }
    }
}

EnvironmentField EnvironmentField::uniform(Vec2 lo, Vec2 hi, Vec2 wind, Vec2 wave) {
    if (!(hi.x > lo.x) || !(hi.y > lo.y)) throw InvalidInput("uniform field box is degenerate");
    const double cell = std::max(hi.x - lo.x, hi.y - lo.y);
    const int nx = static_cast<int>(std::ceil((hi.x - lo.x) / cell)) + 1;
    const int ny = static_cast<int>(std::ceil((hi.y - lo.y) / cell)) + 1;
    const std::size_t count = static_cast<std::size_t>(nx) * ny;
    return EnvironmentField(lo, cell, nx, ny, std::vector<Vec2>(count, wind),
                            std::vector<Vec2>(count, wave));
}

Aabb EnvironmentField::bounds() const {
    return {origin_, {origin_.x + cell_ * (nx_ - 1), origin_.y + cell_ * (ny_ - 1)}};
}

FieldSample EnvironmentField::sample(Vec2 p) const {
    const double fx = (p.x - origin_.x) / cell_;
    const double fy = (p.y - origin_.y) / cell_;
    if (fx < 0.0 || fy < 0.0 || fx > nx_ - 1 || fy > ny_ - 1) {
        throw OutOfDomain("sample point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                          ") is outside the environment grid");
    }
    int ix = static_cast<int>(fx);
    int iy = static_cast<int>(fy);
    ix = std::min(ix, nx_ - 2);
    iy = std::min(iy, ny_ - 2);
    const double tx = fx - ix;
    const double ty = fy - iy;

    auto lerp2 = [&](const std::vector<Vec2>& nodes) {
        const Vec2 v00 = nodes[index(ix, iy)];
        const Vec2 v10 = nodes[index(ix + 1, iy)];
        const Vec2 v01 = nodes[index(ix, iy + 1)];
        const Vec2 v11 = nodes[index(ix + 1, iy + 1)];
        return v00 * ((1 - tx) * (1 - ty)) + v10 * (tx * (1 - ty)) + v01 * ((1 - tx) * ty) +
               v11 * (tx * ty);
    };
    return {lerp2(wind_), lerp2(wave_)};
}

void ShipModel::validate() const {
    if (!(speed > 0.0) || !std::isfinite(speed)) throw InvalidInput("ship speed must be positive");
    if (!wind_response.finite() || !wave_response.finite()) {
        throw InvalidInput("ship response tensors must be finite");
    }
    if (!(max_turn > 0.0) || !(max_turn < std::numbers::pi)) {
        throw InvalidInput("max turn must lie in (0, pi)");
    }
}

double voyage_time(const Route& route, const ShipModel& ship) {
    ship.validate();
    return route.length() / ship.speed;
}

double comfort_cost(const Route& route, const EnvironmentField& env, const ShipModel& ship,
                    int subsamples) {
    if (subsamples < 1) throw InvalidInput("comfort quadrature needs at least one subsample");
    double total = 0.0;
    for (std::size_t k = 0; k < route.segment_count(); ++k) {
        const Vec2 a = route.waypoints()[k];
        const Vec2 b = route.waypoints()[k + 1];
        const Vec2 t = normalized(b - a);
        const double len = norm(b - a);
        const double ds = len / subsamples;
        double seg = 0.0;
        for (int j = 0; j < subsamples; ++j) {
            const Vec2 p = a + (b - a) * ((j + 0.5) / subsamples);
            const FieldSample f = env.sample(p);
            seg += dot(left_mul(f.wind, ship.wind_response) + left_mul(f.wave, ship.wave_response),
                       t);
        }
        total += seg * ds;
    }
    return total;
}

CostBreakdown route_cost(const Route& route, const EnvironmentField& env, const ShipModel& ship,
                         double alpha, int subsamples) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("alpha must lie in [0, 1]");
    ship.validate();
    if (subsamples < 1) throw InvalidInput("comfort quadrature needs at least one subsample");

    CostBreakdown out;
    out.segment_time.reserve(route.segment_count());
    out.segment_comfort.reserve(route.segment_count());
    for (std::size_t k = 0; k < route.segment_count(); ++k) {
        const Vec2 a = route.waypoints()[k];
        const Vec2 b = route.waypoints()[k + 1];
        const double len = norm(b - a);
        const Vec2 t = normalized(b - a);
        out.segment_time.push_back(len / ship.speed);

        double seg = 0.0;
        for (int j = 0; j < subsamples; ++j) {
            const Vec2 p = a + (b - a) * ((j + 0.5) / subsamples);
            const FieldSample f = env.sample(p);
            seg += dot(left_mul(f.wind, ship.wind_response) + left_mul(f.wave, ship.wave_response),
                       t);
        }
        out.segment_comfort.push_back(seg * len / subsamples);

        out.time += out.segment_time.back();
        out.comfort += out.segment_comfort.back();
    }
    out.total = alpha * out.time + (1.0 - alpha) * out.comfort;
    return out;
}

} // namespace searoute
