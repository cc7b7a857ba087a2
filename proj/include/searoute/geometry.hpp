#ifndef SEAROUTE_GEOMETRY_HPP
#define SEAROUTE_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace searoute {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline Vec2 normalized(Vec2 v) { return v / norm(v); }
inline Vec2 perp_ccw(Vec2 v) { return {-v.y, v.x}; }

// 2x2 tensor applied from the left: row_vector(v) * M.
struct Mat2 {
    double xx = 0.0, xy = 0.0;
    double yx = 0.0, yy = 0.0;

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    bool finite() const {
        return std::isfinite(xx) && std::isfinite(xy) && std::isfinite(yx) && std::isfinite(yy);
    }
};

inline Vec2 left_mul(Vec2 v, const Mat2& m) {
    return {v.x * m.xx + v.y * m.yx, v.x * m.xy + v.y * m.yy};
}

struct Aabb {
    Vec2 lo;
    Vec2 hi;

    bool contains(Vec2 p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
    bool overlaps_x(double xmin, double xmax) const { return hi.x >= xmin && lo.x <= xmax; }
    bool overlaps(const Aabb& o) const {
        return hi.x >= o.lo.x && lo.x <= o.hi.x && hi.y >= o.lo.y && lo.y <= o.hi.y;
    }
};

// Signed area, positive for counter-clockwise orientation.
double polygon_area(std::span<const Vec2> poly);

Aabb polygon_bounds(std::span<const Vec2> poly);

// Rejects repeated vertices and any intersection between non-adjacent edges.
bool polygon_is_simple(std::span<const Vec2> poly);

// Clips a polygon against the half-plane left of the directed line a->b,
// i.e. keeps {p : cross(b - a, p - a) >= 0}. For non-convex subjects the
// output boundary may contain degenerate connector edges, but its shoelace
// area is exactly the area of the intersection, which is all the callers use.
std::vector<Vec2> clip_left_of(std::span<const Vec2> poly, Vec2 a, Vec2 b);

enum class PointSide { Outside, Boundary, Inside };

PointSide point_in_polygon(std::span<const Vec2> poly, Vec2 p);

// True if the segment p-q passes through the polygon interior. Touching the
// boundary or running along an edge does not count; the test subdivides the
// segment at every boundary contact and probes the gaps in between.
bool segment_crosses_interior(std::span<const Vec2> poly, Vec2 p, Vec2 q);

} // namespace searoute

#endif
