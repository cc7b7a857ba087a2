#include "searoute/geometry.hpp"

#include <algorithm>
#include <limits>

namespace searoute {

namespace {

constexpr double kRelEps = 1e-12;

bool on_segment(Vec2 p, Vec2 a, Vec2 b, double tol) {
    const Vec2 ab = b - a;
    const Vec2 ap = p - a;
    if (std::abs(cross(ab, ap)) > tol * (norm(ab) + norm(ap)) + tol) return false;
    const double t = dot(ap, ab);
    return t >= -tol && t <= dot(ab, ab) + tol;
}

} // namespace

double polygon_area(std::span<const Vec2> poly) {
    double twice = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        twice += cross(a, b);
    }
    return 0.5 * twice;
}

Aabb polygon_bounds(std::span<const Vec2> poly) {
    Aabb box{{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()},
             {-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()}};
    for (const Vec2 p : poly) {
        box.lo.x = std::min(box.lo.x, p.x);
        box.lo.y = std::min(box.lo.y, p.y);
        box.hi.x = std::max(box.hi.x, p.x);
        box.hi.y = std::max(box.hi.y, p.y);
    }
    return box;
}

bool polygon_is_simple(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;

    const Aabb box = polygon_bounds(poly);
    const double scale = std::max(norm(box.hi - box.lo), 1.0);
    const double tol = kRelEps * scale;

    for (std::size_t i = 0; i < n; ++i) {
        if (norm(poly[i] - poly[(i + 1) % n]) <= tol) return false; // repeated vertex
    }

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            const Vec2 c = poly[j];
            const Vec2 d = poly[(j + 1) % n];
            const Vec2 r = b - a;
            const Vec2 s = d - c;
            const double rxs = cross(r, s);
            const double denom_tol = kRelEps * norm(r) * norm(s) + kRelEps;
            if (std::abs(rxs) <= denom_tol) {
                // Parallel. Overlapping collinear edges make the polygon degenerate.
                if (std::abs(cross(c - a, r)) <= tol * (norm(c - a) + norm(r)) + tol) {
                    const double rr = dot(r, r);
                    double t0 = dot(c - a, r) / rr;
                    double t1 = dot(d - a, r) / rr;
                    if (t0 > t1) std::swap(t0, t1);
                    const double pad = adjacent ? 1e-9 : -1e-9;
                    if (std::max(0.0, t0) + pad < std::min(1.0, t1) - pad) return false;
                }
                continue;
            }
            const double t = cross(c - a, s) / rxs;
            const double u = cross(c - a, r) / rxs;
            if (adjacent) {
                // Sharing one endpoint is fine; anything more is a self-touch.
                const double m = 1e-9;
                if (t > m && t < 1.0 - m && u > m && u < 1.0 - m) return false;
            } else {
                if (t >= -1e-12 && t <= 1.0 + 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12) return false;
            }
        }
    }
    return true;
}

std::vector<Vec2> clip_left_of(std::span<const Vec2> poly, Vec2 a, Vec2 b) {
    std::vector<Vec2> out;
    const std::size_t n = poly.size();
    if (n == 0) return out;
    out.reserve(n + 4);

    const Vec2 dir = b - a;
    auto side = [&](Vec2 p) { return cross(dir, p - a); };

    Vec2 prev = poly[n - 1];
    double prev_side = side(prev);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 cur = poly[i];
        const double cur_side = side(cur);
        const bool prev_in = prev_side >= 0.0;
        const bool cur_in = cur_side >= 0.0;
        if (cur_in != prev_in) {
            const double t = prev_side / (prev_side - cur_side);
            out.push_back(prev + (cur - prev) * t);
        }
        if (cur_in) out.push_back(cur);
        prev = cur;
        prev_side = cur_side;
    }
    return out;
}

PointSide point_in_polygon(std::span<const Vec2> poly, Vec2 p) {
    const std::size_t n = poly.size();
    const Aabb box = polygon_bounds(poly);
    const double scale = std::max({std::abs(box.lo.x), std::abs(box.hi.x), std::abs(box.lo.y),
                                   std::abs(box.hi.y), 1.0});
    const double tol = 1e-11 * scale;

    for (std::size_t i = 0; i < n; ++i) {
        if (on_segment(p, poly[i], poly[(i + 1) % n], tol)) return PointSide::Boundary;
    }

    bool inside = false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xi = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xi) inside = !inside;
        }
    }
    return inside ? PointSide::Inside : PointSide::Outside;
}

bool segment_crosses_interior(std::span<const Vec2> poly, Vec2 p, Vec2 q) {
    const std::size_t n = poly.size();
    const Vec2 r = q - p;
    const double rlen = norm(r);
    if (rlen == 0.0) return point_in_polygon(poly, p) == PointSide::Inside;

    // Parameters along p->q where the segment meets the polygon boundary.
    std::vector<double> ts{0.0, 1.0};
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        const Vec2 s = b - a;
        const double rxs = cross(r, s);
        const Vec2 ap = a - p;
        const double denom_tol = kRelEps * rlen * norm(s) + kRelEps;
        if (std::abs(rxs) <= denom_tol) {
            if (std::abs(cross(ap, r)) <= kRelEps * (norm(ap) + rlen) * rlen + kRelEps) {
                const double rr = dot(r, r);
                double t0 = dot(ap, r) / rr;
                double t1 = dot(b - p, r) / rr;
                if (t0 > t1) std::swap(t0, t1);
                t0 = std::clamp(t0, 0.0, 1.0);
                t1 = std::clamp(t1, 0.0, 1.0);
                ts.push_back(t0);
                ts.push_back(t1);
            }
            continue;
        }
        const double t = cross(ap, s) / rxs;
        const double u = cross(ap, r) / rxs;
        if (t >= -1e-12 && t <= 1.0 + 1e-12 && u >= -1e-12 && u <= 1.0 + 1e-12) {
            ts.push_back(std::clamp(t, 0.0, 1.0));
        }
    }
    std::sort(ts.begin(), ts.end());

    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        const double gap = ts[i + 1] - ts[i];
        if (gap * rlen <= 1e-12 * std::max(rlen, 1.0)) continue;
        const Vec2 mid = p + r * (0.5 * (ts[i] + ts[i + 1]));
        if (point_in_polygon(poly, mid) == PointSide::Inside) return true;
    }
    return false;
}

} // namespace searoute
