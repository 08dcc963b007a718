#include "smlr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smlr::geometry {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

Vec2 rotate(Vec2 p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len_sq = dot(ab, ab);
    double t = 0.0;
    if (len_sq > 0.0) t = std::clamp(dot(p - a, ab) / len_sq, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

bool is_convex_ccw(std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e0 = poly[(i + 1) % n] - poly[i];
        const Vec2 e1 = poly[(i + 2) % n] - poly[(i + 1) % n];
        if (!(cross(e0, e1) > 0.0)) return false;
    }
    return true;
}

double signed_distance_polygon(Vec2 p, std::span<const Vec2> poly) {
    const std::size_t n = poly.size();
    bool inside = true;
    double boundary = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        if (cross(b - a, p - a) < 0.0) inside = false;
        boundary = std::min(boundary, point_segment_distance(p, a, b));
    }
    return inside ? -boundary : boundary;
}

namespace {

void collect_axes(std::span<const Vec2> pts, std::vector<Vec2>& axes) {
    const std::size_t n = pts.size();
    auto push = [&axes](Vec2 v) {
        const double len = norm(v);
        if (len > 0.0) axes.push_back((1.0 / len) * v);
    };
    if (n == 2) {
        const Vec2 d = pts[1] - pts[0];
        push({-d.y, d.x});
        push(d);
        return;
    }
    if (n < 3) return;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 d = pts[(i + 1) % n] - pts[i];
        push({-d.y, d.x});
    }
}

struct Projection {
    double lo;
    double hi;
};

Projection project(std::span<const Vec2> pts, Vec2 axis) {
    Projection p{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (Vec2 v : pts) {
        const double d = dot(v, axis);
        p.lo = std::min(p.lo, d);
        p.hi = std::max(p.hi, d);
    }
    return p;
}

// Smallest overlap over all separating-axis candidates; negative means separated.
double min_overlap(std::span<const Vec2> a, std::span<const Vec2> b) {
    std::vector<Vec2> axes;
    collect_axes(a, axes);
    collect_axes(b, axes);
    if (axes.empty()) {
        // Two single points.
        return a[0] == b[0] ? 0.0 : -norm(a[0] - b[0]);
    }
    double best = std::numeric_limits<double>::infinity();
    for (Vec2 axis : axes) {
        const Projection pa = project(a, axis);
        const Projection pb = project(b, axis);
        const double overlap = std::min(pa.hi, pb.hi) - std::max(pa.lo, pb.lo);
        best = std::min(best, overlap);
    }
    return best;
}

double boundary_gap(std::span<const Vec2> a, std::span<const Vec2> b) {
    auto one_way = [](std::span<const Vec2> pts, std::span<const Vec2> poly) {
        double best = std::numeric_limits<double>::infinity();
        const std::size_t n = poly.size();
        for (Vec2 p : pts) {
            if (n == 1) {
                best = std::min(best, norm(p - poly[0]));
                continue;
            }
            const std::size_t edges = n == 2 ? 1 : n;
            for (std::size_t i = 0; i < edges; ++i) {
                best = std::min(best, point_segment_distance(p, poly[i], poly[(i + 1) % n]));
            }
        }
        return best;
    };
    return std::min(one_way(a, b), one_way(b, a));
}

}  // namespace

bool convex_overlap(std::span<const Vec2> a, std::span<const Vec2> b) {
    return min_overlap(a, b) >= 0.0;
}

double convex_signed_distance(std::span<const Vec2> a, std::span<const Vec2> b) {
    const double overlap = min_overlap(a, b);
    if (overlap >= 0.0) return -overlap;
    return boundary_gap(a, b);
}

std::vector<Vec2> box_polygon(Vec2 lo, Vec2 hi) {
    return {{lo.x, lo.y}, {hi.x, lo.y}, {hi.x, hi.y}, {lo.x, hi.y}};
}

}  // namespace smlr::geometry
