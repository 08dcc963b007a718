// Exact 2D predicates used by the validity checker.

#pragma once

#include <span>
#include <vector>

namespace smlr::geometry {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);
Vec2 rotate(Vec2 p, double angle);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// True when vertices are counter-clockwise, strictly convex, and at least three.
bool is_convex_ccw(std::span<const Vec2> poly);

/// Signed distance from p to a convex CCW polygon (negative inside).
double signed_distance_polygon(Vec2 p, std::span<const Vec2> poly);

/// Separating-axis test for two convex point sets (polygons, segments or
/// single points). Touching counts as overlap.
bool convex_overlap(std::span<const Vec2> a, std::span<const Vec2> b);

/// Signed distance between two convex point sets: the gap when disjoint,
/// minus the penetration depth (smallest SAT overlap) when they intersect.
double convex_signed_distance(std::span<const Vec2> a, std::span<const Vec2> b);

/// Axis-aligned box as a CCW polygon.
std::vector<Vec2> box_polygon(Vec2 lo, Vec2 hi);

}  // namespace smlr::geometry
