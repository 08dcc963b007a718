// Per-level constraint functions: workspace obstacles, robot geometry,
// state validity and discretized motion validity.

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "smlr/geometry.hpp"
#include "smlr/state_space.hpp"

namespace smlr {

using geometry::Vec2;

struct DiscShape {
    Vec2 center;
    double radius = 0.0;
};

struct BoxShape {
    Vec2 lo;
    Vec2 hi;
};

struct PolygonShape {
    std::vector<Vec2> vertices;  // convex, counter-clockwise
};

/// A static workspace obstacle. Construction validates the shape.
class Obstacle {
public:
    static Obstacle disc(Vec2 center, double radius);
    static Obstacle box(Vec2 lo, Vec2 hi);
    static Obstacle polygon(std::vector<Vec2> vertices);

    [[nodiscard]] const std::variant<DiscShape, BoxShape, PolygonShape>& shape() const noexcept {
        return shape_;
    }

    /// Signed distance from a workspace point (negative inside).
    [[nodiscard]] double signed_distance(Vec2 p) const;
    /// Signed distance to a convex point set (polygon, segment or point).
    [[nodiscard]] double signed_distance(std::span<const Vec2> convex) const;
    [[nodiscard]] bool overlaps(std::span<const Vec2> convex) const;

    [[nodiscard]] Vec2 bound_center() const noexcept { return bound_center_; }
    [[nodiscard]] double bound_radius() const noexcept { return bound_radius_; }

private:
    explicit Obstacle(std::variant<DiscShape, BoxShape, PolygonShape> shape);

    std::variant<DiscShape, BoxShape, PolygonShape> shape_;
    std::vector<Vec2> hull_;  // polygon form for boxes and polygons
    Vec2 bound_center_;
    double bound_radius_ = 0.0;
};

/// Rectangular workspace plus the obstacles shared by every level.
struct Workspace {
    Vec2 lo{0.0, 0.0};
    Vec2 hi{1.0, 1.0};
    std::vector<Obstacle> obstacles;
};

struct PointRobot {
    std::size_t x_index = 0;
    std::size_t y_index = 1;
};

struct DiscRobot {
    double radius = 0.0;
    std::size_t x_index = 0;
    std::size_t y_index = 1;
};

/// Rigid body made of convex parts in the body frame, posed by (x, y, theta).
struct RigidPolygonRobot {
    std::vector<std::vector<Vec2>> parts;
    std::size_t x_index = 0;
    std::size_t y_index = 1;
    std::size_t theta_index = 2;
};

/// Serial chain of segments. Joint angles are relative; the base is either
/// read from the state or fixed in the workspace.
struct PlanarChainRobot {
    std::optional<std::array<std::size_t, 2>> base_indices;
    Vec2 fixed_base;
    std::vector<double> link_lengths;
    std::vector<std::size_t> joint_indices;
};

class RobotModel {
public:
    using Variant = std::variant<PointRobot, DiscRobot, RigidPolygonRobot, PlanarChainRobot>;

    explicit RobotModel(Variant model);

    [[nodiscard]] const Variant& model() const noexcept { return model_; }
    /// State coordinates read by this robot, in a fixed order.
    [[nodiscard]] std::vector<std::size_t> used_coordinates() const;
    /// Throws std::invalid_argument unless the robot reads exactly the
    /// coordinates of a space of the given dimension.
    void check_covers(std::size_t dimension) const;

private:
    Variant model_;
};

/// The constraint function of one level: true iff phi(x) = 0.
class LevelValidity {
public:
    LevelValidity(StateSpace space, RobotModel robot, std::shared_ptr<const Workspace> workspace,
                  double check_resolution = 0.01);

    [[nodiscard]] bool is_valid(const State& x) const;
    /// Checks is_valid along interpolate(a, b, .) at dyadic parameters spaced
    /// at most check_resolution * max_extent apart, endpoints included.
    [[nodiscard]] bool motion_valid(const State& a, const State& b) const;
    /// Signed distance from the posed robot to the nearest obstacle or
    /// workspace wall; negative when penetrating.
    [[nodiscard]] double clearance(const State& x) const;

    [[nodiscard]] LevelValidity with_resolution(double check_resolution) const;

    [[nodiscard]] const StateSpace& space() const noexcept { return space_; }
    [[nodiscard]] const RobotModel& robot() const noexcept { return robot_; }
    [[nodiscard]] const Workspace& workspace() const noexcept { return *workspace_; }
    [[nodiscard]] std::shared_ptr<const Workspace> workspace_ptr() const noexcept { return workspace_; }
    [[nodiscard]] double check_resolution() const noexcept { return check_resolution_; }
    /// Number of interpolation intervals motion_valid uses for a segment of
    /// the given length (a power of two).
    [[nodiscard]] std::size_t subdivisions(double length) const noexcept;

    /// Posed robot geometry: convex pieces (points, segments, polygons) and
    /// discs as (center, radius).
    struct Posed {
        std::vector<std::vector<Vec2>> convex;
        std::vector<DiscShape> discs;
    };
    [[nodiscard]] Posed pose(const State& x) const;

private:
    StateSpace space_;
    RobotModel robot_;
    std::shared_ptr<const Workspace> workspace_;
    double check_resolution_;
    double step_;
};

}  // namespace smlr
