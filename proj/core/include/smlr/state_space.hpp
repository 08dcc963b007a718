// Composable state spaces: real-vector boxes, circles and weighted products.

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace smlr {

/// Random stream shared by every sampling routine. Callers seed it explicitly.
using Rng = std::mt19937_64;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

/// Wraps an angle into [0, 2pi).
double normalize_angle(double angle);

/// Signed shortest-arc difference `to - from`, in [-pi, pi).
double angle_difference(double from, double to);

/// A point of some StateSpace, stored as a flat coordinate vector.
class State {
public:
    State() = default;
    explicit State(std::vector<double> coords) : coords_(std::move(coords)) {}
    State(std::initializer_list<double> coords) : coords_(coords) {}

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }
    double& operator[](std::size_t i) { return coords_[i]; }

    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] const std::vector<double>& vector() const noexcept { return coords_; }

    friend bool operator==(const State&, const State&) = default;

private:
    std::vector<double> coords_;
};

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// One coordinate of the flattened space. Every space here is flat: the
/// metric is sqrt(sum_j scale_sq_j * delta_j^2), with delta_j the
/// shortest-arc difference on periodic coordinates.
struct CoordinateInfo {
    double lo = 0.0;
    double hi = 1.0;
    bool periodic = false;
    double scale_sq = 1.0;
};

class StateSpace {
public:
    enum class Kind { kRealVector, kCircle, kProduct };

    /// Box in R^n. Throws std::invalid_argument unless lo < hi everywhere.
    /// A zero-dimensional box is allowed and models an empty fiber.
    static StateSpace real_vector(std::vector<Interval> bounds);
    static StateSpace circle();
    /// Weighted product; weights default to 1. Needs at least two children.
    static StateSpace product(std::vector<StateSpace> children, std::vector<double> weights = {});

    /// Product of single coordinates with the given layout; used to build
    /// base and fiber spaces from coordinate subsets.
    static StateSpace from_coordinates(std::span<const CoordinateInfo> coords);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return layout_.size(); }
    [[nodiscard]] const std::vector<StateSpace>& children() const noexcept { return children_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }
    [[nodiscard]] const std::vector<Interval>& bounds() const noexcept { return bounds_; }
    [[nodiscard]] std::span<const CoordinateInfo> layout() const noexcept { return layout_; }

    [[nodiscard]] double distance(const State& a, const State& b) const;
    [[nodiscard]] State interpolate(const State& a, const State& b, double s) const;
    [[nodiscard]] State sample_uniform(Rng& rng) const;
    [[nodiscard]] State sample_uniform_near(const State& center, double radius, Rng& rng) const;
    /// Diameter of the space under its metric.
    [[nodiscard]] double max_extent() const noexcept;

    /// Dimension matches, real coordinates in bounds, angles in [0, 2pi).
    [[nodiscard]] bool contains(const State& x) const noexcept;
    /// Wraps periodic coordinates; throws on dimension mismatch.
    [[nodiscard]] State normalize(std::vector<double> coords) const;

    /// Distance from x to the image of the edge interpolate(a, b, .).
    [[nodiscard]] double distance_to_segment(const State& a, const State& b, const State& x) const;

    /// Per-coordinate difference b - a (shortest arc on periodic coordinates).
    [[nodiscard]] std::vector<double> difference(const State& a, const State& b) const;

    [[nodiscard]] std::string describe() const;

    friend bool operator==(const StateSpace& a, const StateSpace& b);

private:
    StateSpace() = default;
    void check_dimension(const State& x) const;

    Kind kind_ = Kind::kRealVector;
    std::vector<Interval> bounds_;
    std::vector<StateSpace> children_;
    std::vector<double> weights_;
    std::vector<CoordinateInfo> layout_;
};

}  // namespace smlr
