#include "smlr/validity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace smlr {

using geometry::convex_overlap;
using geometry::convex_signed_distance;
using geometry::norm;
using geometry::point_segment_distance;
using geometry::signed_distance_polygon;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Signed distance from a disc center to a convex point set.
double center_to_convex(Vec2 c, std::span<const Vec2> piece) {
    if (piece.size() == 1) return norm(c - piece[0]);
    if (piece.size() == 2) return point_segment_distance(c, piece[0], piece[1]);
    return signed_distance_polygon(c, piece);
}

double wall_distance(Vec2 p, const Workspace& ws) {
    return std::min({p.x - ws.lo.x, ws.hi.x - p.x, p.y - ws.lo.y, ws.hi.y - p.y});
}

}  // namespace

Obstacle::Obstacle(std::variant<DiscShape, BoxShape, PolygonShape> shape) : shape_(std::move(shape)) {
    std::visit(Overloaded{
                   [this](const DiscShape& d) {
                       bound_center_ = d.center;
                       bound_radius_ = d.radius;
                   },
                   [this](const BoxShape& b) { hull_ = geometry::box_polygon(b.lo, b.hi); },
                   [this](const PolygonShape& p) { hull_ = p.vertices; },
               },
               shape_);
    if (!hull_.empty()) {
        Vec2 c{0.0, 0.0};
        for (Vec2 v : hull_) c = c + v;
        c = (1.0 / static_cast<double>(hull_.size())) * c;
        double r = 0.0;
        for (Vec2 v : hull_) r = std::max(r, norm(v - c));
        bound_center_ = c;
        bound_radius_ = r;
    }
}

Obstacle Obstacle::disc(Vec2 center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("disc obstacle radius must be positive");
    return Obstacle(DiscShape{center, radius});
}

Obstacle Obstacle::box(Vec2 lo, Vec2 hi) {
    if (!(lo.x < hi.x && lo.y < hi.y)) throw std::invalid_argument("box obstacle needs lo < hi");
    return Obstacle(BoxShape{lo, hi});
}

Obstacle Obstacle::polygon(std::vector<Vec2> vertices) {
    if (!geometry::is_convex_ccw(vertices)) {
        throw std::invalid_argument("polygon obstacle needs >= 3 convex counter-clockwise vertices");
    }
    return Obstacle(PolygonShape{std::move(vertices)});
}

double Obstacle::signed_distance(Vec2 p) const {
    if (const auto* d = std::get_if<DiscShape>(&shape_)) return norm(p - d->center) - d->radius;
    return signed_distance_polygon(p, hull_);
}

double Obstacle::signed_distance(std::span<const Vec2> convex) const {
    if (const auto* d = std::get_if<DiscShape>(&shape_)) {
        return center_to_convex(d->center, convex) - d->radius;
    }
    return convex_signed_distance(hull_, convex);
}

bool Obstacle::overlaps(std::span<const Vec2> convex) const {
    if (const auto* d = std::get_if<DiscShape>(&shape_)) {
        return center_to_convex(d->center, convex) <= d->radius;
    }
    return convex_overlap(hull_, convex);
}

RobotModel::RobotModel(Variant model) : model_(std::move(model)) {
    std::visit(Overloaded{
                   [](const PointRobot&) {},
                   [](const DiscRobot& d) {
                       if (!(d.radius > 0.0)) throw std::invalid_argument("disc robot radius must be positive");
                   },
                   [](const RigidPolygonRobot& r) {
                       if (r.parts.empty()) throw std::invalid_argument("rigid polygon robot needs parts");
                       for (const auto& part : r.parts) {
                           if (!geometry::is_convex_ccw(part)) {
                               throw std::invalid_argument(
                                   "rigid polygon parts must be convex counter-clockwise");
                           }
                       }
                   },
                   [](const PlanarChainRobot& c) {
                       if (c.link_lengths.empty()) throw std::invalid_argument("planar chain needs links");
                       if (c.link_lengths.size() != c.joint_indices.size()) {
                           throw std::invalid_argument("planar chain needs one joint per link");
                       }
                       for (double l : c.link_lengths) {
                           if (!(l > 0.0)) throw std::invalid_argument("link lengths must be positive");
                       }
                   },
               },
               model_);
}

std::vector<std::size_t> RobotModel::used_coordinates() const {
    return std::visit(Overloaded{
                          [](const PointRobot& p) { return std::vector<std::size_t>{p.x_index, p.y_index}; },
                          [](const DiscRobot& d) { return std::vector<std::size_t>{d.x_index, d.y_index}; },
                          [](const RigidPolygonRobot& r) {
                              return std::vector<std::size_t>{r.x_index, r.y_index, r.theta_index};
                          },
                          [](const PlanarChainRobot& c) {
                              std::vector<std::size_t> out;
                              if (c.base_indices) out = {(*c.base_indices)[0], (*c.base_indices)[1]};
                              out.insert(out.end(), c.joint_indices.begin(), c.joint_indices.end());
                              return out;
                          },
                      },
                      model_);
}

void RobotModel::check_covers(std::size_t dimension) const {
    std::vector<std::size_t> used = used_coordinates();
    std::sort(used.begin(), used.end());
    bool ok = used.size() == dimension;
    for (std::size_t i = 0; ok && i < used.size(); ++i) ok = used[i] == i;
    if (!ok) {
        throw std::invalid_argument("robot state interpretation must cover exactly the " +
                                    std::to_string(dimension) + " state coordinates");
    }
}

LevelValidity::LevelValidity(StateSpace space, RobotModel robot, std::shared_ptr<const Workspace> workspace,
                             double check_resolution)
    : space_(std::move(space)),
      robot_(std::move(robot)),
      workspace_(std::move(workspace)),
      check_resolution_(check_resolution) {
    if (!workspace_) throw std::invalid_argument("level validity needs a workspace");
    if (!(check_resolution_ > 0.0 && check_resolution_ <= 1.0)) {
        throw std::invalid_argument("check resolution must lie in (0, 1]");
    }
    robot_.check_covers(space_.dimension());
    step_ = check_resolution_ * space_.max_extent();
}

LevelValidity LevelValidity::with_resolution(double check_resolution) const {
    return LevelValidity(space_, robot_, workspace_, check_resolution);
}

LevelValidity::Posed LevelValidity::pose(const State& x) const {
    Posed out;
    std::visit(Overloaded{
                   [&](const PointRobot& p) { out.convex.push_back({Vec2{x[p.x_index], x[p.y_index]}}); },
                   [&](const DiscRobot& d) {
                       out.discs.push_back({Vec2{x[d.x_index], x[d.y_index]}, d.radius});
                   },
                   [&](const RigidPolygonRobot& r) {
                       const Vec2 origin{x[r.x_index], x[r.y_index]};
                       const double c = std::cos(x[r.theta_index]);
                       const double s = std::sin(x[r.theta_index]);
                       for (const auto& part : r.parts) {
                           std::vector<Vec2> posed;
                           posed.reserve(part.size());
                           for (Vec2 v : part) posed.push_back({origin.x + c * v.x - s * v.y, origin.y + s * v.x + c * v.y});
                           out.convex.push_back(std::move(posed));
                       }
                   },
                   [&](const PlanarChainRobot& chain) {
                       Vec2 joint = chain.fixed_base;
                       if (chain.base_indices) joint = {x[(*chain.base_indices)[0]], x[(*chain.base_indices)[1]]};
                       double heading = 0.0;
                       for (std::size_t i = 0; i < chain.link_lengths.size(); ++i) {
                           heading += x[chain.joint_indices[i]];
                           const Vec2 next{joint.x + chain.link_lengths[i] * std::cos(heading),
                                           joint.y + chain.link_lengths[i] * std::sin(heading)};
                           out.convex.push_back({joint, next});
                           joint = next;
                       }
                   },
               },
               robot_.model());
    return out;
}

bool LevelValidity::is_valid(const State& x) const {
    if (x.size() != space_.dimension()) return false;
    const Posed posed = pose(x);
    const Workspace& ws = *workspace_;

    for (const DiscShape& d : posed.discs) {
        if (!(wall_distance(d.center, ws) > d.radius)) return false;
        for (const Obstacle& o : ws.obstacles) {
            if (norm(d.center - o.bound_center()) > d.radius + o.bound_radius()) continue;
            if (!(o.signed_distance(d.center) > d.radius)) return false;
        }
    }
    for (const auto& piece : posed.convex) {
        Vec2 c{0.0, 0.0};
        for (Vec2 v : piece) {
            if (!(wall_distance(v, ws) > 0.0)) return false;
            c = c + v;
        }
        c = (1.0 / static_cast<double>(piece.size())) * c;
        double r = 0.0;
        for (Vec2 v : piece) r = std::max(r, norm(v - c));
        for (const Obstacle& o : ws.obstacles) {
            if (norm(c - o.bound_center()) > r + o.bound_radius()) continue;
            if (o.overlaps(piece)) return false;
        }
    }
    return true;
}

double LevelValidity::clearance(const State& x) const {
    const Posed posed = pose(x);
    const Workspace& ws = *workspace_;
    double best = std::numeric_limits<double>::infinity();
    for (const DiscShape& d : posed.discs) {
        best = std::min(best, wall_distance(d.center, ws) - d.radius);
        for (const Obstacle& o : ws.obstacles) best = std::min(best, o.signed_distance(d.center) - d.radius);
    }
    for (const auto& piece : posed.convex) {
        for (Vec2 v : piece) best = std::min(best, wall_distance(v, ws));
        for (const Obstacle& o : ws.obstacles) best = std::min(best, o.signed_distance(piece));
    }
    return best;
}

std::size_t LevelValidity::subdivisions(double length) const noexcept {
    constexpr std::size_t kMaxSubdivisions = std::size_t{1} << 20;
    std::size_t n = 1;
    while (n < kMaxSubdivisions && length / static_cast<double>(n) > step_) n *= 2;
    return n;
}

bool LevelValidity::motion_valid(const State& a, const State& b) const {
    // Canonical direction makes the check exactly symmetric.
    const bool swap = std::lexicographical_compare(b.vector().begin(), b.vector().end(),
                                                   a.vector().begin(), a.vector().end());
    const State& from = swap ? b : a;
    const State& to = swap ? a : b;

    if (!is_valid(from) || !is_valid(to)) return false;
    const std::size_t n = subdivisions(space_.distance(from, to));
    // Coarse-to-fine bisection order finds collisions early.
    for (std::size_t stride = n; stride > 1; stride /= 2) {
        for (std::size_t i = stride / 2; i < n; i += stride) {
            const double s = static_cast<double>(i) / static_cast<double>(n);
            if (!is_valid(space_.interpolate(from, to, s))) return false;
        }
    }
    return true;
}

}  // namespace smlr
