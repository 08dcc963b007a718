#include "smlr/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace smlr {

double normalize_angle(double angle) {
    double wrapped = std::fmod(angle, kTwoPi);
    if (wrapped < 0.0) wrapped += kTwoPi;
    if (wrapped >= kTwoPi) wrapped = 0.0;
    return wrapped;
}

double angle_difference(double from, double to) {
    double d = std::fmod(to - from, kTwoPi);
    if (d < -kPi) d += kTwoPi;
    if (d >= kPi) d -= kTwoPi;
    return d;
}

StateSpace StateSpace::real_vector(std::vector<Interval> bounds) {
    StateSpace space;
    space.kind_ = Kind::kRealVector;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
        const Interval& b = bounds[i];
        if (!(b.lo < b.hi) || !std::isfinite(b.lo) || !std::isfinite(b.hi)) {
            throw std::invalid_argument("real vector bounds need lo < hi in dimension " +
                                        std::to_string(i));
        }
        space.layout_.push_back({b.lo, b.hi, false, 1.0});
    }
    space.bounds_ = std::move(bounds);
    return space;
}

StateSpace StateSpace::circle() {
    StateSpace space;
    space.kind_ = Kind::kCircle;
    space.layout_.push_back({0.0, kTwoPi, true, 1.0});
    return space;
}

StateSpace StateSpace::product(std::vector<StateSpace> children, std::vector<double> weights) {
    if (children.size() < 2) {
        throw std::invalid_argument("product space needs at least two children");
    }
    if (weights.empty()) weights.assign(children.size(), 1.0);
    if (weights.size() != children.size()) {
        throw std::invalid_argument("product space needs one weight per child");
    }
    StateSpace space;
    space.kind_ = Kind::kProduct;
    for (std::size_t i = 0; i < children.size(); ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
            throw std::invalid_argument("product weights must be positive");
        }
        for (CoordinateInfo c : children[i].layout_) {
            c.scale_sq *= weights[i];
            space.layout_.push_back(c);
        }
    }
    space.children_ = std::move(children);
    space.weights_ = std::move(weights);
    return space;
}

StateSpace StateSpace::from_coordinates(std::span<const CoordinateInfo> coords) {
    auto single = [](const CoordinateInfo& c) {
        return c.periodic ? circle() : real_vector({{c.lo, c.hi}});
    };
    if (coords.empty()) return real_vector({});
    if (coords.size() == 1 && coords[0].scale_sq == 1.0) return single(coords[0]);
    // A one-coordinate weighted product is not constructible through product(),
    // so assemble it directly.
    StateSpace space;
    space.kind_ = Kind::kProduct;
    for (const CoordinateInfo& c : coords) {
        if (!(c.scale_sq > 0.0)) throw std::invalid_argument("coordinate scale must be positive");
        space.children_.push_back(single(c));
        space.weights_.push_back(c.scale_sq);
        space.layout_.push_back(c);
    }
    return space;
}

void StateSpace::check_dimension(const State& x) const {
    if (x.size() != layout_.size()) {
        throw std::invalid_argument("state has " + std::to_string(x.size()) +
                                    " coordinates, space has dimension " +
                                    std::to_string(layout_.size()));
    }
}

std::vector<double> StateSpace::difference(const State& a, const State& b) const {
    check_dimension(a);
    check_dimension(b);
    std::vector<double> d(layout_.size());
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        d[j] = layout_[j].periodic ? angle_difference(a[j], b[j]) : b[j] - a[j];
    }
    return d;
}

double StateSpace::distance(const State& a, const State& b) const {
    check_dimension(a);
    check_dimension(b);
    double sum = 0.0;
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        const double d = layout_[j].periodic ? angle_difference(a[j], b[j]) : b[j] - a[j];
        sum += layout_[j].scale_sq * d * d;
    }
    return std::sqrt(sum);
}

State StateSpace::interpolate(const State& a, const State& b, double s) const {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw std::invalid_argument("interpolation parameter must lie in [0, 1]");
    }
    check_dimension(a);
    check_dimension(b);
    if (s == 0.0) return a;
    if (s == 1.0) return b;
    std::vector<double> out(layout_.size());
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        if (layout_[j].periodic) {
            out[j] = normalize_angle(a[j] + s * angle_difference(a[j], b[j]));
        } else {
            out[j] = a[j] + s * (b[j] - a[j]);
        }
    }
    return State(std::move(out));
}

State StateSpace::sample_uniform(Rng& rng) const {
    std::vector<double> out(layout_.size());
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        std::uniform_real_distribution<double> dist(layout_[j].lo, layout_[j].hi);
        out[j] = layout_[j].periodic ? normalize_angle(dist(rng)) : dist(rng);
    }
    return State(std::move(out));
}

State StateSpace::sample_uniform_near(const State& center, double radius, Rng& rng) const {
    check_dimension(center);
    if (radius < 0.0) throw std::invalid_argument("sampling radius must be nonnegative");
    if (radius == 0.0 || layout_.empty()) return center;
    // Box of half-width radius / sqrt(n) per (scaled) axis keeps the sample
    // inside the metric ball without a rejection loop.
    const double per_axis = radius / std::sqrt(static_cast<double>(layout_.size()));
    std::vector<double> out(layout_.size());
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        const CoordinateInfo& c = layout_[j];
        const double half = per_axis / std::sqrt(c.scale_sq);
        if (c.periodic) {
            std::uniform_real_distribution<double> dist(-half, half);
            out[j] = normalize_angle(center[j] + dist(rng));
        } else {
            const double lo = std::max(c.lo, center[j] - half);
            const double hi = std::min(c.hi, center[j] + half);
            std::uniform_real_distribution<double> dist(lo, hi);
            out[j] = std::clamp(dist(rng), lo, hi);
        }
    }
    return State(std::move(out));
}

double StateSpace::max_extent() const noexcept {
    double sum = 0.0;
    for (const CoordinateInfo& c : layout_) {
        const double e = c.periodic ? kPi : c.hi - c.lo;
        sum += c.scale_sq * e * e;
    }
    return std::sqrt(sum);
}

bool StateSpace::contains(const State& x) const noexcept {
    if (x.size() != layout_.size()) return false;
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        const double v = x[j];
        if (!std::isfinite(v)) return false;
        if (layout_[j].periodic) {
            if (v < 0.0 || v >= kTwoPi) return false;
        } else if (v < layout_[j].lo || v > layout_[j].hi) {
            return false;
        }
    }
    return true;
}

State StateSpace::normalize(std::vector<double> coords) const {
    State x(std::move(coords));
    check_dimension(x);
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        if (layout_[j].periodic) x[j] = normalize_angle(x[j]);
    }
    return x;
}

double StateSpace::distance_to_segment(const State& a, const State& b, const State& x) const {
    const std::vector<double> seg = difference(a, b);
    const std::vector<double> rel = difference(a, x);

    std::vector<std::size_t> periodic;
    for (std::size_t j = 0; j < layout_.size(); ++j) {
        if (layout_[j].periodic) periodic.push_back(j);
    }

    double seg_sq = 0.0;
    for (std::size_t j = 0; j < layout_.size(); ++j) seg_sq += layout_[j].scale_sq * seg[j] * seg[j];

    // The edge is a straight segment in the universal cover; try the lifts of
    // x shifted by -2pi, 0, +2pi on every periodic coordinate.
    std::size_t combos = 1;
    for (std::size_t i = 0; i < periodic.size(); ++i) combos *= 3;

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> lifted(rel);
    for (std::size_t combo = 0; combo < combos; ++combo) {
        std::size_t code = combo;
        for (std::size_t idx : periodic) {
            const int shift = static_cast<int>(code % 3) - 1;
            code /= 3;
            lifted[idx] = rel[idx] + shift * kTwoPi;
        }
        double t = 0.0;
        if (seg_sq > 0.0) {
            double dot = 0.0;
            for (std::size_t j = 0; j < layout_.size(); ++j) {
                dot += layout_[j].scale_sq * lifted[j] * seg[j];
            }
            t = std::clamp(dot / seg_sq, 0.0, 1.0);
        }
        double sum = 0.0;
        for (std::size_t j = 0; j < layout_.size(); ++j) {
            const double d = lifted[j] - t * seg[j];
            sum += layout_[j].scale_sq * d * d;
        }
        best = std::min(best, std::sqrt(sum));
    }
    return best;
}

std::string StateSpace::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::kRealVector:
            os << "R^" << layout_.size();
            break;
        case Kind::kCircle:
            os << "S^1";
            break;
        case Kind::kProduct:
            for (std::size_t i = 0; i < children_.size(); ++i) {
                if (i > 0) os << " x ";
                os << children_[i].describe();
                if (weights_[i] != 1.0) os << "(w=" << weights_[i] << ")";
            }
            break;
    }
    return os.str();
}

bool operator==(const StateSpace& a, const StateSpace& b) {
    if (a.layout_.size() != b.layout_.size()) return false;
    for (std::size_t j = 0; j < a.layout_.size(); ++j) {
        const CoordinateInfo& x = a.layout_[j];
        const CoordinateInfo& y = b.layout_[j];
        if (x.lo != y.lo || x.hi != y.hi || x.periodic != y.periodic || x.scale_sq != y.scale_sq) {
            return false;
        }
    }
    return true;
}

}  // namespace smlr
