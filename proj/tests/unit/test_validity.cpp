#include <gtest/gtest.h>

#include <cmath>

#include "smlr/geometry.hpp"
#include "smlr/validity.hpp"
#include "worlds.hpp"

namespace smlr {
namespace {

using testing::disc_level;
using testing::point_level;

TEST(IsValid, PointRobotInEmptySquare) { EXPECT_TRUE(point_level().is_valid({0.5, 0.5})); }

TEST(IsValid, PointAtDiscCenterIsInvalid) {
    EXPECT_FALSE(point_level({Obstacle::disc({0.5, 0.5}, 0.1)}).is_valid({0.5, 0.5}));
}

TEST(IsValid, DiscTooCloseToWallSegment) {
    // Thin wall along x = 0.6; the robot center sits 0.05 away.
    const LevelValidity level = disc_level(0.1, {Obstacle::box({0.6, 0.2}, {0.61, 0.8})});
    EXPECT_NEAR(geometry::point_segment_distance({0.55, 0.5}, {0.6, 0.2}, {0.6, 0.8}), 0.05, 1e-12);
    EXPECT_FALSE(level.is_valid({0.55, 0.5}));
    EXPECT_TRUE(level.is_valid({0.45, 0.5}));
}

TEST(IsValid, WorkspaceBoundsAreWalls) {
    EXPECT_FALSE(disc_level(0.1).is_valid({0.05, 0.5}));
    EXPECT_TRUE(disc_level(0.1).is_valid({0.15, 0.5}));
}

TEST(IsValid, RigidPolygonUsesOrientation) {
    // A 0.4 x 0.02 bar next to a disc: horizontal overlaps, vertical clears.
    RigidPolygonRobot bar;
    bar.parts = {geometry::box_polygon({-0.2, -0.01}, {0.2, 0.01})};
    const StateSpace se2 = StateSpace::product({testing::unit_square(), StateSpace::circle()});
    const LevelValidity level(se2, RobotModel(bar), testing::unit_workspace({Obstacle::disc({0.65, 0.5}, 0.05)}));
    EXPECT_FALSE(level.is_valid({0.5, 0.5, 0.0}));
    EXPECT_TRUE(level.is_valid({0.5, 0.5, kPi / 2}));
}

TEST(IsValid, ChainLinksCollide) {
    const FiberBundleSequence seq = testing::free_torus_sequence({Obstacle::box({1.4, -0.1}, {1.6, 0.1})});
    const LevelValidity& arm = seq.validity(1);
    EXPECT_FALSE(arm.is_valid({0.0, 0.0}));        // straight along +x, second link hits
    EXPECT_TRUE(arm.is_valid({0.0, kPi / 2}));     // elbow bent up
    EXPECT_TRUE(seq.validity(0).is_valid({0.0}));  // first link alone is short of the box
}

TEST(MotionValid, ZeroLengthMotion) {
    EXPECT_TRUE(point_level().motion_valid({0.3, 0.3}, {0.3, 0.3}));
}

TEST(MotionValid, BlockedByWall) {
    const LevelValidity level = point_level({Obstacle::box({0.45, 0.0}, {0.55, 1.0})});
    EXPECT_TRUE(level.is_valid({0.2, 0.5}));
    EXPECT_TRUE(level.is_valid({0.8, 0.5}));
    EXPECT_FALSE(level.motion_valid({0.2, 0.5}, {0.8, 0.5}));
    EXPECT_FALSE(level.is_valid({0.5, 0.5}));
}

TEST(MotionValid, EmptySpace) { EXPECT_TRUE(point_level().motion_valid({0.1, 0.1}, {0.9, 0.9})); }

TEST(MotionValid, SymmetricOnRandomPairs) {
    const LevelValidity level =
        point_level({Obstacle::disc({0.3, 0.3}, 0.05), Obstacle::box({0.6, 0.6}, {0.605, 0.9})}, 0.05);
    Rng rng(8);
    for (int i = 0; i < 5000; ++i) {
        const State a = level.space().sample_uniform(rng);
        const State b = level.space().sample_uniform(rng);
        ASSERT_EQ(level.motion_valid(a, b), level.motion_valid(b, a));
    }
}

TEST(MotionValid, FinerResolutionNeverAcceptsMore) {
    const LevelValidity coarse = point_level({Obstacle::box({0.5, 0.0}, {0.503, 1.0})}, 0.2);
    Rng rng(12);
    int coarse_rejections = 0;
    for (int i = 0; i < 3000; ++i) {
        const State a = coarse.space().sample_uniform(rng);
        const State b = coarse.space().sample_uniform(rng);
        if (!coarse.is_valid(a) || !coarse.is_valid(b) || coarse.motion_valid(a, b)) continue;
        ++coarse_rejections;
        for (double r : {0.1, 0.05, 0.01, 0.001}) ASSERT_FALSE(coarse.with_resolution(r).motion_valid(a, b));
    }
    EXPECT_GT(coarse_rejections, 0);
}

TEST(MotionValid, SubdivisionsArePowersOfTwo) {
    const LevelValidity level = point_level({}, 0.01);
    for (double len : {0.0, 0.001, 0.05, 0.3, 1.4}) {
        const std::size_t n = level.subdivisions(len);
        EXPECT_EQ(n & (n - 1), 0u);
        EXPECT_LE(len / static_cast<double>(n), 0.01 * std::sqrt(2.0) + 1e-12);
    }
}

TEST(Clearance, DistanceToDiscSurface) {
    auto ws = std::make_shared<Workspace>();
    ws->lo = {-2.0, -2.0};
    ws->hi = {2.0, 2.0};
    ws->obstacles = {Obstacle::disc({0.0, 0.0}, 0.1)};
    const LevelValidity level(StateSpace::real_vector({{-2, 2}, {-2, 2}}), RobotModel(PointRobot{}), ws);
    EXPECT_NEAR(level.clearance({0.0, 0.4}), 0.3, 1e-12);
    EXPECT_NEAR(level.clearance({0.1, 0.0}), 0.0, 1e-12);
    EXPECT_NEAR(level.clearance({0.0, 0.0}), -0.1, 1e-12);
}

TEST(Clearance, SignAgreesWithValidity) {
    const std::vector<Obstacle> obstacles{Obstacle::disc({0.3, 0.7}, 0.12), Obstacle::box({0.5, 0.1}, {0.8, 0.3}),
                                          Obstacle::polygon({{0.6, 0.6}, {0.9, 0.6}, {0.75, 0.9}})};
    for (const LevelValidity& level : {point_level(obstacles), disc_level(0.03, obstacles)}) {
        Rng rng(31);
        for (int i = 0; i < 20000; ++i) {
            const State x = level.space().sample_uniform(rng);
            const double c = level.clearance(x);
            if (std::abs(c) < 1e-9) continue;
            ASSERT_EQ(c > 0.0, level.is_valid(x)) << x[0] << ", " << x[1];
        }
    }
}

TEST(Obstacle, RejectsDegenerateShapes) {
    EXPECT_THROW(Obstacle::disc({0, 0}, 0.0), std::invalid_argument);
    EXPECT_THROW(Obstacle::box({0, 0}, {0, 1}), std::invalid_argument);
    EXPECT_THROW(Obstacle::polygon({{0, 0}, {1, 0}, {2, 0}}), std::invalid_argument);
    EXPECT_THROW(Obstacle::polygon({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);  // clockwise
}

TEST(RobotModel, MustCoverEveryCoordinate) {
    EXPECT_THROW(LevelValidity(StateSpace::product({testing::unit_square(), StateSpace::circle()}),
                               RobotModel(PointRobot{}), testing::unit_workspace()),
                 std::invalid_argument);
    EXPECT_THROW(RobotModel(DiscRobot{-1.0}), std::invalid_argument);
}

TEST(Geometry, ConvexOverlapAndDistance) {
    using geometry::Vec2;
    const std::vector<Vec2> square = geometry::box_polygon({0, 0}, {1, 1});
    const std::vector<Vec2> seg{{1.5, 0.5}, {2.5, 0.5}};
    const std::vector<Vec2> crossing{{0.5, 0.5}, {2.5, 0.5}};
    EXPECT_FALSE(geometry::convex_overlap(square, seg));
    EXPECT_TRUE(geometry::convex_overlap(square, crossing));
    EXPECT_NEAR(geometry::convex_signed_distance(square, seg), 0.5, 1e-12);
    EXPECT_NEAR(geometry::signed_distance_polygon({0.5, 0.5}, square), -0.5, 1e-12);
}

}  // namespace
}  // namespace smlr
