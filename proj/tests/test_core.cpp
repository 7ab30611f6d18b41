#include <gtest/gtest.h>

#include <cmath>

#include "mqlswarm/core.hpp"
#include "mqlswarm/random.hpp"

using namespace mqlswarm;

TEST(EuclideanDistance, Examples) {
    EXPECT_EQ(euclidean_distance({0, 0}, {0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(euclidean_distance({0, 0}, {3, 4}), 5.0);
    EXPECT_DOUBLE_EQ(euclidean_distance({1, 1}, {-2, 5}), 5.0);
}

TEST(EuclideanDistance, SymmetryAndTriangleOnRandomPoints) {
    RandomStream rng(7);
    auto draw = [&] { return Vec2{rng.uniform01() * 200 - 100, rng.uniform01() * 200 - 100}; };
    for (int n = 0; n < 2000; ++n) {
        const Vec2 a = draw(), b = draw(), c = draw();
        EXPECT_EQ(euclidean_distance(a, b), euclidean_distance(b, a));
        EXPECT_LE(euclidean_distance(a, c),
                  euclidean_distance(a, b) + euclidean_distance(b, c) + 1e-9);
        EXPECT_GT(euclidean_distance(a, b), 0.0);
    }
}

TEST(ClampToWorld, Examples) {
    const WorldBounds w{0, 10, 0, 10};
    EXPECT_EQ(clamp_to_world({5, 5}, w), (Vec2{5, 5}));
    EXPECT_EQ(clamp_to_world({-1, 12}, w), (Vec2{0, 10}));
    EXPECT_EQ(clamp_to_world({10, 0}, w), (Vec2{10, 0}));
}

TEST(ClampToWorld, Idempotent) {
    const WorldBounds w{-3, 7, 2, 4};
    RandomStream rng(11);
    for (int n = 0; n < 1000; ++n) {
        const Vec2 p{rng.uniform01() * 40 - 20, rng.uniform01() * 40 - 20};
        const Vec2 once = clamp_to_world(p, w);
        EXPECT_EQ(clamp_to_world(once, w), once);
        EXPECT_TRUE(w.contains(once));
    }
}

TEST(WorldBounds, Validation) {
    EXPECT_NO_THROW((WorldBounds{0, 1, 0, 1}.validate()));
    EXPECT_THROW((WorldBounds{1, 1, 0, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((WorldBounds{0, 1, 2, 1}.validate()), std::invalid_argument);
    EXPECT_THROW((WorldBounds{0, NAN, 0, 1}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((WorldBounds{1, 1, 0, 1}.validate("spawn", true)));
}

TEST(RandomStream, DeterministicAndInRange) {
    RandomStream a(42), b(42);
    for (int n = 0; n < 1000; ++n) {
        const double u = a.uniform01();
        EXPECT_EQ(u, b.uniform01());
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        const auto k = a.uniform_index(7);
        EXPECT_EQ(k, b.uniform_index(7));
        EXPECT_LT(k, 7u);
    }
    EXPECT_THROW(a.uniform_index(0), std::invalid_argument);
}

TEST(RandomStream, UniformIndexCoversRange) {
    RandomStream rng(3);
    std::array<int, 3> hits{};
    for (int n = 0; n < 3000; ++n) ++hits[rng.uniform_index(3)];
    for (int h : hits) EXPECT_GT(h, 850);
}
