#include <gtest/gtest.h>

#include <numeric>

#include "mqlswarm/metrics.hpp"
#include "mqlswarm/random.hpp"
#include "oracles.hpp"

using namespace mqlswarm;

namespace {

Trace rewards_trace(ParticleId who, std::vector<double> rewards) {
    Trace t;
    for (std::size_t k = 0; k < rewards.size(); ++k) {
        TickRecord r;
        r.tick = k;
        r.particle = who;
        r.reward = rewards[k];
        r.neighbor_count = 1;
        t.push_back(r);
    }
    return t;
}

Trace neighbor_trace(std::vector<std::size_t> counts) {
    Trace t;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        TickRecord r;
        r.tick = k;
        r.particle = ParticleId{0};
        r.neighbor_count = counts[k];
        t.push_back(r);
    }
    return t;
}

}  // namespace

TEST(ConnectivityComponents, Examples) {
    const std::vector<Vec2> apart{{0, 0}, {20, 0}, {0, 20}};
    EXPECT_EQ(connectivity_components(apart, 10.0), (std::vector<std::size_t>{1, 1, 1}));

    const std::vector<Vec2> chain{{0, 0}, {5, 0}, {10, 0}, {50, 50}};
    EXPECT_EQ(connectivity_components(chain, 10.0), (std::vector<std::size_t>{3, 1}));

    const std::vector<Vec2> single{{3, 3}};
    EXPECT_EQ(connectivity_components(single, 10.0), (std::vector<std::size_t>{1}));
}

TEST(ConnectivityComponents, MatchesTransitiveClosureOracle) {
    RandomStream rng(99);
    for (int n = 0; n < 300; ++n) {
        const std::size_t m = 1 + rng.uniform_index(15);
        std::vector<Vec2> pts(m);
        std::vector<oracle::Point> raw(m);
        for (std::size_t i = 0; i < m; ++i) {
            pts[i] = {rng.uniform01() * 40, rng.uniform01() * 40};
            raw[i] = {pts[i].x, pts[i].y};
        }
        const auto sizes = connectivity_components(pts, 8.0);
        EXPECT_EQ(sizes, oracle::components(raw, 8.0));
        EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), m);
        const auto singletons = std::count(sizes.begin(), sizes.end(), std::size_t{1});
        EXPECT_DOUBLE_EQ(connected_fraction(pts, 8.0),
                         1.0 - static_cast<double>(singletons) / static_cast<double>(m));
    }
}

TEST(ConnectedFraction, Examples) {
    const std::vector<Vec2> cluster{{0, 0}, {1, 0}, {0, 1}};
    EXPECT_EQ(connected_fraction(cluster, 5.0), 1.0);
    const std::vector<Vec2> apart{{0, 0}, {20, 0}, {0, 20}};
    EXPECT_EQ(connected_fraction(apart, 5.0), 0.0);
    const std::vector<Vec2> one_out{{0, 0}, {1, 0}, {30, 30}};
    EXPECT_DOUBLE_EQ(connected_fraction(one_out, 5.0), 2.0 / 3.0);
}

TEST(Dispersion, Examples) {
    const std::vector<Vec2> same{{4, 4}, {4, 4}, {4, 4}};
    EXPECT_EQ(dispersion(same), 0.0);
    const std::vector<Vec2> pair{{0, 0}, {2, 0}};
    EXPECT_DOUBLE_EQ(dispersion(pair), 1.0);
    EXPECT_THROW(dispersion(std::vector<Vec2>{}), std::invalid_argument);
}

TEST(Dispersion, TranslationInvariantAndScalesLinearly) {
    RandomStream rng(12);
    for (int n = 0; n < 200; ++n) {
        std::vector<Vec2> pts(1 + rng.uniform_index(12));
        for (auto& p : pts) p = {rng.uniform01() * 50, rng.uniform01() * 50};
        const Vec2 shift{rng.uniform01() * 100 - 50, rng.uniform01() * 100 - 50};
        const double scale = 0.1 + rng.uniform01() * 5;
        const Vec2 c = centroid(pts);
        std::vector<Vec2> moved = pts, scaled = pts;
        for (auto& p : moved) p += shift;
        for (auto& p : scaled) p = c + (p - c) * scale;
        const double base = dispersion(pts);
        EXPECT_NEAR(dispersion(moved), base, 1e-9);
        EXPECT_NEAR(dispersion(scaled), scale * base, 1e-9);
    }
}

TEST(OverlapPairFraction, CountsClosePairs) {
    const std::vector<Vec2> pts{{0, 0}, {1, 0}, {10, 0}, {10.5, 0}};
    EXPECT_DOUBLE_EQ(overlap_pair_fraction(pts, 2.0), 2.0 / 6.0);
    EXPECT_EQ(overlap_pair_fraction(std::vector<Vec2>{{0, 0}}, 2.0), 0.0);
}

TEST(CumulativeReward, Examples) {
    const ParticleId p{0};
    EXPECT_DOUBLE_EQ(cumulative_reward(rewards_trace(p, {100, -3, -100}), p), -3.0);
    Trace no_rewards = neighbor_trace({1, 1});
    EXPECT_EQ(cumulative_reward(no_rewards, p), 0.0);
    EXPECT_EQ(cumulative_reward(rewards_trace(p, std::vector<double>(7, 100.0)), p), 700.0);
    EXPECT_THROW(cumulative_reward(rewards_trace(p, {1}), ParticleId{4}), std::out_of_range);
}

TEST(ClassifyDecisions, Examples) {
    const ParticleId p{0};
    using D = Decision;
    EXPECT_EQ(classify_decisions(rewards_trace(p, {100, -3}), p), (std::vector<D>{D::good, D::bad}));
    EXPECT_EQ(classify_decisions(rewards_trace(p, {0}), p), (std::vector<D>{D::bad}));
    EXPECT_EQ(classify_decisions(rewards_trace(p, {-100, -100, -100}), p),
              (std::vector<D>(3, D::bad)));
    EXPECT_EQ(classify_decisions(rewards_trace(p, std::vector<double>(9, 1.0)), p).size(), 9u);
}

TEST(DriftOnset, Examples) {
    const ParticleId p{0};
    EXPECT_EQ(drift_onset(neighbor_trace({2, 1, 0, 0, 0}), p), std::optional<std::size_t>{2});
    EXPECT_EQ(drift_onset(neighbor_trace({2, 2, 1}), p), std::nullopt);
    EXPECT_EQ(drift_onset(neighbor_trace({1, 1, 1, 0, 0, 1, 2}), p), std::nullopt);
    EXPECT_EQ(drift_onset(neighbor_trace({0, 0}), p), std::optional<std::size_t>{0});
}
