#include <gtest/gtest.h>

#include <set>

#include "mqlswarm/qlearning.hpp"
#include "mqlswarm/random.hpp"
#include "oracles.hpp"

using namespace mqlswarm;

namespace {

QTable with_row(std::vector<double> row) {
    QTable t(1, row.size());
    for (std::size_t a = 0; a < row.size(); ++a) t.set(0, a, row[a]);
    return t;
}

}  // namespace

TEST(QInit, ZeroFilled) {
    const QTable t = q_init(5, 12);
    EXPECT_EQ(t.num_states(), 5u);
    EXPECT_EQ(t.num_actions(), 12u);
    for (double v : t.values()) EXPECT_EQ(v, 0.0);
    EXPECT_EQ(q_init(1, 1).values(), std::vector<double>{0.0});
}

TEST(QInit, RejectsEmptyDimensions) {
    EXPECT_THROW(q_init(0, 3), std::invalid_argument);
    EXPECT_THROW(q_init(3, 0), std::invalid_argument);
}

TEST(MaxQ, Examples) {
    EXPECT_EQ(max_q(with_row({1, 5, 2}), 0), 5.0);
    EXPECT_EQ(max_q(with_row({0, 0, 0}), 0), 0.0);
    EXPECT_EQ(max_q(with_row({-3, -1, -7}), 0), -1.0);
    EXPECT_THROW(max_q(with_row({1}), 1), std::out_of_range);
}

TEST(GreedyAction, UniqueArgmaxDoesNotConsumeRandomness) {
    RandomStream rng(1), untouched(1);
    EXPECT_EQ(greedy_action(with_row({1, 5, 2}), 0, rng), 1u);
    EXPECT_EQ(rng.uniform01(), untouched.uniform01());
}

TEST(GreedyAction, TiesAreUniform) {
    RandomStream rng(5);
    std::array<int, 3> all_tied{};
    std::array<int, 3> two_tied{};
    const QTable zeros = with_row({0, 0, 0});
    const QTable sevens = with_row({7, 7, 1});
    for (int n = 0; n < 3000; ++n) {
        ++all_tied[greedy_action(zeros, 0, rng)];
        ++two_tied[greedy_action(sevens, 0, rng)];
    }
    for (int h : all_tied) EXPECT_GT(h, 850);
    EXPECT_GT(two_tied[0], 1350);
    EXPECT_GT(two_tied[1], 1350);
    EXPECT_EQ(two_tied[2], 0);
}

TEST(GreedyAction, OutOfRangeState) {
    RandomStream rng(1);
    EXPECT_THROW(greedy_action(q_init(2, 2), 2, rng), std::out_of_range);
}

TEST(QUpdate, Examples) {
    QTable t(2, 2);
    EXPECT_DOUBLE_EQ(q_update(t, 0, 0, 100.0, 1, {0.1, 0.9}), 10.0);

    QTable frozen(2, 2);
    frozen.set(0, 1, 3.5);
    EXPECT_EQ(q_update(frozen, 0, 1, 1e6, 1, {0.0, 0.9}), 3.5);

    QTable u(2, 2);
    u.set(0, 0, 10.0);
    u.set(1, 0, 10.0);
    EXPECT_DOUBLE_EQ(q_update(u, 0, 0, -100.0, 1, {0.5, 0.9}), -40.5);
}

TEST(QUpdate, RejectsNonFiniteRewardAndBadIndices) {
    QTable t(2, 2);
    EXPECT_THROW(q_update(t, 0, 0, NAN, 1, {}), std::invalid_argument);
    EXPECT_THROW(q_update(t, 0, 0, INFINITY, 1, {}), std::invalid_argument);
    EXPECT_THROW(q_update(t, 2, 0, 1.0, 1, {}), std::out_of_range);
    EXPECT_THROW(q_update(t, 0, 2, 1.0, 1, {}), std::out_of_range);
    EXPECT_THROW(q_update(t, 0, 0, 1.0, 2, {}), std::out_of_range);
}

TEST(QUpdate, TouchesExactlyOneCell) {
    RandomStream rng(9);
    QTable t(5, 12);
    for (int n = 0; n < 500; ++n) {
        const auto s = rng.uniform_index(5), a = rng.uniform_index(12), s2 = rng.uniform_index(5);
        const auto before = t.values();
        q_update(t, s, a, rng.uniform01() * 200 - 100, s2, {0.3, 0.8});
        const auto after = t.values();
        for (std::size_t k = 0; k < before.size(); ++k) {
            if (k != s * 12 + a) {
                EXPECT_EQ(before[k], after[k]);
            }
        }
    }
}

TEST(QUpdate, FixedPointForAnyRate) {
    for (double beta : {0.0, 0.1, 0.5, 1.0}) {
        QTable t(2, 1);
        t.set(1, 0, 20.0);
        t.set(0, 0, 5.0 + 0.9 * 20.0);
        EXPECT_DOUBLE_EQ(q_update(t, 0, 0, 5.0, 1, {beta, 0.9}), 23.0);
    }
}

TEST(QUpdate, BoundedUnderBoundedRewards) {
    RandomStream rng(21);
    const double gamma = 0.9;
    const double bound = 100.0 / (1.0 - gamma);
    QTable t(5, 12);
    for (int n = 0; n < 50000; ++n) {
        q_update(t, rng.uniform_index(5), rng.uniform_index(12),
                 rng.bernoulli(0.5) ? 100.0 : -100.0 * rng.uniform01(), rng.uniform_index(5),
                 {rng.uniform01(), gamma});
    }
    for (double v : t.values()) {
        EXPECT_LE(v, bound);
        EXPECT_GE(v, -bound);
    }
}

TEST(QUpdate, MatchesIndependentEvaluation) {
    RandomStream rng(1234);
    for (int n = 0; n < 1000; ++n) {
        const double q = rng.uniform01() * 400 - 200;
        const double max_next = rng.uniform01() * 400 - 200;
        const double r = rng.uniform01() * 200 - 100;
        const double beta = rng.uniform01();
        const double gamma = rng.uniform01();
        QTable t(2, 1);
        t.set(0, 0, q);
        t.set(1, 0, max_next);
        const double got = q_update(t, 0, 0, r, 1, {beta, gamma});
        EXPECT_NEAR(got, oracle::q_update(q, r, beta, gamma, max_next), 1e-12);
    }
}

TEST(GreedyAction, ArgmaxInvariantUnderPositiveScaling) {
    RandomStream rng(77);
    for (int n = 0; n < 500; ++n) {
        std::vector<double> row(12);
        for (auto& v : row) v = std::round(rng.uniform01() * 10 - 5);
        const double c = 0.01 + rng.uniform01() * 50;
        std::vector<double> scaled = row;
        for (auto& v : scaled) v *= c;
        const auto a = greedy_set(with_row(row), 0);
        const auto b = greedy_set(with_row(scaled), 0);
        EXPECT_EQ(a, b);
    }
}
