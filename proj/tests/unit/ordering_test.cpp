#include "fixtures.hpp"

#include "gviews/error.hpp"
#include "gviews/ordering/ordering.hpp"
#include "random_matrix.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace gviews;

namespace {

EdgeBooleanMatrix drawn_matrix() {
    std::vector<std::vector<bool>> rows;
    for (std::size_t e = 0; e < 200; ++e) {
        auto r = fixtures::matrix_row(e);
        rows.push_back({r[0], r[1], r[2], r[3]});
    }
    return EdgeBooleanMatrix::from_rows(rows);
}

// Straight row-by-row comparison, column 0 all zero.
std::uint64_t direct_distance(const EdgeBooleanMatrix& m, std::size_t a, std::size_t b) {
    std::uint64_t d = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const bool x = a ? m.get(r, a - 1) : false;
        const bool y = b ? m.get(r, b - 1) : false;
        d += x != y;
    }
    return d;
}

}  // namespace

TEST(Ordering, DrawnCliqueWeights) {
    auto q = hamming_clique(drawn_matrix());
    ASSERT_EQ(q.size(), 5U);
    EXPECT_EQ(q.weight(0, 1), 100U);
    EXPECT_EQ(q.weight(0, 2), 150U);
    EXPECT_EQ(q.weight(0, 3), 90U);
    EXPECT_EQ(q.weight(0, 4), 140U);
    EXPECT_EQ(q.weight(1, 2), 150U);
    EXPECT_EQ(q.weight(1, 3), 10U);
    EXPECT_EQ(q.weight(1, 4), 160U);
    EXPECT_EQ(q.weight(2, 3), 140U);
    EXPECT_EQ(q.weight(2, 4), 10U);
    EXPECT_EQ(q.weight(3, 4), 150U);
}

TEST(Ordering, PartitionedSumMatchesDirectComparison) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        auto m = testutil::random_matrix(rng, 1 + rng() % 9, rng() % 300, 0.3);
        auto whole = hamming_clique(m, 1, 1);
        for (std::size_t a = 0; a < whole.size(); ++a) {
            EXPECT_EQ(whole.weight(a, a), 0U);
            for (std::size_t b = 0; b < whole.size(); ++b)
                ASSERT_EQ(whole.weight(a, b), direct_distance(m, a, b));
        }
        EXPECT_EQ(hamming_clique(m, 1, 7), whole);
        EXPECT_EQ(hamming_clique(m, 3, 5), whole);
    }
}

TEST(Ordering, DuplicateColumnsHaveZeroDistance) {
    auto m = EdgeBooleanMatrix::from_rows({{1, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    auto q = hamming_clique(m);
    EXPECT_EQ(q.weight(1, 2), 0U);
    EXPECT_EQ(q.weight(0, 1), 2U);
    EXPECT_EQ(q.weight(0, 3), 2U);
}

TEST(Ordering, DrawnTour) {
    auto c = christofides_order(hamming_clique(drawn_matrix()));
    EXPECT_EQ(c.tour, (std::vector<std::uint32_t>{0, 3, 1, 2, 4}));
    EXPECT_EQ(c.tour_weight, 400U);
    EXPECT_EQ(c.forward, ViewOrder({2, 0, 1, 3}));
    EXPECT_EQ(c.backward, ViewOrder({3, 1, 0, 2}));
}

TEST(Ordering, OptimizeDrawnMatrix) {
    auto m = drawn_matrix();
    auto o = optimize_order(m);
    EXPECT_EQ(o, ViewOrder({2, 0, 1, 3}));
    EXPECT_EQ(diff_count(m, o), 260U);
    EXPECT_EQ(diff_count(m, brute_force_order(m)), 260U);
}

TEST(Ordering, SmallCases) {
    auto one = EdgeBooleanMatrix::from_rows({{1}, {0}});
    EXPECT_EQ(optimize_order(one), ViewOrder::identity(1));

    auto two = EdgeBooleanMatrix::from_rows({{1, 0}, {1, 1}});
    auto c = christofides_order(hamming_clique(two));
    EXPECT_EQ(c.forward.size(), 2U);
    EXPECT_EQ(c.backward, c.forward.reversed());
}

TEST(Ordering, ZeroWeightPairIsAdjacent) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t k = 3 + rng() % 3;
        auto m = testutil::random_matrix(rng, k, 40);
        // Duplicate column 0 into column 1.
        std::vector<std::vector<bool>> rows(m.rows(), std::vector<bool>(k));
        for (std::size_t r = 0; r < m.rows(); ++r) {
            for (std::size_t j = 0; j < k; ++j) rows[r][j] = m.get(r, j);
            rows[r][1] = rows[r][0];
        }
        auto dup = EdgeBooleanMatrix::from_rows(rows);
        auto o = optimize_order(dup);
        std::size_t p0 = 0, p1 = 0;
        for (std::size_t t = 0; t < k; ++t) {
            if (o[t] == 0) p0 = t;
            if (o[t] == 1) p1 = t;
        }
        EXPECT_EQ(std::max(p0, p1) - std::min(p0, p1), 1U);
    }
}

TEST(Ordering, BruteForce) {
    auto same = EdgeBooleanMatrix::from_rows({{1, 1, 1}, {0, 0, 0}, {1, 1, 1}});
    EXPECT_EQ(brute_force_order(same), ViewOrder::identity(3));
    EXPECT_EQ(diff_count(same, ViewOrder({2, 1, 0})), 2U);

    std::vector<std::vector<bool>> wide(3, std::vector<bool>(9, true));
    try {
        brute_force_order(EdgeBooleanMatrix::from_rows(wide));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::TooManyViews);
    }
}

TEST(Ordering, RandomOrderIsSeeded) {
    EXPECT_EQ(random_order(10, 7), random_order(10, 7));
    EXPECT_NE(random_order(10, 7), random_order(10, 8));
}

TEST(Ordering, BoundsOnRandomMatrices) {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t k = 2 + rng() % 6;
        auto m = testutil::random_matrix(rng, k, 1 + rng() % 64);
        auto q = hamming_clique(m);
        for (std::size_t a = 0; a < q.size(); ++a)
            for (std::size_t b = 0; b < q.size(); ++b)
                for (std::size_t c = 0; c < q.size(); ++c)
                    ASSERT_LE(q.weight(a, c), q.weight(a, b) + q.weight(b, c));
        auto cand = christofides_order(q);
        EXPECT_LE(2 * cand.tour_weight, 3 * optimal_tour_weight(q));
        auto opt = optimize_order(m);
        EXPECT_EQ(opt, optimize_order(m));
        EXPECT_LE(diff_count(m, opt), 3 * diff_count(m, brute_force_order(m)));
    }
}
