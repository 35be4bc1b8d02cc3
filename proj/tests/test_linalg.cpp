#include <gtest/gtest.h>

#include "support.hpp"

using namespace pa;
using namespace pa::testing;

TEST(Norms, AbsIsLargestMagnitude) {
    EXPECT_EQ(norm_abs(Vec{0, 0, 0}), 0.0);
    EXPECT_DOUBLE_EQ(norm_abs(Vec{0.2, -0.8}), 0.8);
    EXPECT_DOUBLE_EQ(norm_abs(Matrix{{1, -2}, {0.5, 0}}), 2.0);
    EXPECT_THROW(norm_abs(Vec{}), std::invalid_argument);
}

TEST(Norms, SpreadIsMaxMinusMin) {
    EXPECT_EQ(norm_spread(Vec{0.3, 0.3, 0.3}), 0.0);
    EXPECT_NEAR(norm_spread(Vec{0.2, 0.8}), 0.6, 1e-15);
    EXPECT_EQ(norm_spread(Matrix::identity(2)), 1.0);
    EXPECT_THROW(norm_spread(Matrix{}), std::invalid_argument);
}

TEST(Kron, Blocks) {
    EXPECT_EQ(kron(Matrix{{1, 2}}, Matrix{{0, 1}}), (Matrix{{0, 1, 0, 2}}));
    EXPECT_EQ(kron(Matrix::identity(2), Matrix::identity(2)), Matrix::identity(4));
    const Matrix b{{1, -3}, {0.5, 2}};
    EXPECT_EQ(kron(Matrix{{2}}, b), 2.0 * b);
}

TEST(Inverse, RoundTripAndSingular) {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = random_matrix(rng, 4, 4) + 3.0 * Matrix::identity(4);
        EXPECT_LT(norm_abs(a * inverse(a) - Matrix::identity(4)), 1e-12);
    }
    EXPECT_THROW(inverse(Matrix{{1, 2}, {2, 4}}), std::domain_error);
    EXPECT_EQ(rank(Matrix{{1, 2}, {2, 4}}), 1u);
    EXPECT_EQ(rank(Matrix::identity(3)), 3u);
}

TEST(Patterns, SupportAndProduct) {
    const auto p = bool_pattern(Matrix{{0.5, 0}, {0, 0.5}});
    EXPECT_EQ(p, BoolPattern::identity(2));
    const auto q = bool_pattern(Matrix{{0, 1}, {0.3, 0.7}});
    EXPECT_EQ(bool_mul(BoolPattern::identity(2), q), q);

    Rng rng(2);
    for (int t = 0; t < 50; ++t) {
        const Matrix a = random_stochastic(rng, 3, 3, 0.5), b = random_stochastic(rng, 3, 3, 0.5);
        EXPECT_EQ(bool_pattern(a * b), bool_mul(bool_pattern(a), bool_pattern(b)));
    }
}

TEST(Patterns, Primitivity) {
    EXPECT_TRUE(is_primitive(bool_pattern(Matrix{{0, 1}, {1, 1}})));
    EXPECT_FALSE(is_primitive(BoolPattern::identity(2)));
    EXPECT_TRUE(is_primitive(BoolPattern(3, 3, true)));
    EXPECT_FALSE(is_primitive(bool_pattern(Matrix{{0, 1}, {1, 0}})));
    EXPECT_THROW(is_primitive(BoolPattern(2, 3)), std::invalid_argument);
}

TEST(SubspaceTracking, GrowsOnlyOnNewDirections) {
    Subspace s(2);
    EXPECT_TRUE(subspace_try_add(s, {1, 0}));
    EXPECT_FALSE(subspace_try_add(s, {2, 0}));
    EXPECT_TRUE(subspace_try_add(s, {1, 1}));
    EXPECT_FALSE(subspace_try_add(s, {0.3, -7}));
    EXPECT_EQ(s.size(), 2u);
    EXPECT_THROW(s.try_add({1, 2, 3}), std::invalid_argument);
}

TEST(SubspaceTracking, BasisStaysOrthonormal) {
    Rng rng(3);
    Subspace s(5);
    for (int t = 0; t < 40; ++t) s.try_add(random_vec(rng, 5));
    ASSERT_EQ(s.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            EXPECT_NEAR(dot(s.basis()[i], s.basis()[j]), i == j ? 1.0 : 0.0, 1e-9);
}

TEST(Simplex, SmallProblems) {
    LpProblem p{{0, 1}, Matrix{{1, 1}}, {1}};
    auto s = lp_solve(p);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, 0.0, 1e-12);
    EXPECT_NEAR(s.point[0], 1.0, 1e-12);
    EXPECT_NEAR(s.point[1], 0.0, 1e-12);

    EXPECT_EQ(lp_solve({{0}, Matrix{{1}}, {-1}}).status, LpStatus::Infeasible);
    EXPECT_EQ(lp_solve({{-1, 0}, Matrix{{1, -1}}, {0}}).status, LpStatus::Unbounded);
}

TEST(Simplex, DegenerateRedundantRows) {
    // x1 + x2 = 1 twice, x1 - x2 = 0; min x1
    LpProblem p{{1, 0}, Matrix{{1, 1}, {1, 1}, {1, -1}}, {1, 1, 0}};
    const auto s = lp_solve(p);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(s.objective, 0.5, 1e-12);
}

TEST(Simplex, ConvexLpOnThreeRowInstanceAgreesWithGrid) {
    // averaged basis rows of the three-state instance: lambda = (0, 1, 0.5), identity moves
    const Matrix rows{{0.0}, {1.0}, {0.5}};
    const auto c = find_convex_row(rows);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(c->state, 2u);
    EXPECT_LT(convex_residual(rows, *c), 1e-9);
    EXPECT_LT(grid_convex_residual(rows, 2), 1e-12);
}

TEST(StochasticLaws, ProductsAndNormInequalities) {
    Rng rng(4);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = pick_count(rng, 2, 5);
        const Matrix a = random_stochastic(rng, n, n), b = random_stochastic(rng, n, n);
        EXPECT_TRUE(is_stochastic(a * b, Tolerances{1e-12, 2e-9}));

        const Vec lam = random_vec(rng, n);
        const double c = min_entry(a);
        EXPECT_LE(norm_spread(a * lam), (1.0 - 2.0 * c) * norm_spread(lam) + 1e-12);

        const Matrix col = random_matrix(rng, n, 2);
        EXPECT_LE(norm_abs(a * col - col), norm_spread(col) + 1e-12);
        EXPECT_LE(norm_abs(a * col - b * col), norm_spread(col) + 1e-12);
    }
}

TEST(Distributions, Tolerances) {
    EXPECT_TRUE(is_distribution({0.5, 0.5}));
    EXPECT_TRUE(is_distribution({1.0 - 1e-10, 0.0}));
    EXPECT_FALSE(is_distribution({0.6, 0.5}));
    EXPECT_FALSE(is_distribution({1.1, -0.1}));
    EXPECT_TRUE(is_stochastic(Matrix{{0.2, 0.8}, {1, 0}}));
}
