#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tilt/exactlin.hpp"

using tilt::Matrix;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, tilt::Elem p) {
    Matrix m(r, c, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, static_cast<long long>(rng() % p));
    return m;
}

}  // namespace

TEST(ExactLin, RejectsCompositeModulus) {
    EXPECT_THROW(Matrix(2, 2, 4), std::invalid_argument);
    EXPECT_NO_THROW(Matrix(2, 2, 3));
}

TEST(ExactLin, ArithmeticReducesModP) {
    auto a = Matrix::from_rows({{1, 2}, {3, 4}}, 5);
    auto b = Matrix::from_rows({{4, 4}, {4, 4}}, 5);
    EXPECT_EQ(a + b, Matrix::from_rows({{0, 1}, {2, 3}}, 5));
    EXPECT_EQ(a - b, Matrix::from_rows({{2, 3}, {4, 0}}, 5));
    EXPECT_EQ(a * Matrix::identity(2, 5), a);
    EXPECT_EQ(a * b, Matrix::from_rows({{2, 2}, {3, 3}}, 5));
    EXPECT_EQ(Matrix::from_rows({{-1}}, 3)(0, 0), 2u);
}

TEST(ExactLin, RankOverF2DiffersFromRationals) {
    // rank 3 over Q, 2 over F_2
    auto m = Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 2);
    EXPECT_EQ(tilt::rank(m), 2u);
    EXPECT_EQ(tilt::rank(Matrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 3)), 3u);
}

TEST(ExactLin, RankMatchesKernelCount) {
    std::mt19937 rng(11);
    for (tilt::Elem p : {2u, 3u, 5u})
        for (int trial = 0; trial < 30; ++trial) {
            auto m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 5, p);
            EXPECT_EQ(tilt::rank(m), oracle::rank_by_counting(m)) << m.str();
        }
}

TEST(ExactLin, NullspaceIsAKernelBasis) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = random_matrix(rng, 3, 5, 3);
        auto n = tilt::nullspace(m);
        EXPECT_EQ(n.cols(), 5 - tilt::rank(m));
        EXPECT_TRUE((m * n).is_zero());
        EXPECT_EQ(tilt::rank(n), n.cols());
    }
}

TEST(ExactLin, SolveFindsOrRefuses) {
    auto a = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}}, 2);
    auto b = Matrix::column_vector({1, 1, 0}, 2);
    auto x = tilt::solve(a, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(a * *x, b);
    EXPECT_FALSE(tilt::solve(a, Matrix::column_vector({1, 1, 1}, 2)).has_value());
}

TEST(ExactLin, ComplementColumnsCompletesABasis) {
    auto sub = Matrix::from_rows({{1}, {1}, {0}}, 2);
    auto c = tilt::complement_columns(sub, Matrix::identity(3, 2));
    EXPECT_EQ(c.cols(), 2u);
    EXPECT_EQ(tilt::rank(hstack(sub, c)), 3u);
}

TEST(ExactLin, SpanKeyIdentifiesEqualSpans) {
    auto a = Matrix::from_rows({{1, 0}, {0, 1}, {1, 1}}, 2);
    auto b = Matrix::from_rows({{1, 1}, {1, 0}, {0, 1}}, 2);
    EXPECT_EQ(tilt::span_key(a), tilt::span_key(b));
    EXPECT_NE(tilt::span_key(a), tilt::span_key(Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}}, 2)));
}

TEST(ExactLin, BlocksAndStacks) {
    auto a = Matrix::from_rows({{1, 2}}, 5);
    auto b = Matrix::from_rows({{3}}, 5);
    auto d = direct_sum(a, b);
    EXPECT_EQ(d, Matrix::from_rows({{1, 2, 0}, {0, 0, 3}}, 5));
    EXPECT_EQ(d.block(1, 2, 1, 1), b);
    EXPECT_EQ(vstack(a, a).rows(), 2u);
    EXPECT_EQ(d.transpose().rows(), 3u);
}
