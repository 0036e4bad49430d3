#include <gtest/gtest.h>

#include "noether/error.hpp"
#include "noether/linsolve.hpp"
#include "random_expr.hpp"

using namespace noether;

namespace {

RationalMatrix M(const std::vector<std::vector<long>>& rows) {
    std::vector<RationalVector> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return RationalMatrix::from_rows(r);
}

}  // namespace

TEST(Linsolve, RrefKnown) {
    const auto e = rref(M({{2, 4, 2}, {1, 2, 3}, {3, 6, 5}}));
    ASSERT_EQ(e.rows.size(), 2u);
    EXPECT_EQ(e.pivot_cols, (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(e.rows[0], (RationalVector{1, 2, 0}));
    EXPECT_EQ(e.rows[1], (RationalVector{0, 0, 1}));
}

TEST(Linsolve, NullspaceNormalization) {
    const auto basis = nullspace(M({{1, 2, 0, -1}, {0, 0, 1, 3}}));
    ASSERT_EQ(basis.size(), 2u);
    EXPECT_EQ(basis[0], (RationalVector{-2, 1, 0, 0}));
    EXPECT_EQ(basis[1], (RationalVector{1, 0, -3, 1}));
}

TEST(Linsolve, EmptyAndZeroMatrices) {
    EXPECT_EQ(nullspace(RationalMatrix(0, 3)).size(), 3u);
    EXPECT_EQ(nullspace(RationalMatrix(4, 2)).size(), 2u);
    EXPECT_EQ(rank(RationalMatrix(3, 3)), 0u);
}

TEST(Linsolve, RrefIndependentOfRowOrder) {
    proptest::Gen g(11);
    for (int i = 0; i < 100; ++i) {
        const auto m = g.low_rank_matrix(6, 7, static_cast<std::size_t>(g.uniform(1, 5)));
        RationalMatrix flipped(m.rows(), m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c) flipped(m.rows() - 1 - r, c) = m(r, c);
        EXPECT_EQ(rref(m).rows, rref(flipped).rows);
    }
}

TEST(Linsolve, SolveAndInverse) {
    const auto a = M({{2, 1}, {1, 3}});
    const auto x = solve(a, {Rational(3), Rational(5)});
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(*x, (RationalVector{Rational(4, 5), Rational(7, 5)}));
    EXPECT_FALSE(solve(M({{1, 1}, {2, 2}}), {Rational(1), Rational(3)}).has_value());
    const auto inv = inverse(a);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ((*inv)(0, 0), Rational(3, 5));
    EXPECT_EQ((*inv)(0, 1), Rational(-1, 5));
    EXPECT_FALSE(inverse(M({{1, 2}, {2, 4}})).has_value());
    EXPECT_THROW(inverse(RationalMatrix(2, 3)), Error);
}

TEST(Linsolve, LargeEntriesStayExact) {
    // Hilbert matrix: nonsingular with wildly varying entries.
    const std::size_t n = 8;
    RationalMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = Rational(1, static_cast<long>(i + j + 1));
    EXPECT_EQ(rank(h), n);
    const auto inv = inverse(h);
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ((*inv)(0, 0), Rational(64));
}
