#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "noether/expr.hpp"
#include "noether/linsolve.hpp"

namespace noether::proptest {

struct ExprShape {
    int n_coords = 1;
    int max_order = 2;
    int max_terms = 4;
    bool transcendental = true;  // sin/cos/exp(omega t) factors
    bool coordinate_args = false;  // sin/cos/exp of a coordinate
    bool fractional = true;  // x^(1/2), x^-1 on order-0 jets
};

/// Seeded generator of random expressions, rationals and matrices. Fractional
/// and negative powers only touch order-0 jets, so every jet value in
/// [0.5, 1.5] lies in the real domain.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    Rational rational(int max_num = 5, int max_den = 3) {
        int num = 0;
        while (num == 0) num = uniform(-max_num, max_num);
        return Rational(num, uniform(1, max_den));
    }

    Expr factor(const ExprShape& s) {
        const int c = uniform(0, s.n_coords - 1);
        const int k = uniform(0, s.max_order);
        Rational e = uniform(1, 2);
        if (k == 0 && s.fractional && coin(0.25)) e = coin() ? Rational(1, 2) : Rational(-1);
        return Expr::var(c, k).pow(e);
    }

    Expr monomial(const ExprShape& s) {
        Expr m = rational();
        const int n = uniform(0, 3);
        for (int i = 0; i < n; ++i) m *= factor(s);
        if (coin(0.4)) m *= Expr::time().pow(Rational(uniform(1, 2)));
        if (s.transcendental && coin(0.3)) {
            const LinearArg arg = s.coordinate_args && coin(0.3)
                                      ? LinearArg::coordinate(uniform(0, s.n_coords - 1), Rational(uniform(1, 2)))
                                      : LinearArg::time(rational(2, 2));
            switch (uniform(0, 2)) {
                case 0: m *= Expr::sin(arg); break;
                case 1: m *= Expr::cos(arg); break;
                default: m *= Expr::exp(arg); break;
            }
        }
        return m;
    }

    Expr expr(const ExprShape& s) {
        Expr e;
        const int n = uniform(1, s.max_terms);
        for (int i = 0; i < n; ++i) e += monomial(s);
        return e;
    }

    JetValues jets(int n_coords, int max_order) {
        JetValues v;
        for (int c = 0; c < n_coords; ++c) {
            for (int k = 0; k <= max_order; ++k) v[{c, k}] = real(0.5, 1.5);
        }
        return v;
    }

    /// rows x cols integer matrix of rank at most r (product of two factors).
    RationalMatrix low_rank_matrix(std::size_t rows, std::size_t cols, std::size_t r) {
        RationalMatrix a(rows, r), b(r, cols), m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < r; ++j) a(i, j) = Rational(uniform(-3, 3), uniform(1, 2));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < cols; ++j) b(i, j) = Rational(uniform(-3, 3));
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j)
                for (std::size_t k = 0; k < r; ++k) m(i, j) += a(i, k) * b(k, j);
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Fraction Gauss-Jordan with first-nonzero pivoting. Independent of the
/// Bareiss path in linsolve.
inline std::size_t oracle_rank(RationalMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            const Rational f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace noether::proptest
