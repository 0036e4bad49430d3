#pragma once

#include <string>
#include <vector>

#include "noether/rational.hpp"

namespace noether {

/// Dense univariate polynomial with rational coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial monomial(const Rational& c, int degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int k) const;
    Rational eval(const Rational& x) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    /// Quotient and remainder of polynomial division (divisor nonzero).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;

    std::string str(const std::string& var = "r") const;

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

/// Distinct rational roots (rational root theorem). Zero polynomials have no
/// reported roots; integer coefficients larger than ~1e12 are not factored.
std::vector<Rational> rational_roots(const Polynomial& p);

/// Determinant of a small square matrix of polynomials (Laplace expansion).
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);

}  // namespace noether
