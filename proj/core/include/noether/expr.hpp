#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "noether/rational.hpp"

namespace noether {

inline constexpr int kDefaultOrderCap = 8;

/// x_coord^(order); order 0 is the coordinate itself.
struct JetVar {
    int coord = 0;
    int order = 0;

    friend auto operator<=>(const JetVar&, const JetVar&) = default;
};

/// Rational linear form a*t + sum_i b_i*x_i over time and the order-0
/// coordinates. Used as the argument of sin, cos and exp factors.
class LinearArg {
public:
    static constexpr int kTime = -1;

    LinearArg() = default;
    static LinearArg time(const Rational& frequency);
    static LinearArg coordinate(int coord, const Rational& coefficient);

    bool empty() const { return coeffs_.empty(); }
    const std::vector<std::pair<int, Rational>>& coeffs() const { return coeffs_; }
    Rational coefficient(int slot) const;
    bool involves_coordinates() const;
    /// Frequency when the form is exactly omega*t.
    std::optional<Rational> time_frequency() const;
    bool leading_negative() const { return !coeffs_.empty() && coeffs_.front().second.sign() < 0; }

    LinearArg operator+(const LinearArg& o) const;
    LinearArg operator-(const LinearArg& o) const;
    LinearArg operator-() const;
    LinearArg scaled(const Rational& factor) const;

    friend bool operator==(const LinearArg&, const LinearArg&) = default;
    friend std::strong_ordering operator<=>(const LinearArg& a, const LinearArg& b);

private:
    void add(int slot, const Rational& c);
    std::vector<std::pair<int, Rational>> coeffs_;  // sorted by slot, no zeros
};

enum class TrigKind : std::uint8_t { None = 0, Sin = 1, Cos = 2 };

/// Canonical monomial: t^p * prod x_i^(k)^e * exp(a) * {1 | sin(b) | cos(b)}.
/// Invariants: jets sorted with nonzero exponents; trig_arg has a positive
/// leading coefficient; empty args mean the factor is absent.
struct Monomial {
    Rational t_power;
    std::vector<std::pair<JetVar, Rational>> jets;
    LinearArg exp_arg;
    TrigKind trig = TrigKind::None;
    LinearArg trig_arg;

    Rational exponent_of(JetVar v) const;
    Rational total_jet_degree() const;
    bool is_one() const;
    bool has_trans() const { return !exp_arg.empty() || trig != TrigKind::None; }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Total order used for canonical term lists: total jet degree descending,
/// then jets lexicographically, then t power, then transcendental factors.
int compare(const Monomial& a, const Monomial& b);

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

struct Term {
    Rational coeff;
    Monomial mono;

    friend bool operator==(const Term&, const Term&) = default;
};

/// Immutable symbolic expression in canonical form: a sorted sum of terms
/// with distinct monomials and nonzero coefficients. Structural equality is
/// mathematical equality within the representable class.
class Expr {
public:
    Expr() = default;
    Expr(const Rational& c);  // NOLINT: constants convert implicitly
    Expr(long c) : Expr(Rational(c)) {}  // NOLINT

    static Expr time();
    static Expr jet(JetVar v);
    static Expr var(int coord, int order = 0) { return jet({coord, order}); }
    static Expr sin(const LinearArg& arg);
    static Expr cos(const LinearArg& arg);
    static Expr exp(const LinearArg& arg);
    static Expr term(const Rational& coeff, Monomial mono);
    /// Canonicalizes an arbitrary term list (merges duplicates, drops zeros).
    static Expr from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    std::optional<Rational> constant_value() const;
    bool is_constant() const { return constant_value().has_value(); }
    Rational coefficient_of(const Monomial& m) const;

    /// Highest derivative order present (-1 for no jet variables).
    int max_order() const;
    int max_order_of(int coord) const;
    std::set<JetVar> jet_vars() const;
    bool depends_on_time() const;

    Expr operator-() const;
    Expr scaled(const Rational& factor) const;
    Expr pow(const Rational& exponent) const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }

    friend bool operator==(const Expr&, const Expr&) = default;

private:
    std::vector<Term> terms_;
};

inline Expr add(const Expr& a, const Expr& b) { return a + b; }
inline Expr mul(const Expr& a, const Expr& b) { return a * b; }
inline Expr neg(const Expr& a) { return -a; }
inline Expr pow(const Expr& a, const Rational& e) { return a.pow(e); }

using JetValues = std::map<JetVar, double>;

/// IEEE evaluation. Throws Error(UnboundJetVar) for a missing jet value and
/// Error(DomainError) for negative bases under fractional powers or zero
/// under negative powers.
double eval_numeric(const Expr& e, double t, const JetValues& jet);

/// Evaluates a real power with the same domain rules as eval_numeric.
double real_pow(double base, const Rational& exponent);

}  // namespace noether
