#include "noether/rational.hpp"

#include <cctype>

#include "noether/error.hpp"

namespace noether {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorKind::NonRationalExponent: return "NonRationalExponent";
        case ErrorKind::NonlinearTransArgument: return "NonlinearTransArgument";
        case ErrorKind::NonMonomialFractionalPower: return "NonMonomialFractionalPower";
        case ErrorKind::UnboundJetVar: return "UnboundJetVar";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::VerificationFailure: return "VerificationFailure";
        case ErrorKind::DegenerateLeadingCoefficient: return "DegenerateLeadingCoefficient";
        case ErrorKind::NotReducible: return "NotReducible";
        case ErrorKind::NonInvertibleTimeFactor: return "NonInvertibleTimeFactor";
        case ErrorKind::SubstitutionDomainError: return "SubstitutionDomainError";
        case ErrorKind::InputError: return "InputError";
    }
    return "Error";
}

Rational::Rational(long numerator, long denominator) {
    if (denominator == 0) throw Error(ErrorKind::DomainError, "zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw Error(ErrorKind::DomainError, "zero denominator");
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
}

Rational::Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

namespace {

mpz_class parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw Error(ErrorKind::SyntaxError, "expected integer in '" + std::string(whole) + "'");
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw Error(ErrorKind::SyntaxError, "invalid rational '" + std::string(whole) + "'");
        }
    }
    return mpz_class(std::string(digits), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    mpz_class num;
    mpz_class den = 1;
    if (slash == std::string_view::npos) {
        num = parse_integer(s, text);
    } else {
        num = parse_integer(s.substr(0, slash), text);
        den = parse_integer(s.substr(slash + 1), text);
    }
    if (negative) num = -num;
    return Rational(num, den);
}

long Rational::to_long() const { return value_.get_num().get_si(); }

double Rational::to_double() const {
    // mpq get_d truncates; a quotient of two exact doubles rounds correctly.
    if (mpz_sizeinbase(value_.get_num_mpz_t(), 2) <= 53 && mpz_sizeinbase(value_.get_den_mpz_t(), 2) <= 53) {
        return value_.get_num().get_d() / value_.get_den().get_d();
    }
    return value_.get_d();
}

Rational Rational::abs() const { return Rational(mpq_class(::abs(value_))); }

Rational Rational::reciprocal() const {
    if (is_zero()) throw Error(ErrorKind::DomainError, "reciprocal of zero");
    return Rational(mpq_class(1) / value_);
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) return reciprocal().pow(-exponent);
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(num, den);
}

std::optional<Rational> Rational::pow(const Rational& exponent) const {
    if (exponent.is_integer()) {
        if (is_zero() && exponent.sign() < 0) return std::nullopt;
        return pow(exponent.to_long());
    }
    if (sign() < 0) return std::nullopt;
    if (is_zero()) {
        if (exponent.sign() < 0) return std::nullopt;
        return Rational(0);
    }
    const unsigned long root_degree = exponent.denominator().get_ui();
    const Rational powered = pow(exponent.numerator().get_si());
    mpz_class num_root;
    mpz_class den_root;
    if (mpz_root(num_root.get_mpz_t(), powered.value_.get_num_mpz_t(), root_degree) == 0) return std::nullopt;
    if (mpz_root(den_root.get_mpz_t(), powered.value_.get_den_mpz_t(), root_degree) == 0) return std::nullopt;
    return Rational(num_root, den_root);
}

std::string Rational::str() const { return value_.get_str(10); }

Rational& Rational::operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw Error(ErrorKind::DomainError, "division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace noether
