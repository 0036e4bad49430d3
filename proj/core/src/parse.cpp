#include "noether/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "noether/error.hpp"

namespace noether {

namespace {

constexpr int kMaxPrimes = 6;

bool is_reserved(std::string_view name) {
    return name == "t" || name == "D" || name == "sin" || name == "cos" || name == "exp";
}

class Parser {
public:
    Parser(std::string_view text, const std::vector<std::string>& coords, const ParameterMap& params)
        : text_(text), coords_(coords), params_(params) {}

    Expr run() {
        skip_space();
        if (at_end()) fail_syntax("expression");
        Expr e = expr();
        skip_space();
        if (!at_end()) fail_syntax("operator or end of input");
        return e;
    }

private:
    Expr expr() {
        Expr acc = term();
        for (;;) {
            skip_space();
            if (accept('+')) {
                acc = acc + term();
            } else if (accept('-')) {
                acc = acc - term();
            } else {
                return acc;
            }
        }
    }

    Expr term() {
        Expr acc = unary();
        for (;;) {
            skip_space();
            if (accept('*')) {
                acc = acc * unary();
            } else if (peek() == '/') {
                const std::size_t at = pos_;
                ++pos_;
                Expr divisor = unary();
                if (divisor.is_zero()) fail(ErrorKind::DomainError, at, "division by zero");
                if (!divisor.is_monomial()) {
                    fail(ErrorKind::NonMonomialFractionalPower, at, "division by a sum is not representable");
                }
                acc = acc * divisor.pow(Rational(-1));
            } else {
                return acc;
            }
        }
    }

    Expr unary() {
        skip_space();
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        Expr b = base();
        skip_space();
        if (accept('^')) {
            const std::size_t at = pos_;
            const Rational e = exponent();
            try {
                return b.pow(e);
            } catch (const Error& err) {
                fail(err.kind(), at, err.detail());
            }
        }
        return b;
    }

    Rational exponent() {
        skip_space();
        const std::size_t at = pos_;
        if (accept('-')) return -exponent();
        if (accept('+')) return exponent();
        if (std::isdigit(static_cast<unsigned char>(peek()))) return Rational(integer(), 1);
        Expr e;
        if (accept('(')) {
            e = expr();
            expect(')');
        } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            const std::string name = identifier();
            auto it = params_.find(name);
            if (it == params_.end()) fail(ErrorKind::NonRationalExponent, at, "exponent '" + name + "' is not a parameter");
            return it->second;
        } else {
            fail_syntax("exponent");
        }
        auto value = e.constant_value();
        if (!value) fail(ErrorKind::NonRationalExponent, at, "exponent must be a rational constant");
        return *value;
    }

    Expr base() {
        skip_space();
        const std::size_t at = pos_;
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr(Rational(integer(), 1));
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail_syntax("operand");

        const std::string name = identifier();
        if (name == "t") {
            if (peek() == '\'') fail(ErrorKind::SyntaxError, pos_, "time cannot carry primes");
            return Expr::time();
        }
        if (name == "sin" || name == "cos" || name == "exp") {
            skip_space();
            expect('(');
            const std::size_t arg_at = pos_;
            Expr arg = expr();
            expect(')');
            auto lin = as_linear_arg(arg);
            if (!lin) {
                fail(ErrorKind::NonlinearTransArgument, arg_at,
                     name + " argument must be a rational linear combination of t and coordinates");
            }
            if (name == "sin") return Expr::sin(*lin);
            if (name == "cos") return Expr::cos(*lin);
            return Expr::exp(*lin);
        }
        if (name == "D") {
            skip_space();
            expect('(');
            skip_space();
            const std::size_t id_at = pos_;
            const std::string coord = identifier();
            const int index = coordinate_index(coord, id_at);
            skip_space();
            expect(',');
            skip_space();
            const long order = integer();
            skip_space();
            expect(')');
            return Expr::var(index, static_cast<int>(order));
        }

        int primes = 0;
        while (accept('\'')) ++primes;
        auto pit = params_.find(name);
        if (std::find(coords_.begin(), coords_.end(), name) == coords_.end() && pit != params_.end()) {
            if (primes > 0) fail(ErrorKind::SyntaxError, at, "parameter '" + name + "' cannot carry primes");
            return Expr(pit->second);
        }
        const int index = coordinate_index(name, at);
        if (primes > kMaxPrimes) fail(ErrorKind::SyntaxError, at, "more than 6 primes; use D(" + name + ",k)");
        return Expr::var(index, primes);
    }

    int coordinate_index(const std::string& name, std::size_t at) {
        auto it = std::find(coords_.begin(), coords_.end(), name);
        if (it == coords_.end()) fail(ErrorKind::UnknownIdentifier, at, "unknown identifier '" + name + "'");
        return static_cast<int>(it - coords_.begin());
    }

    std::string identifier() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        if (start == pos_) fail_syntax("identifier");
        return std::string(text_.substr(start, pos_ - start));
    }

    long integer() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail_syntax("integer");
        if (pos_ - start > 18) fail(ErrorKind::SyntaxError, start, "integer literal too long");
        return std::stol(std::string(text_.substr(start, pos_ - start)));
    }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        skip_space();
        if (!accept(c)) fail_syntax(std::string("'") + c + "'");
    }

    [[noreturn]] void fail_syntax(const std::string& expected) {
        const std::string found = at_end() ? "end of input" : std::string("'") + peek() + "'";
        fail(ErrorKind::SyntaxError, pos_, "expected " + expected + ", found " + found);
    }

    [[noreturn]] void fail(ErrorKind kind, std::size_t at, const std::string& what) {
        std::ostringstream os;
        os << "at position " << at << " in \"" << text_ << "\": " << what;
        throw Error(kind, os.str());
    }

    std::string_view text_;
    const std::vector<std::string>& coords_;
    const ParameterMap& params_;
    std::size_t pos_ = 0;
};

std::string rational_text(const Rational& r) { return r.str(); }

std::string exponent_suffix(const Rational& e) {
    if (e.is_one()) return "";
    if (e.is_integer() && e.sign() > 0) return "^" + e.str();
    return "^(" + e.str() + ")";
}

std::string jet_name(JetVar v, const std::vector<std::string>& coords) {
    const std::string name = coordinate_name(v.coord, coords);
    if (v.order == 0) return name;
    return "D(" + name + "," + std::to_string(v.order) + ")";
}

}  // namespace

std::string coordinate_name(int coord, const std::vector<std::string>& coords) {
    if (coord >= 0 && static_cast<std::size_t>(coord) < coords.size()) return coords[coord];
    static const char* const kDefaults[] = {"x", "y", "z"};
    if (coords.empty() && coord >= 0 && coord < 3) return kDefaults[coord];
    return "q" + std::to_string(coord);
}

Expr parse(std::string_view text, const std::vector<std::string>& coords, const ParameterMap& params) {
    for (const auto& c : coords) {
        if (is_reserved(c)) throw Error(ErrorKind::InputError, "'" + c + "' is reserved and cannot name a coordinate");
    }
    return Parser(text, coords, params).run();
}

std::optional<LinearArg> as_linear_arg(const Expr& e) {
    LinearArg arg;
    for (const auto& t : e.terms()) {
        const Monomial& m = t.mono;
        if (m.has_trans()) return std::nullopt;
        if (m.jets.empty() && m.t_power.is_one()) {
            arg = arg + LinearArg::time(t.coeff);
        } else if (m.t_power.is_zero() && m.jets.size() == 1 && m.jets.front().first.order == 0 &&
                   m.jets.front().second.is_one()) {
            arg = arg + LinearArg::coordinate(m.jets.front().first.coord, t.coeff);
        } else {
            return std::nullopt;
        }
    }
    return arg;
}

std::string print(const LinearArg& arg, const std::vector<std::string>& coords) {
    if (arg.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [slot, c] : arg.coeffs()) {
        const std::string sym = slot == LinearArg::kTime ? "t" : coordinate_name(slot, coords);
        const Rational mag = c.abs();
        if (first) {
            if (c.sign() < 0) out += "-";
        } else {
            out += c.sign() < 0 ? " - " : " + ";
        }
        if (!mag.is_one()) out += rational_text(mag) + "*";
        out += sym;
        first = false;
    }
    return out;
}

std::string print(const Expr& e, const std::vector<std::string>& coords) {
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& term : e.terms()) {
        const Monomial& m = term.mono;
        const Rational mag = term.coeff.abs();
        if (first) {
            if (term.coeff.sign() < 0) out += "-";
        } else {
            out += term.coeff.sign() < 0 ? " - " : " + ";
        }
        first = false;

        std::vector<std::string> factors;
        if (!m.t_power.is_zero()) factors.push_back("t" + exponent_suffix(m.t_power));
        for (const auto& [v, ex] : m.jets) factors.push_back(jet_name(v, coords) + exponent_suffix(ex));
        if (!m.exp_arg.empty()) factors.push_back("exp(" + print(m.exp_arg, coords) + ")");
        if (m.trig == TrigKind::Sin) factors.push_back("sin(" + print(m.trig_arg, coords) + ")");
        if (m.trig == TrigKind::Cos) factors.push_back("cos(" + print(m.trig_arg, coords) + ")");

        if (factors.empty()) {
            out += rational_text(mag);
            continue;
        }
        if (!mag.is_one()) out += rational_text(mag) + "*";
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i > 0) out += "*";
            out += factors[i];
        }
    }
    return out;
}

}  // namespace noether
