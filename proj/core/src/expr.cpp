#include "noether/expr.hpp"

#include <algorithm>
#include <cmath>

#include "noether/error.hpp"

namespace noether {

// ---------------------------------------------------------------- LinearArg

LinearArg LinearArg::time(const Rational& frequency) {
    LinearArg a;
    a.add(kTime, frequency);
    return a;
}

LinearArg LinearArg::coordinate(int coord, const Rational& coefficient) {
    LinearArg a;
    a.add(coord, coefficient);
    return a;
}

void LinearArg::add(int slot, const Rational& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(coeffs_.begin(), coeffs_.end(), slot,
                               [](const auto& p, int s) { return p.first < s; });
    if (it != coeffs_.end() && it->first == slot) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    } else {
        coeffs_.insert(it, {slot, c});
    }
}

Rational LinearArg::coefficient(int slot) const {
    for (const auto& [s, c] : coeffs_) {
        if (s == slot) return c;
    }
    return Rational(0);
}

bool LinearArg::involves_coordinates() const {
    return std::any_of(coeffs_.begin(), coeffs_.end(), [](const auto& p) { return p.first != kTime; });
}

std::optional<Rational> LinearArg::time_frequency() const {
    if (coeffs_.size() == 1 && coeffs_.front().first == kTime) return coeffs_.front().second;
    return std::nullopt;
}

LinearArg LinearArg::operator+(const LinearArg& o) const {
    LinearArg r = *this;
    for (const auto& [s, c] : o.coeffs_) r.add(s, c);
    return r;
}

LinearArg LinearArg::operator-(const LinearArg& o) const { return *this + (-o); }

LinearArg LinearArg::operator-() const { return scaled(Rational(-1)); }

LinearArg LinearArg::scaled(const Rational& factor) const {
    LinearArg r;
    if (factor.is_zero()) return r;
    r.coeffs_ = coeffs_;
    for (auto& [s, c] : r.coeffs_) c *= factor;
    return r;
}

std::strong_ordering operator<=>(const LinearArg& a, const LinearArg& b) {
    const std::size_t n = std::min(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.coeffs_[i].first <=> b.coeffs_[i].first; c != 0) return c;
        if (auto c = a.coeffs_[i].second <=> b.coeffs_[i].second; c != 0) return c;
    }
    return a.coeffs_.size() <=> b.coeffs_.size();
}

// ----------------------------------------------------------------- Monomial

Rational Monomial::exponent_of(JetVar v) const {
    for (const auto& [var, e] : jets) {
        if (var == v) return e;
    }
    return Rational(0);
}

Rational Monomial::total_jet_degree() const {
    Rational d;
    for (const auto& [var, e] : jets) d += e;
    return d;
}

bool Monomial::is_one() const { return t_power.is_zero() && jets.empty() && !has_trans(); }

int compare(const Monomial& a, const Monomial& b) {
    const Rational da = a.total_jet_degree();
    const Rational db = b.total_jet_degree();
    if (da != db) return da > db ? -1 : 1;
    const std::size_t n = std::min(a.jets.size(), b.jets.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.jets[i].first != b.jets[i].first) return a.jets[i].first < b.jets[i].first ? -1 : 1;
        if (a.jets[i].second != b.jets[i].second) return a.jets[i].second < b.jets[i].second ? -1 : 1;
    }
    if (a.jets.size() != b.jets.size()) return a.jets.size() < b.jets.size() ? -1 : 1;
    if (a.t_power != b.t_power) return a.t_power < b.t_power ? -1 : 1;
    if (auto c = a.exp_arg <=> b.exp_arg; c != 0) return c < 0 ? -1 : 1;
    if (a.trig != b.trig) return a.trig < b.trig ? -1 : 1;
    if (auto c = a.trig_arg <=> b.trig_arg; c != 0) return c < 0 ? -1 : 1;
    return 0;
}

namespace {

// Returns false when the term vanishes (sin 0).
bool normalize_trig(Rational& coeff, Monomial& m) {
    if (m.trig == TrigKind::None) {
        m.trig_arg = LinearArg();
        return true;
    }
    if (m.trig_arg.empty()) {
        if (m.trig == TrigKind::Sin) return false;
        m.trig = TrigKind::None;
        return true;
    }
    if (m.trig_arg.leading_negative()) {
        m.trig_arg = -m.trig_arg;
        if (m.trig == TrigKind::Sin) coeff = -coeff;
    }
    return true;
}

std::vector<std::pair<JetVar, Rational>> merge_jets(const std::vector<std::pair<JetVar, Rational>>& a,
                                                    const std::vector<std::pair<JetVar, Rational>>& b) {
    std::vector<std::pair<JetVar, Rational>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            Rational e = a[i].second + b[j].second;
            if (!e.is_zero()) out.emplace_back(a[i].first, std::move(e));
            ++i;
            ++j;
        }
    }
    return out;
}

void push_normalized(Rational coeff, Monomial m, std::vector<Term>& out) {
    if (coeff.is_zero()) return;
    if (!normalize_trig(coeff, m)) return;
    out.push_back({std::move(coeff), std::move(m)});
}

// Product of two terms; sin/cos pairs are rewritten by product-to-sum so the
// result carries at most one trigonometric factor.
void multiply_into(const Term& a, const Term& b, std::vector<Term>& out) {
    Monomial base;
    base.t_power = a.mono.t_power + b.mono.t_power;
    base.jets = merge_jets(a.mono.jets, b.mono.jets);
    base.exp_arg = a.mono.exp_arg + b.mono.exp_arg;
    Rational coeff = a.coeff * b.coeff;

    const TrigKind ka = a.mono.trig;
    const TrigKind kb = b.mono.trig;
    if (ka == TrigKind::None || kb == TrigKind::None) {
        const Monomial& src = (ka == TrigKind::None) ? b.mono : a.mono;
        base.trig = src.trig;
        base.trig_arg = src.trig_arg;
        push_normalized(std::move(coeff), std::move(base), out);
        return;
    }

    const Rational half = coeff * Rational(1, 2);
    const LinearArg sum = a.mono.trig_arg + b.mono.trig_arg;
    Monomial m1 = base;
    Monomial m2 = base;
    if (ka == TrigKind::Sin && kb == TrigKind::Sin) {
        // sin a sin b = (cos(a-b) - cos(a+b)) / 2
        m1.trig = TrigKind::Cos;
        m1.trig_arg = a.mono.trig_arg - b.mono.trig_arg;
        m2.trig = TrigKind::Cos;
        m2.trig_arg = sum;
        push_normalized(half, std::move(m1), out);
        push_normalized(-half, std::move(m2), out);
    } else if (ka == TrigKind::Cos && kb == TrigKind::Cos) {
        // cos a cos b = (cos(a-b) + cos(a+b)) / 2
        m1.trig = TrigKind::Cos;
        m1.trig_arg = a.mono.trig_arg - b.mono.trig_arg;
        m2.trig = TrigKind::Cos;
        m2.trig_arg = sum;
        push_normalized(half, std::move(m1), out);
        push_normalized(half, std::move(m2), out);
    } else {
        // sin a cos b = (sin(a+b) + sin(a-b)) / 2
        const LinearArg& s = (ka == TrigKind::Sin) ? a.mono.trig_arg : b.mono.trig_arg;
        const LinearArg& c = (ka == TrigKind::Sin) ? b.mono.trig_arg : a.mono.trig_arg;
        m1.trig = TrigKind::Sin;
        m1.trig_arg = sum;
        m2.trig = TrigKind::Sin;
        m2.trig_arg = s - c;
        push_normalized(half, std::move(m1), out);
        push_normalized(half, std::move(m2), out);
    }
}

}  // namespace

// --------------------------------------------------------------------- Expr

Expr::Expr(const Rational& c) {
    if (!c.is_zero()) terms_.push_back({c, Monomial{}});
}

Expr Expr::time() {
    Monomial m;
    m.t_power = Rational(1);
    return term(Rational(1), std::move(m));
}

Expr Expr::jet(JetVar v) {
    Monomial m;
    m.jets.emplace_back(v, Rational(1));
    return term(Rational(1), std::move(m));
}

Expr Expr::sin(const LinearArg& arg) {
    Monomial m;
    m.trig = TrigKind::Sin;
    m.trig_arg = arg;
    return term(Rational(1), std::move(m));
}

Expr Expr::cos(const LinearArg& arg) {
    Monomial m;
    m.trig = TrigKind::Cos;
    m.trig_arg = arg;
    return term(Rational(1), std::move(m));
}

Expr Expr::exp(const LinearArg& arg) {
    Monomial m;
    m.exp_arg = arg;
    return term(Rational(1), std::move(m));
}

Expr Expr::term(const Rational& coeff, Monomial mono) {
    return from_terms({Term{coeff, std::move(mono)}});
}

Expr Expr::from_terms(std::vector<Term> terms) {
    std::vector<Term> normalized;
    normalized.reserve(terms.size());
    for (auto& t : terms) {
        std::erase_if(t.mono.jets, [](const auto& p) { return p.second.is_zero(); });
        std::sort(t.mono.jets.begin(), t.mono.jets.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        push_normalized(std::move(t.coeff), std::move(t.mono), normalized);
    }
    std::sort(normalized.begin(), normalized.end(),
              [](const Term& a, const Term& b) { return compare(a.mono, b.mono) < 0; });
    Expr out;
    for (auto& t : normalized) {
        if (!out.terms_.empty() && compare(out.terms_.back().mono, t.mono) == 0) {
            out.terms_.back().coeff += t.coeff;
            if (out.terms_.back().coeff.is_zero()) out.terms_.pop_back();
        } else {
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

std::optional<Rational> Expr::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.front().mono.is_one()) return terms_.front().coeff;
    return std::nullopt;
}

Rational Expr::coefficient_of(const Monomial& m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, const Monomial& key) { return compare(t.mono, key) < 0; });
    if (it != terms_.end() && compare(it->mono, m) == 0) return it->coeff;
    return Rational(0);
}

int Expr::max_order() const {
    int order = -1;
    for (const auto& t : terms_) {
        for (const auto& [v, e] : t.mono.jets) order = std::max(order, v.order);
        if (t.mono.exp_arg.involves_coordinates() || t.mono.trig_arg.involves_coordinates()) {
            order = std::max(order, 0);
        }
    }
    return order;
}

int Expr::max_order_of(int coord) const {
    int order = -1;
    for (const auto& v : jet_vars()) {
        if (v.coord == coord) order = std::max(order, v.order);
    }
    return order;
}

std::set<JetVar> Expr::jet_vars() const {
    std::set<JetVar> vars;
    for (const auto& t : terms_) {
        for (const auto& [v, e] : t.mono.jets) vars.insert(v);
        for (const LinearArg* arg : {&t.mono.exp_arg, &t.mono.trig_arg}) {
            for (const auto& [slot, c] : arg->coeffs()) {
                if (slot != LinearArg::kTime) vars.insert(JetVar{slot, 0});
            }
        }
    }
    return vars;
}

bool Expr::depends_on_time() const {
    return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) {
        return !t.mono.t_power.is_zero() || !t.mono.exp_arg.coefficient(LinearArg::kTime).is_zero() ||
               !t.mono.trig_arg.coefficient(LinearArg::kTime).is_zero();
    });
}

Expr Expr::operator-() const { return scaled(Rational(-1)); }

Expr Expr::scaled(const Rational& factor) const {
    if (factor.is_zero()) return Expr();
    Expr r = *this;
    for (auto& t : r.terms_) t.coeff *= factor;
    return r;
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // Both inputs are sorted: linear merge.
    Expr out;
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size()) {
            out.terms_.push_back(a.terms_[i++]);
            continue;
        }
        if (i == a.terms_.size()) {
            out.terms_.push_back(b.terms_[j++]);
            continue;
        }
        const int c = compare(a.terms_[i].mono, b.terms_[j].mono);
        if (c < 0) {
            out.terms_.push_back(a.terms_[i++]);
        } else if (c > 0) {
            out.terms_.push_back(b.terms_[j++]);
        } else {
            Rational s = a.terms_[i].coeff + b.terms_[j].coeff;
            if (!s.is_zero()) out.terms_.push_back({std::move(s), a.terms_[i].mono});
            ++i;
            ++j;
        }
    }
    return out;
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    std::vector<Term> products;
    products.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) multiply_into(ta, tb, products);
    }
    return Expr::from_terms(std::move(products));
}

Expr Expr::pow(const Rational& exponent) const {
    if (exponent.is_integer() && exponent.sign() >= 0) {
        long n = exponent.to_long();
        Expr result(Rational(1));
        Expr base = *this;
        while (n > 0) {
            if (n & 1) result = result * base;
            n >>= 1;
            if (n > 0) base = base * base;
        }
        return result;
    }
    if (is_zero()) throw Error(ErrorKind::DomainError, "zero raised to a negative power");
    if (!is_monomial()) {
        throw Error(ErrorKind::NonMonomialFractionalPower,
                    "power " + exponent.str() + " of a sum of " + std::to_string(terms_.size()) + " terms");
    }
    const Term& t = terms_.front();
    if (t.mono.trig != TrigKind::None) {
        throw Error(ErrorKind::NonMonomialFractionalPower,
                    "power " + exponent.str() + " of a trigonometric factor");
    }
    auto coeff = t.coeff.pow(exponent);
    if (!coeff) {
        throw Error(ErrorKind::DomainError,
                    "coefficient " + t.coeff.str() + " has no rational power " + exponent.str());
    }
    Monomial m;
    m.t_power = t.mono.t_power * exponent;
    m.jets = t.mono.jets;
    for (auto& [v, e] : m.jets) e *= exponent;
    m.exp_arg = t.mono.exp_arg.scaled(exponent);
    return Expr::term(*coeff, std::move(m));
}

// --------------------------------------------------------------- evaluation

double real_pow(double base, const Rational& exponent) {
    if (exponent.is_zero()) return 1.0;
    if (exponent.is_integer()) {
        if (base == 0.0 && exponent.sign() < 0) {
            throw Error(ErrorKind::DomainError, "zero raised to negative power " + exponent.str());
        }
        return std::pow(base, static_cast<double>(exponent.to_long()));
    }
    if (base < 0.0) throw Error(ErrorKind::DomainError, "negative base under fractional power " + exponent.str());
    if (base == 0.0 && exponent.sign() < 0) {
        throw Error(ErrorKind::DomainError, "zero raised to negative power " + exponent.str());
    }
    return std::pow(base, exponent.to_double());
}

namespace {

double eval_arg(const LinearArg& arg, double t, const JetValues& jet) {
    double v = 0.0;
    for (const auto& [slot, c] : arg.coeffs()) {
        if (slot == LinearArg::kTime) {
            v += c.to_double() * t;
        } else {
            auto it = jet.find(JetVar{slot, 0});
            if (it == jet.end()) {
                throw Error(ErrorKind::UnboundJetVar, "coordinate " + std::to_string(slot) + " is not bound");
            }
            v += c.to_double() * it->second;
        }
    }
    return v;
}

}  // namespace

double eval_numeric(const Expr& e, double t, const JetValues& jet) {
    double total = 0.0;
    for (const auto& term : e.terms()) {
        double v = term.coeff.to_double() * real_pow(t, term.mono.t_power);
        for (const auto& [var, ex] : term.mono.jets) {
            auto it = jet.find(var);
            if (it == jet.end()) {
                throw Error(ErrorKind::UnboundJetVar, "jet variable (" + std::to_string(var.coord) + "," +
                                                          std::to_string(var.order) + ") is not bound");
            }
            v *= real_pow(it->second, ex);
        }
        if (!term.mono.exp_arg.empty()) v *= std::exp(eval_arg(term.mono.exp_arg, t, jet));
        if (term.mono.trig == TrigKind::Sin) v *= std::sin(eval_arg(term.mono.trig_arg, t, jet));
        if (term.mono.trig == TrigKind::Cos) v *= std::cos(eval_arg(term.mono.trig_arg, t, jet));
        total += v;
    }
    return total;
}

}  // namespace noether
