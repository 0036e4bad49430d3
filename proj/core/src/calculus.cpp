#include "noether/calculus.hpp"

#include <string>

#include "noether/error.hpp"

namespace noether {

namespace {

// Appends d(term)/d(slot) for the transcendental factors, where slot is
// LinearArg::kTime or an order-0 coordinate index.
void differentiate_trans(const Term& term, int slot, std::vector<Term>& out) {
    const Monomial& m = term.mono;
    const Rational exp_rate = m.exp_arg.coefficient(slot);
    if (!exp_rate.is_zero()) out.push_back({term.coeff * exp_rate, m});
    const Rational trig_rate = m.trig_arg.coefficient(slot);
    if (!trig_rate.is_zero()) {
        Monomial d = m;
        if (m.trig == TrigKind::Sin) {
            d.trig = TrigKind::Cos;
            out.push_back({term.coeff * trig_rate, std::move(d)});
        } else {
            d.trig = TrigKind::Sin;
            out.push_back({-(term.coeff * trig_rate), std::move(d)});
        }
    }
}

void check_cap(int order, int max_order) {
    if (order > max_order) {
        throw Error(ErrorKind::OrderCapExceeded,
                    "derivative order " + std::to_string(order) + " exceeds cap " + std::to_string(max_order));
    }
}

}  // namespace

LagrangianSpec LagrangianSpec::make(int n_coords, int order, Expr lagrangian) {
    if (n_coords < 1) throw Error(ErrorKind::InvalidArgument, "at least one coordinate is required");
    if (order < 1) throw Error(ErrorKind::InvalidArgument, "Lagrangian order must be >= 1");
    for (const auto& v : lagrangian.jet_vars()) {
        if (v.coord >= n_coords) throw Error(ErrorKind::InvalidArgument, "coordinate index out of range");
        if (v.order > order) {
            throw Error(ErrorKind::InvalidArgument, "Lagrangian uses derivative order " + std::to_string(v.order) +
                                                        " above declared order " + std::to_string(order));
        }
    }
    return LagrangianSpec{n_coords, order, std::move(lagrangian)};
}

Expr partial(const Expr& e, JetVar v) {
    std::vector<Term> out;
    for (const auto& term : e.terms()) {
        const Rational ex = term.mono.exponent_of(v);
        if (!ex.is_zero()) {
            Term d = term;
            d.coeff *= ex;
            for (auto& [var, p] : d.mono.jets) {
                if (var == v) p -= Rational(1);
            }
            out.push_back(std::move(d));
        }
        if (v.order == 0) differentiate_trans(term, v.coord, out);
    }
    return Expr::from_terms(std::move(out));
}

Expr partial_t(const Expr& e) {
    std::vector<Term> out;
    for (const auto& term : e.terms()) {
        if (!term.mono.t_power.is_zero()) {
            Term d = term;
            d.coeff *= term.mono.t_power;
            d.mono.t_power -= Rational(1);
            out.push_back(std::move(d));
        }
        differentiate_trans(term, LinearArg::kTime, out);
    }
    return Expr::from_terms(std::move(out));
}

Expr total_derivative(const Expr& e, int max_order) {
    Expr result = partial_t(e);
    for (const JetVar& v : e.jet_vars()) {
        check_cap(v.order + 1, max_order);
        result += Expr::jet({v.coord, v.order + 1}) * partial(e, v);
    }
    return result;
}

Expr total_derivative(const Expr& e, int times, int max_order) {
    Expr r = e;
    for (int i = 0; i < times && !r.is_zero(); ++i) r = total_derivative(r, max_order);
    return r;
}

Expr euler_lagrange(const LagrangianSpec& spec, int coord, int max_order) {
    if (coord < 0 || coord >= spec.n_coords) throw Error(ErrorKind::InvalidArgument, "coordinate index out of range");
    Expr result;
    for (int k = 0; k <= spec.order; ++k) {
        Expr term = total_derivative(partial(spec.lagrangian, {coord, k}), k, max_order);
        result += (k % 2 == 0) ? term : -term;
    }
    return result;
}

std::vector<Expr> euler_lagrange_all(const LagrangianSpec& spec, int max_order) {
    std::vector<Expr> out;
    out.reserve(spec.n_coords);
    for (int i = 0; i < spec.n_coords; ++i) out.push_back(euler_lagrange(spec, i, max_order));
    return out;
}

}  // namespace noether
