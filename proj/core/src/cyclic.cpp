#include "noether/cyclic.hpp"

#include <algorithm>

#include "noether/error.hpp"
#include "noether/parse.hpp"

namespace noether {

PointTransformation PointTransformation::identity(int n_coords) {
    PointTransformation tr;
    tr.t_of = Expr::time();
    for (int i = 0; i < n_coords; ++i) tr.x_of.push_back(Expr::var(i));
    return tr;
}

PrimedSubstitution::PrimedSubstitution(PointTransformation tr, int max_order)
    : tr_(std::move(tr)), max_order_(max_order) {
    for (const auto& e : tr_.x_of) {
        if (e.max_order() > 0) throw Error(ErrorKind::InvalidArgument, "point transformations may not use velocities");
    }
    if (tr_.t_of.max_order() > 0) throw Error(ErrorKind::InvalidArgument, "point transformations may not use velocities");
    dt_ = total_derivative(tr_.t_of, max_order_);
    if (!dt_.is_monomial() || dt_.terms().front().mono.trig != TrigKind::None) {
        throw Error(ErrorKind::NonInvertibleTimeFactor, "dt/dt' must be a single term without sin or cos");
    }
    dt_inverse_ = dt_.pow(Rational(-1));
}

const Expr& PrimedSubstitution::jet(JetVar v) {
    if (v.coord < 0 || v.coord >= tr_.n_coords()) throw Error(ErrorKind::UnboundJetVar, "coordinate out of range");
    if (auto it = jets_.find(v); it != jets_.end()) return it->second;
    Expr image = v.order == 0 ? tr_.x_of[static_cast<std::size_t>(v.coord)]
                              : total_derivative(jet({v.coord, v.order - 1}), max_order_) * dt_inverse_;
    return jets_.emplace(v, std::move(image)).first->second;
}

namespace {

Expr power_of(const Expr& base, const Rational& e) {
    try {
        return base.pow(e);
    } catch (const Error& err) {
        throw Error(ErrorKind::SubstitutionDomainError, std::string("no image for a power: ") + err.what());
    }
}

}  // namespace

Expr PrimedSubstitution::apply(const Expr& e) {
    Expr out;
    for (const auto& term : e.terms()) {
        const Monomial& m = term.mono;
        Expr piece(term.coeff);
        if (!m.t_power.is_zero()) piece *= power_of(tr_.t_of, m.t_power);
        for (const auto& [v, exp] : m.jets) piece *= power_of(jet(v), exp);
        auto map_arg = [&](const LinearArg& arg) {
            Expr image;
            for (const auto& [slot, c] : arg.coeffs()) {
                image += (slot == LinearArg::kTime ? tr_.t_of : jet({slot, 0})).scaled(c);
            }
            auto lin = as_linear_arg(image);
            if (!lin) throw Error(ErrorKind::SubstitutionDomainError, "transcendental argument is not linear after substitution");
            return *lin;
        };
        if (!m.exp_arg.empty()) piece *= Expr::exp(map_arg(m.exp_arg));
        if (m.trig == TrigKind::Sin) piece *= Expr::sin(map_arg(m.trig_arg));
        if (m.trig == TrigKind::Cos) piece *= Expr::cos(map_arg(m.trig_arg));
        out += piece;
    }
    return out;
}

LagrangianSpec transform_lagrangian(const LagrangianSpec& spec, const PointTransformation& tr, int max_order) {
    if (spec.order > 2) throw Error(ErrorKind::InvalidArgument, "point transformations are supported for order <= 2");
    if (tr.n_coords() != spec.n_coords) {
        throw Error(ErrorKind::InvalidArgument, "transformation must map every coordinate");
    }
    PrimedSubstitution sub(tr, max_order);
    const Expr primed = sub.apply(spec.lagrangian) * sub.time_factor();
    return LagrangianSpec::make(spec.n_coords, std::max(primed.max_order(), 1), primed);
}

bool is_cyclic(const LagrangianSpec& spec, int k) {
    if (k < 0 || k >= spec.n_coords) throw Error(ErrorKind::InvalidArgument, "cyclic index out of range");
    return partial(spec.lagrangian, {k, 0}).is_zero();
}

Expr ostrogradsky_momentum(const LagrangianSpec& spec, int k, int max_order) {
    if (spec.order > 2) throw Error(ErrorKind::InvalidArgument, "momentum formula needs order <= 2");
    return partial(spec.lagrangian, {k, 1}) - total_derivative(partial(spec.lagrangian, {k, 2}), max_order);
}

bool gauge_lift_check(const Expr& gauge, const Expr& lift, const PointTransformation& tr, int k, int max_order) {
    if (lift.max_order() > 1) throw Error(ErrorKind::InvalidArgument, "F may depend on velocities only");
    PrimedSubstitution sub(tr, max_order);
    return -partial(lift, {k, 0}) == sub.apply(gauge);
}

std::optional<Expr> naive_antiderivative(const Expr& e, JetVar v) {
    std::vector<Term> out;
    for (const auto& term : e.terms()) {
        Monomial m = term.mono;
        auto involves = [&](const LinearArg& a) { return v.order == 0 && !a.coefficient(v.coord).is_zero(); };
        if (involves(m.exp_arg) || (m.trig != TrigKind::None && involves(m.trig_arg))) return std::nullopt;
        const Rational e_old = m.exponent_of(v);
        if (e_old == Rational(-1)) return std::nullopt;
        const Rational e_new = e_old + Rational(1);
        std::erase_if(m.jets, [&](const auto& p) { return p.first == v; });
        m.jets.emplace_back(v, e_new);
        std::sort(m.jets.begin(), m.jets.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        out.push_back({term.coeff / e_new, std::move(m)});
    }
    return Expr::from_terms(std::move(out));
}

std::optional<Expr> lift_gauge(const Expr& gauge, const PointTransformation& tr, int k, int max_order) {
    PrimedSubstitution sub(tr, max_order);
    auto f = naive_antiderivative(sub.apply(gauge), {k, 0});
    if (!f) return std::nullopt;
    return -*f;
}

LagrangianSpec equivalent_lagrangian(const LagrangianSpec& primed, const Expr& lift, int max_order) {
    if (lift.max_order() > 1) throw Error(ErrorKind::InvalidArgument, "F may depend on velocities only");
    const Expr l = primed.lagrangian + total_derivative(lift, max_order);
    return LagrangianSpec::make(primed.n_coords, std::max({l.max_order(), primed.order, 1}), l);
}

}  // namespace noether
