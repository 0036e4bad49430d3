#include "noether/conserved.hpp"

#include <cmath>
#include <map>
#include <random>

#include "noether/error.hpp"
#include "noether/linsolve.hpp"

namespace noether {

namespace {

Expr sum_qe(const LagrangianSpec& spec, const std::vector<Expr>& q, int max_order) {
    if (q.size() != static_cast<std::size_t>(spec.n_coords)) {
        throw Error(ErrorKind::InvalidArgument, "one characteristic per coordinate is required");
    }
    Expr acc;
    for (int i = 0; i < spec.n_coords; ++i) {
        if (!q[static_cast<std::size_t>(i)].is_zero()) {
            acc += q[static_cast<std::size_t>(i)] * euler_lagrange(spec, i, max_order);
        }
    }
    return acc;
}

int bootstrap_sign() {
    const auto free = LagrangianSpec::make(1, 1, Expr::var(0, 1).pow(Rational(2)).scaled(Rational(1, 2)));
    SymmetryGenerator g;
    g.eta = {Expr(1)};
    g.characteristics = characteristics(g.zeta, g.eta);
    const Expr charge = noether_charge_general(free, g);
    const Expr dt = total_derivative(charge);
    const Expr qe = sum_qe(free, g.characteristics, kDefaultOrderCap);
    if ((dt + qe).is_zero()) return 1;
    if ((dt - qe).is_zero()) return -1;
    throw Error(ErrorKind::VerificationFailure, "sign bootstrap failed on the free particle");
}

}  // namespace

int noether_sign() {
    static const int sigma = bootstrap_sign();
    return sigma;
}

Expr noether_bracket_order2(const LagrangianSpec& spec, const SymmetryGenerator& g, int max_order) {
    if (spec.order > 2) throw Error(ErrorKind::InvalidArgument, "bracket form needs a Lagrangian of order <= 2");
    const std::vector<Expr> q = characteristics(g.zeta, g.eta);
    Expr out = g.zeta * spec.lagrangian - g.gauge;
    for (int i = 0; i < spec.n_coords; ++i) {
        const Expr& qi = q[static_cast<std::size_t>(i)];
        if (qi.is_zero()) continue;
        out += qi * partial(spec.lagrangian, {i, 1});
        const Expr l2 = partial(spec.lagrangian, {i, 2});
        if (!l2.is_zero()) {
            out += total_derivative(qi, max_order) * l2 - qi * total_derivative(l2, max_order);
        }
    }
    return out;
}

Expr noether_charge_general(const LagrangianSpec& spec, const SymmetryGenerator& g, int max_order) {
    const std::vector<Expr> q = characteristics(g.zeta, g.eta);
    Expr out = g.zeta * spec.lagrangian - g.gauge;
    for (int i = 0; i < spec.n_coords; ++i) {
        const Expr& qi = q[static_cast<std::size_t>(i)];
        if (qi.is_zero()) continue;
        // dq[m] = D^m Q_i
        std::vector<Expr> dq{qi};
        for (int m = 1; m < spec.order; ++m) dq.push_back(total_derivative(dq.back(), max_order));
        for (int k = 1; k <= spec.order; ++k) {
            Expr dl = partial(spec.lagrangian, {i, k});
            if (dl.is_zero()) continue;
            for (int j = 1; j <= k; ++j) {
                const Expr term = dq[static_cast<std::size_t>(k - j)] * dl;
                out += (j % 2 == 0) ? -term : term;
                if (j < k) dl = total_derivative(dl, max_order);
            }
        }
    }
    return out;
}

ConservedQuantity noether_charge(const LagrangianSpec& spec, const SymmetryGenerator& g, int max_order) {
    ConservedQuantity out;
    out.generator = g;
    if (out.generator.characteristics.empty()) out.generator.characteristics = characteristics(g.zeta, g.eta);
    out.expr = noether_charge_general(spec, g, max_order);
    if (spec.order <= 2 && noether_bracket_order2(spec, g, max_order) != out.expr) {
        throw Error(ErrorKind::VerificationFailure, "second-order bracket disagrees with the general formula");
    }
    return out;
}

Expr noether_residual(const LagrangianSpec& spec, const Expr& charge, const std::vector<Expr>& characteristics,
                      int max_order) {
    const Expr qe = sum_qe(spec, characteristics, max_order);
    const Expr dt = total_derivative(charge, max_order);
    return noether_sign() > 0 ? dt + qe : dt - qe;
}

bool verify_offshell(const LagrangianSpec& spec, const Expr& charge, const std::vector<Expr>& characteristics,
                     int max_order) {
    return noether_residual(spec, charge, characteristics, max_order).is_zero();
}

bool verify_offshell(const LagrangianSpec& spec, ConservedQuantity& q, int max_order) {
    q.checked_offshell = verify_offshell(spec, q.expr, q.generator.characteristics, max_order);
    return q.checked_offshell;
}

bool numeric_spot_check(const LagrangianSpec& spec, ConservedQuantity& q, std::uint64_t seed, int samples,
                        int max_order) {
    const Expr qe = sum_qe(spec, q.generator.characteristics, max_order);
    std::set<JetVar> vars = q.expr.jet_vars();
    for (const auto& v : qe.jet_vars()) vars.insert(v);
    int top = 0;
    for (const auto& v : vars) top = std::max(top, v.order);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    std::bernoulli_distribution coin(0.5);
    const double sigma = noether_sign();
    bool ok = true;
    for (int s = 0; s < samples && ok; ++s) {
        const double t = uni(rng) * (coin(rng) ? 1.0 : -1.0);
        JetValues jet;
        for (int i = 0; i < spec.n_coords; ++i) {
            for (int k = 0; k <= top + 1; ++k) {
                // coordinates stay positive so fractional and negative powers are defined
                const double mag = uni(rng);
                jet[{i, k}] = (k == 0 || coin(rng)) ? mag : -mag;
            }
        }
        auto eval_at = [&](double tt, const JetValues& j) { return eval_numeric(q.expr, tt, j); };
        const double h = 1e-5;
        double dt = (eval_at(t + h, jet) - eval_at(t - h, jet)) / (2 * h);
        double scale = std::abs(dt);
        for (const auto& v : q.expr.jet_vars()) {
            JetValues plus = jet;
            JetValues minus = jet;
            plus[v] += h;
            minus[v] -= h;
            const double d = (eval_at(t, plus) - eval_at(t, minus)) / (2 * h) * jet.at({v.coord, v.order + 1});
            dt += d;
            scale += std::abs(d);
        }
        const double rhs = eval_numeric(qe, t, jet);
        scale += std::abs(rhs);
        ok = std::abs(dt + sigma * rhs) <= 1e-6 * std::max(1.0, scale);
    }
    q.checked_numeric = ok;
    return ok;
}

SpanMatch span_contains(const std::vector<Expr>& basis, const Expr& candidate) {
    SpanMatch out;
    out.coefficients.assign(basis.size(), Rational(0));
    std::map<Monomial, std::size_t, MonomialLess> rows;
    const Monomial one{};
    rows.emplace(one, 0);
    auto collect = [&](const Expr& e) {
        for (const auto& term : e.terms()) rows.emplace(term.mono, rows.size());
    };
    for (const auto& b : basis) collect(b);
    collect(candidate);

    const std::size_t n = basis.size();
    RationalMatrix m(rows.size(), n + 1);
    RationalVector rhs(rows.size());
    for (const auto& [mono, r] : rows) {
        for (std::size_t j = 0; j < n; ++j) m(r, j) = basis[j].coefficient_of(mono);
        rhs[r] = candidate.coefficient_of(mono);
    }
    m(rows.at(one), n) = Rational(1);

    const auto sol = solve(m, rhs);
    if (!sol) return out;
    Expr rest = candidate;
    for (std::size_t j = 0; j < n; ++j) {
        out.coefficients[j] = (*sol)[j];
        rest -= basis[j].scaled((*sol)[j]);
    }
    const auto c = rest.constant_value();
    if (!c) return out;  // unreachable when the solve is consistent
    out.constant = *c;
    out.contained = true;
    return out;
}

SpanMatch span_contains(const std::vector<ConservedQuantity>& basis, const Expr& candidate) {
    std::vector<Expr> exprs;
    exprs.reserve(basis.size());
    for (const auto& q : basis) exprs.push_back(q.expr);
    return span_contains(exprs, candidate);
}

}  // namespace noether
