#include "noether/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "noether/error.hpp"
#include "noether/polynomial.hpp"

namespace noether {

// ------------------------------------------------------- characteristic roots

FrequencyAnalysis characteristic_frequencies(const LagrangianSpec& spec, int max_order) {
    FrequencyAnalysis out;
    const std::vector<Expr> el = euler_lagrange_all(spec, max_order);
    const auto n = static_cast<std::size_t>(spec.n_coords);
    std::vector<std::vector<Polynomial>> symbol(n, std::vector<Polynomial>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& term : el[i].terms()) {
            const Monomial& m = term.mono;
            if (!m.t_power.is_zero() || m.has_trans() || m.jets.size() != 1 || !m.jets.front().second.is_one()) {
                return out;
            }
            const JetVar v = m.jets.front().first;
            symbol[i][static_cast<std::size_t>(v.coord)] =
                symbol[i][static_cast<std::size_t>(v.coord)] + Polynomial::monomial(term.coeff, v.order);
        }
    }
    out.linear_constant = true;
    Polynomial q = determinant(symbol);
    out.characteristic = q.str();
    if (q.is_zero()) {
        out.unresolved_roots = true;
        return out;
    }

    std::set<Rational> freqs;
    const Polynomial r_factor({Rational(0), Rational(1)});
    for (const Rational& root : rational_roots(q)) {
        if (!root.is_zero()) freqs.insert(root.abs());
        const Polynomial lin({-root, Rational(1)});
        for (;;) {
            auto [quot, rem] = q.divmod(lin);
            if (!rem.is_zero()) break;
            q = quot;
        }
    }

    // Purely imaginary roots i*w: p(i w) = Re(w) + i Im(w) with both parts zero.
    std::vector<Rational> re(static_cast<std::size_t>(q.degree() + 1));
    std::vector<Rational> im(re.size());
    for (int k = 0; k <= q.degree(); ++k) {
        const Rational c = q.coeff(k);
        const Rational sign = ((k / 2) % 2 == 0) ? Rational(1) : Rational(-1);
        if (k % 2 == 0) {
            re[static_cast<std::size_t>(k)] = c * sign;
        } else {
            im[static_cast<std::size_t>(k)] = c * sign;
        }
    }
    const Polynomial re_poly(re);
    const Polynomial im_poly(im);
    const Polynomial& probe = re_poly.is_zero() ? im_poly : re_poly;
    for (const Rational& w : rational_roots(probe)) {
        if (w.sign() <= 0) continue;
        if (!re_poly.eval(w).is_zero() || !im_poly.eval(w).is_zero()) continue;
        freqs.insert(w);
        const Polynomial quad({w * w, Rational(0), Rational(1)});
        for (;;) {
            auto [quot, rem] = q.divmod(quad);
            if (!rem.is_zero()) break;
            q = quot;
        }
    }
    out.unresolved_roots = q.degree() > 0;
    out.frequencies.assign(freqs.begin(), freqs.end());
    return out;
}

// -------------------------------------------------------------------- ansatz

namespace {

using ExponentVector = std::vector<int>;

// Exponent vectors over `n` variables with entries in [lo, hi] whose positive
// parts sum to at most `max_degree`; ordered by total degree, then lexicographically.
std::vector<ExponentVector> exponent_vectors(int n, int lo, int max_degree) {
    std::vector<ExponentVector> out;
    ExponentVector cur(static_cast<std::size_t>(n), 0);
    std::function<void(int, int)> rec = [&](int idx, int budget) {
        if (idx == n) {
            out.push_back(cur);
            return;
        }
        for (int e = lo; e <= budget; ++e) {
            cur[static_cast<std::size_t>(idx)] = e;
            rec(idx + 1, budget - std::max(e, 0));
        }
    };
    rec(0, max_degree);
    std::stable_sort(out.begin(), out.end(), [](const ExponentVector& a, const ExponentVector& b) {
        int da = 0;
        int db = 0;
        for (int e : a) da += e;
        for (int e : b) db += e;
        if (da != db) return da < db;
        return a > b;
    });
    return out;
}

Expr monomial_of(const std::vector<JetVar>& vars, const ExponentVector& exps) {
    Expr m(Rational(1));
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (exps[i] != 0) m = m * Expr::jet(vars[i]).pow(Rational(exps[i]));
    }
    return m;
}

std::vector<Expr> transcendental_factors(const std::vector<Rational>& frequencies) {
    std::vector<Expr> out{Expr(Rational(1))};
    for (const Rational& w : frequencies) {
        out.push_back(Expr::sin(LinearArg::time(w)));
        out.push_back(Expr::cos(LinearArg::time(w)));
        out.push_back(Expr::exp(LinearArg::time(w)));
        out.push_back(Expr::exp(LinearArg::time(-w)));
    }
    return out;
}

std::vector<Expr> time_powers(int degree) {
    std::vector<Expr> out;
    for (int p = 0; p <= degree; ++p) out.push_back(Expr::time().pow(Rational(p)));
    return out;
}

void check_degree(int d, const char* name) {
    if (d < 0) throw Error(ErrorKind::ConfigError, std::string(name) + " must be >= 0");
}

}  // namespace

std::vector<AnsatzColumn> GeneratorAnsatz::columns() const {
    std::vector<AnsatzColumn> cols;
    for (const auto& g : gauge_basis) cols.push_back({Component::Gauge, -1, g});
    for (std::size_t i = 0; i < eta_basis.size(); ++i) {
        for (const auto& e : eta_basis[i]) cols.push_back({Component::Eta, static_cast<int>(i), e});
    }
    for (const auto& z : zeta_basis) cols.push_back({Component::Zeta, -1, z});
    return cols;
}

std::size_t GeneratorAnsatz::unknown_count() const {
    std::size_t n = zeta_basis.size() + gauge_basis.size();
    for (const auto& e : eta_basis) n += e.size();
    return n;
}

GeneratorAnsatz build_ansatz(const LagrangianSpec& spec, const AnsatzConfig& config) {
    check_degree(config.zeta_degree, "zeta_degree");
    check_degree(config.eta_t_degree, "eta_t_degree");
    check_degree(config.eta_x_degree, "eta_x_degree");
    check_degree(config.gauge_t_degree, "gauge_t_degree");
    check_degree(config.gauge_x_degree, "gauge_x_degree");
    check_degree(config.gauge_v_degree, "gauge_v_degree");

    GeneratorAnsatz a;
    a.n_coords = spec.n_coords;
    if (config.frequencies) {
        std::set<Rational> fs;
        for (const auto& w : *config.frequencies) {
            if (w.is_zero()) throw Error(ErrorKind::ConfigError, "frequency 0 is not allowed");
            fs.insert(w.abs());
        }
        a.frequencies.assign(fs.begin(), fs.end());
    } else {
        a.frequencies = characteristic_frequencies(spec, config.max_order).frequencies;
    }
    const std::vector<Expr> trans = transcendental_factors(a.frequencies);

    std::vector<JetVar> coords;
    for (int i = 0; i < spec.n_coords; ++i) coords.push_back({i, 0});
    std::vector<Expr> coord_monos;
    for (const auto& e : exponent_vectors(spec.n_coords, 0, config.eta_x_degree)) {
        coord_monos.push_back(monomial_of(coords, e));
    }
    if (config.inverse_coords) {
        for (const auto& v : coords) coord_monos.push_back(Expr::jet(v).pow(Rational(-1)));
    }

    // zeta(t) or zeta(x, t)
    for (const Expr& tp : time_powers(config.zeta_degree)) {
        if (config.zeta_depends_on_x) {
            for (const Expr& cm : coord_monos) a.zeta_basis.push_back(tp * cm);
        } else {
            a.zeta_basis.push_back(tp);
        }
    }

    std::vector<Expr> eta_common;
    for (const Expr& tau : trans) {
        for (const Expr& cm : coord_monos) {
            for (const Expr& tp : time_powers(config.eta_t_degree)) eta_common.push_back(tp * cm * tau);
        }
    }
    a.eta_basis.assign(static_cast<std::size_t>(spec.n_coords), eta_common);

    // G(x, x', ..., x^(N-1); t) without the constant.
    std::vector<JetVar> velocities;
    for (int k = 1; k <= spec.order - 1; ++k) {
        for (int i = 0; i < spec.n_coords; ++i) velocities.push_back({i, k});
    }
    const int lo = config.inverse_coords ? -1 : 0;
    const auto gauge_coord = exponent_vectors(spec.n_coords, lo, config.gauge_x_degree);
    const auto gauge_vel = exponent_vectors(static_cast<int>(velocities.size()), 0, config.gauge_v_degree);
    for (const Expr& tau : trans) {
        for (const auto& cv : gauge_coord) {
            const Expr cm = monomial_of(coords, cv);
            for (const auto& vv : gauge_vel) {
                const Expr vm = monomial_of(velocities, vv);
                for (const Expr& tp : time_powers(config.gauge_t_degree)) {
                    Expr g = tp * cm * vm * tau;
                    if (g.is_constant()) continue;
                    a.gauge_basis.push_back(std::move(g));
                }
            }
        }
    }

    if (a.unknown_count() == 0 || (a.zeta_basis.empty() && eta_common.empty())) {
        throw Error(ErrorKind::ConfigError, "empty ansatz basis");
    }
    return a;
}

// -------------------------------------------------------- determining identity

std::vector<Expr> characteristics(const Expr& zeta, const std::vector<Expr>& eta) {
    std::vector<Expr> q;
    q.reserve(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) q.push_back(eta[i] - Expr::var(static_cast<int>(i), 1) * zeta);
    return q;
}

Expr prolongation(const Expr& zeta, const Expr& eta_i, int coord, int k, int max_order) {
    const Expr q = eta_i - Expr::var(coord, 1) * zeta;
    Expr result = total_derivative(q, k, max_order);
    if (!zeta.is_zero()) {
        if (k + 1 > max_order) throw Error(ErrorKind::OrderCapExceeded, "prolongation exceeds order cap");
        result += Expr::var(coord, k + 1) * zeta;
    }
    return result;
}

DeterminingOperator::DeterminingOperator(const LagrangianSpec& spec, int max_order)
    : spec_(spec), max_order_(max_order), partial_t_(partial_t(spec.lagrangian)) {
    partials_.resize(static_cast<std::size_t>(spec.n_coords));
    for (int i = 0; i < spec.n_coords; ++i) {
        for (int k = 0; k <= spec.order; ++k) partials_[i].push_back(partial(spec.lagrangian, {i, k}));
    }
}

Expr DeterminingOperator::apply(const Expr& zeta, const std::vector<Expr>& eta, const Expr& gauge) const {
    if (eta.size() != static_cast<std::size_t>(spec_.n_coords)) {
        throw Error(ErrorKind::InvalidArgument, "eta must have one component per coordinate");
    }
    Expr result = partial_t_ * zeta + spec_.lagrangian * total_derivative(zeta, max_order_) -
                  total_derivative(gauge, max_order_);
    for (int i = 0; i < spec_.n_coords; ++i) {
        Expr dq = eta[i] - Expr::var(i, 1) * zeta;
        for (int k = 0; k <= spec_.order; ++k) {
            const Expr& p = partials_[i][k];
            if (!p.is_zero()) {
                Expr pr = dq;
                if (!zeta.is_zero()) {
                    if (k + 1 > max_order_) throw Error(ErrorKind::OrderCapExceeded, "prolongation exceeds order cap");
                    pr += Expr::var(i, k + 1) * zeta;
                }
                result += p * pr;
            }
            if (k < spec_.order) dq = total_derivative(dq, max_order_);
        }
    }
    return result;
}

Expr determining_identity(const LagrangianSpec& spec, const Expr& zeta, const std::vector<Expr>& eta,
                          const Expr& gauge, int max_order) {
    return DeterminingOperator(spec, max_order).apply(zeta, eta, gauge);
}

DeterminingSystem assemble_system(const LagrangianSpec& spec, const GeneratorAnsatz& ansatz, int max_order) {
    const DeterminingOperator op(spec, max_order);
    const auto columns = ansatz.columns();
    const std::vector<Expr> zero_eta(static_cast<std::size_t>(spec.n_coords));

    std::map<Monomial, std::vector<std::pair<std::size_t, Rational>>, MonomialLess> rows;
    for (std::size_t j = 0; j < columns.size(); ++j) {
        const AnsatzColumn& col = columns[j];
        Expr delta;
        switch (col.component) {
            case Component::Gauge: delta = op.apply(Expr(), zero_eta, col.basis); break;
            case Component::Zeta: delta = op.apply(col.basis, zero_eta, Expr()); break;
            case Component::Eta: {
                std::vector<Expr> eta = zero_eta;
                eta[static_cast<std::size_t>(col.coord)] = col.basis;
                delta = op.apply(Expr(), eta, Expr());
                break;
            }
        }
        for (const auto& term : delta.terms()) rows[term.mono].emplace_back(j, term.coeff);
    }

    DeterminingSystem sys;
    sys.unknown_count = columns.size();
    sys.matrix = RationalMatrix(rows.size(), columns.size());
    std::size_t r = 0;
    for (auto& [mono, entries] : rows) {
        for (const auto& [j, c] : entries) sys.matrix(r, j) = c;
        sys.row_monomials.push_back(mono);
        ++r;
    }
    return sys;
}

SymmetryGenerator instantiate(const GeneratorAnsatz& ansatz, const RationalVector& coefficients) {
    const auto columns = ansatz.columns();
    if (coefficients.size() != columns.size()) {
        throw Error(ErrorKind::InvalidArgument, "coefficient vector length does not match the ansatz");
    }
    SymmetryGenerator g;
    g.eta.assign(static_cast<std::size_t>(ansatz.n_coords), Expr());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (coefficients[j].is_zero()) continue;
        const Expr piece = columns[j].basis.scaled(coefficients[j]);
        switch (columns[j].component) {
            case Component::Gauge: g.gauge += piece; break;
            case Component::Zeta: g.zeta += piece; break;
            case Component::Eta: g.eta[static_cast<std::size_t>(columns[j].coord)] += piece; break;
        }
    }
    g.characteristics = characteristics(g.zeta, g.eta);
    return g;
}

std::vector<SymmetryGenerator> extract_generators(const LagrangianSpec& spec, const GeneratorAnsatz& ansatz,
                                                  const std::vector<RationalVector>& nullspace_basis,
                                                  int max_order) {
    const DeterminingOperator op(spec, max_order);
    std::vector<SymmetryGenerator> out;
    for (std::size_t k = 0; k < nullspace_basis.size(); ++k) {
        const auto& v = nullspace_basis[k];
        if (std::all_of(v.begin(), v.end(), [](const Rational& c) { return c.is_zero(); })) {
            throw Error(ErrorKind::InvalidArgument, "zero vector is not a generator");
        }
        SymmetryGenerator g = instantiate(ansatz, v);
        const Expr residual = op.apply(g.zeta, g.eta, g.gauge);
        if (!residual.is_zero()) {
            throw Error(ErrorKind::VerificationFailure,
                        "nullspace vector " + std::to_string(k) + " does not satisfy the determining identity");
        }
        out.push_back(std::move(g));
    }
    return out;
}

SymmetrySearch find_symmetries(const LagrangianSpec& spec, const AnsatzConfig& config) {
    SymmetrySearch s;
    s.frequency = characteristic_frequencies(spec, config.max_order);
    s.ansatz = build_ansatz(spec, config);
    s.system = assemble_system(spec, s.ansatz, config.max_order);
    s.nullspace = nullspace(s.system.matrix);
    s.generators = extract_generators(spec, s.ansatz, s.nullspace, config.max_order);
    return s;
}

}  // namespace noether
