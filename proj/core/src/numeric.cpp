#include "noether/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "noether/error.hpp"
#include "noether/linsolve.hpp"

namespace noether {

// -------------------------------------------------------------- CompiledExpr

namespace {

int slot_of(const std::vector<JetVar>& layout, JetVar v) {
    auto it = std::find(layout.begin(), layout.end(), v);
    if (it == layout.end()) {
        throw Error(ErrorKind::UnboundJetVar, "jet variable (" + std::to_string(v.coord) + "," +
                                                  std::to_string(v.order) + ") is not in the state layout");
    }
    return static_cast<int>(it - layout.begin());
}

double apply_pow(double base, long ipow, double fpow, bool integral) {
    if (integral) {
        if (ipow == 0) return 1.0;
        if (base == 0.0 && ipow < 0) throw Error(ErrorKind::DomainError, "zero raised to a negative power");
        if (ipow == 1) return base;
        if (ipow == 2) return base * base;
        return std::pow(base, static_cast<double>(ipow));
    }
    if (base < 0.0) throw Error(ErrorKind::DomainError, "negative base under a fractional power");
    if (base == 0.0 && fpow < 0.0) throw Error(ErrorKind::DomainError, "zero raised to a negative power");
    return std::pow(base, fpow);
}

bool single_term_diagonal(const std::vector<std::vector<Expr>>& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Expr& d = m[i][i];
        if (!d.is_monomial() || d.terms().front().mono.trig != TrigKind::None) return false;
    }
    return true;
}

}  // namespace

CompiledExpr::CompiledExpr(const Expr& e, const std::vector<JetVar>& layout) {
    auto make_factor = [](int slot, const Rational& p) {
        Factor f{slot, 0, p.to_double(), p.is_integer()};
        if (f.integral) f.ipow = p.to_long();
        return f;
    };
    auto make_arg = [&](const LinearArg& a) {
        Arg out;
        for (const auto& [slot, c] : a.coeffs()) {
            if (slot == LinearArg::kTime) {
                out.t_coeff = c.to_double();
            } else {
                out.slots.emplace_back(slot_of(layout, {slot, 0}), c.to_double());
            }
        }
        return out;
    };
    for (const auto& term : e.terms()) {
        CTerm ct;
        ct.coeff = term.coeff.to_double();
        ct.t = make_factor(-1, term.mono.t_power);
        for (const auto& [v, p] : term.mono.jets) ct.factors.push_back(make_factor(slot_of(layout, v), p));
        if (!term.mono.exp_arg.empty()) {
            ct.has_exp = true;
            ct.exp_arg = make_arg(term.mono.exp_arg);
        }
        ct.trig = term.mono.trig;
        if (ct.trig != TrigKind::None) ct.trig_arg = make_arg(term.mono.trig_arg);
        terms_.push_back(std::move(ct));
    }
}

double CompiledExpr::operator()(double t, const double* values) const {
    auto arg_value = [&](const Arg& a) {
        double v = a.t_coeff * t;
        for (const auto& [slot, c] : a.slots) v += c * values[slot];
        return v;
    };
    double total = 0.0;
    for (const auto& ct : terms_) {
        double v = ct.coeff * apply_pow(t, ct.t.ipow, ct.t.fpow, ct.t.integral);
        for (const auto& f : ct.factors) v *= apply_pow(values[f.slot], f.ipow, f.fpow, f.integral);
        if (ct.has_exp) v *= std::exp(arg_value(ct.exp_arg));
        if (ct.trig == TrigKind::Sin) v *= std::sin(arg_value(ct.trig_arg));
        if (ct.trig == TrigKind::Cos) v *= std::cos(arg_value(ct.trig_arg));
        total += v;
    }
    return total;
}

// ------------------------------------------------------------------ reduction

FirstOrderSystem reduce_to_first_order(const LagrangianSpec& spec, int max_order) {
    const std::vector<Expr> el = euler_lagrange_all(spec, max_order);
    const int n = spec.n_coords;
    FirstOrderSystem sys;
    sys.n_coords = n;
    for (int j = 0; j < n; ++j) {
        int r = -1;
        for (const auto& e : el) r = std::max(r, e.max_order_of(j));
        if (r < 1) {
            throw Error(ErrorKind::NotReducible,
                        "coordinate " + std::to_string(j) + " has no derivative in the equations of motion");
        }
        sys.top_orders.push_back(r);
    }
    auto is_top = [&](JetVar v) { return v.order == sys.top_orders[static_cast<std::size_t>(v.coord)]; };
    auto uses_top = [&](const Expr& e) {
        const auto vars = e.jet_vars();
        return std::any_of(vars.begin(), vars.end(), is_top);
    };

    sys.leading.assign(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        Expr rest = el[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const JetVar top{j, sys.top_orders[static_cast<std::size_t>(j)]};
            Expr m = partial(el[static_cast<std::size_t>(i)], top);
            if (uses_top(m)) {
                throw Error(ErrorKind::NotReducible, "equation " + std::to_string(i) +
                                                         " is not linear in the highest derivatives");
            }
            rest -= m * Expr::jet(top);
            sys.leading[i][j] = std::move(m);
        }
        if (uses_top(rest)) {
            throw Error(ErrorKind::NotReducible, "equation " + std::to_string(i) +
                                                     " is not linear in the highest derivatives");
        }
        sys.rest.push_back(std::move(rest));
    }

    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < sys.top_orders[static_cast<std::size_t>(j)]; ++k) sys.state_layout.push_back({j, k});
    }

    // Symbolic inversion: constant matrices, or diagonal single-term entries.
    std::optional<std::vector<Expr>> tops;
    bool constant = true;
    bool diagonal = true;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const Expr& m = sys.leading[i][j];
            if (!m.is_constant()) constant = false;
            if (i != j && !m.is_zero()) diagonal = false;
        }
    }
    if (constant) {
        RationalMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) m(i, j) = *sys.leading[i][j].constant_value();
        }
        const auto inv = inverse(m);
        if (!inv) throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient matrix is singular");
        tops.emplace(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) (*tops)[j] -= sys.rest[i].scaled((*inv)(j, i));
        }
    } else if (diagonal && single_term_diagonal(sys.leading)) {
        tops.emplace(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) (*tops)[j] = -(sys.rest[j] * sys.leading[j][j].pow(Rational(-1)));
    }
    if (tops) {
        for (const JetVar v : sys.state_layout) {
            sys.rhs.push_back(v.order + 1 == sys.top_orders[static_cast<std::size_t>(v.coord)]
                                  ? (*tops)[static_cast<std::size_t>(v.coord)]
                                  : Expr::var(v.coord, v.order + 1));
        }
    }
    return sys;
}

// ------------------------------------------------------------------ evaluator

SystemEvaluator::SystemEvaluator(const FirstOrderSystem& sys) : dim_(sys.dim()), n_(sys.n_coords) {
    extended_ = sys.state_layout;
    for (int j = 0; j < n_; ++j) extended_.push_back({j, sys.top_orders[static_cast<std::size_t>(j)]});
    for (std::size_t s = 0; s < dim_; ++s) {
        const JetVar v = sys.state_layout[s];
        if (v.order + 1 == sys.top_orders[static_cast<std::size_t>(v.coord)]) top_slot_.push_back(s);
    }
    if (sys.symbolic()) {
        for (const auto& e : sys.rhs) rhs_.emplace_back(e, sys.state_layout);
    } else {
        for (const auto& row : sys.leading) {
            std::vector<CompiledExpr> r;
            for (const auto& e : row) r.emplace_back(e, sys.state_layout);
            leading_.push_back(std::move(r));
        }
        for (const auto& e : sys.rest) rest_.emplace_back(e, sys.state_layout);
    }
}

void SystemEvaluator::tops(double t, const double* state, double* out) const {
    // Solve leading * top = -rest by Gaussian elimination with partial pivoting.
    const auto n = static_cast<std::size_t>(n_);
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = leading_[i][j](t, state);
        a[i][n] = -rest_[i](t, state);
    }
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i) {
            if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
        }
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        if (a[c][c] == 0.0) break;
        for (std::size_t i = c + 1; i < n; ++i) {
            const double f = a[i][c] / a[c][c];
            for (std::size_t j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    if (!(std::abs(det) >= 1e-9)) {
        throw Error(ErrorKind::DegenerateLeadingCoefficient, "leading coefficient determinant below 1e-9");
    }
    for (std::size_t c = n; c-- > 0;) {
        double v = a[c][n];
        for (std::size_t j = c + 1; j < n; ++j) v -= a[c][j] * out[j];
        out[c] = v / a[c][c];
    }
}

void SystemEvaluator::derivative(double t, const double* state, double* out) const {
    if (!rhs_.empty()) {
        for (std::size_t s = 0; s < dim_; ++s) out[s] = rhs_[s](t, state);
        return;
    }
    std::vector<double> top(static_cast<std::size_t>(n_));
    tops(t, state, top.data());
    for (std::size_t s = 0; s + 1 < dim_; ++s) out[s] = state[s + 1];
    for (std::size_t j = 0; j < top_slot_.size(); ++j) out[top_slot_[j]] = top[j];
}

std::vector<double> SystemEvaluator::extended_values(double t, const std::vector<double>& state) const {
    std::vector<double> d(dim_);
    derivative(t, state.data(), d.data());
    std::vector<double> out = state;
    for (std::size_t s : top_slot_) out.push_back(d[s]);
    return out;
}

// ---------------------------------------------------------------- integration

Trajectory integrate(const SystemEvaluator& sys, const std::vector<double>& initial, double t_end, double step) {
    if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::InvalidArgument, "t_end must be >= 0");
    if (initial.size() != sys.dim()) {
        throw Error(ErrorKind::InvalidArgument, "initial state has " + std::to_string(initial.size()) +
                                                    " entries, expected " + std::to_string(sys.dim()));
    }
    if (!std::all_of(initial.begin(), initial.end(), [](double v) { return std::isfinite(v); })) {
        throw Error(ErrorKind::InvalidArgument, "initial state is not finite");
    }
    const auto steps = t_end == 0.0 ? 0L : static_cast<long>(std::ceil(t_end / step - 1e-9));
    Trajectory traj;
    traj.step = steps == 0 ? step : t_end / static_cast<double>(steps);
    const double h = traj.step;
    const std::size_t n = sys.dim();

    // Surfaces a degenerate leading coefficient at the initial state.
    std::vector<double> k1(n);
    sys.derivative(0.0, initial.data(), k1.data());

    traj.times.push_back(0.0);
    traj.states.push_back(initial);
    std::vector<double> y = initial;
    std::vector<double> k2(n);
    std::vector<double> k3(n);
    std::vector<double> k4(n);
    std::vector<double> tmp(n);
    for (long s = 0; s < steps; ++s) {
        const double t = static_cast<double>(s) * h;
        try {
            sys.derivative(t, y.data(), k1.data());
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
            sys.derivative(t + 0.5 * h, tmp.data(), k2.data());
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
            sys.derivative(t + 0.5 * h, tmp.data(), k3.data());
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
            sys.derivative(t + h, tmp.data(), k4.data());
        } catch (const Error&) {
            traj.nonfinite = true;
            break;
        }
        for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); })) {
            traj.nonfinite = true;
            break;
        }
        traj.times.push_back(static_cast<double>(s + 1) * h);
        traj.states.push_back(y);
    }
    return traj;
}

DriftReport drift(const SystemEvaluator& sys, const Trajectory& traj, const Expr& q) {
    const CompiledExpr f(q, sys.extended_layout());
    DriftReport r;
    if (traj.states.empty()) return r;
    r.initial = f(traj.times.front(), sys.extended_values(traj.times.front(), traj.states.front()).data());
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        double v;
        try {
            v = f(traj.times[s], sys.extended_values(traj.times[s], traj.states[s]).data());
        } catch (const Error&) {
            v = std::numeric_limits<double>::infinity();
        }
        const double d = std::abs(v - r.initial);
        if (!(d <= r.max_abs)) r.max_abs = std::isnan(d) ? std::numeric_limits<double>::infinity() : d;
    }
    r.max_rel = r.max_abs / std::max(1.0, std::abs(r.initial));
    return r;
}

}  // namespace noether
