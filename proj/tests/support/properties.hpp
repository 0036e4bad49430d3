#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "noether/calculus.hpp"
#include "noether/error.hpp"
#include "noether/linsolve.hpp"
#include "noether/parse.hpp"
#include "random_expr.hpp"

// Randomized laws shared by the gtest property suites and the acceptance
// binary. A law returns a description of the counterexample, or nullopt.
namespace noether::proptest {

using Law = std::function<std::optional<std::string>(Gen&)>;

struct PropertyOutcome {
    int cases = 0;
    int failures = 0;
    std::string first_failure;
};

inline PropertyOutcome run_property(const Law& law, int cases, std::uint64_t seed) {
    PropertyOutcome out;
    for (int i = 0; i < cases; ++i) {
        Gen g(seed * 1000003u + static_cast<std::uint64_t>(i));
        std::optional<std::string> bad;
        try {
            bad = law(g);
        } catch (const std::exception& e) {
            bad = std::string("exception: ") + e.what();
        }
        ++out.cases;
        if (bad) {
            if (out.failures == 0) out.first_failure = "case " + std::to_string(i) + ": " + *bad;
            ++out.failures;
        }
    }
    return out;
}

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"x", "y"};
    return n;
}

inline bool close(double a, double b, double rel = 1e-10) {
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

// E_i(D_t F) = 0 for every F.
inline std::optional<std::string> law_el_annihilates_total_derivative(Gen& g) {
    ExprShape s;
    s.n_coords = g.uniform(1, 2);
    s.max_order = g.uniform(0, 2);
    s.coordinate_args = true;
    const Expr f = g.expr(s);
    const Expr l = total_derivative(f);
    const int order = std::max(1, l.max_order());
    const auto spec = LagrangianSpec::make(s.n_coords, order, l);
    for (int c = 0; c < s.n_coords; ++c) {
        const Expr e = euler_lagrange(spec, c, 12);
        if (!e.is_zero()) return "E(D_t F) != 0 for F = " + print(f, names()) + ": " + print(e, names());
    }
    return std::nullopt;
}

// D(fg) = D(f) g + f D(g).
inline std::optional<std::string> law_leibniz(Gen& g) {
    ExprShape s;
    s.n_coords = 2;
    s.coordinate_args = true;
    const Expr f = g.expr(s), h = g.expr(s);
    const Expr lhs = total_derivative(f * h);
    const Expr rhs = total_derivative(f) * h + f * total_derivative(h);
    if (lhs != rhs) return "Leibniz fails for f = " + print(f, names()) + ", g = " + print(h, names());
    const JetVar v{g.uniform(0, 1), g.uniform(0, 2)};
    if (partial(f * h, v) != partial(f, v) * h + f * partial(h, v)) return "partial Leibniz fails";
    return std::nullopt;
}

// d/dx^(k) D_t = D_t d/dx^(k) + d/dx^(k-1), d/dt D_t = D_t d/dt, and partials commute.
inline std::optional<std::string> law_commutation(Gen& g) {
    ExprShape s;
    s.n_coords = 2;
    s.coordinate_args = true;
    const Expr f = g.expr(s);
    const JetVar v{g.uniform(0, 1), g.uniform(0, 3)};
    Expr expected = total_derivative(partial(f, v));
    if (v.order > 0) expected += partial(f, {v.coord, v.order - 1});
    if (partial(total_derivative(f), v) != expected) {
        return "[d/dx^(k), D_t] fails for " + print(f, names());
    }
    if (partial_t(total_derivative(f)) != total_derivative(partial_t(f))) return "[d/dt, D_t] != 0";
    const JetVar w{g.uniform(0, 1), g.uniform(0, 2)};
    if (partial(partial(f, v), w) != partial(partial(f, w), v)) return "mixed partials differ";
    return std::nullopt;
}

inline std::optional<std::string> law_parse_print_roundtrip(Gen& g) {
    ExprShape s;
    s.n_coords = 2;
    s.max_order = 4;
    s.coordinate_args = true;
    const Expr e = g.expr(s);
    const std::string text = print(e, names());
    const Expr back = parse(text, names());
    if (back != e) return "round trip changed " + text + " into " + print(back, names());
    if (print(back, names()) != text) return "print not stable for " + text;
    return std::nullopt;
}

// Ring laws on canonical forms, cross-checked by floating-point evaluation.
inline std::optional<std::string> law_arithmetic(Gen& g) {
    ExprShape s;
    s.n_coords = 2;
    s.coordinate_args = true;
    const Expr a = g.expr(s), b = g.expr(s), c = g.expr(s);
    if (a + b != b + a || a * b != b * a) return "commutativity";
    if ((a + b) + c != a + (b + c) || (a * b) * c != a * (b * c)) return "associativity";
    if (a * (b + c) != a * b + a * c) return "distributivity";
    if (!(a - a).is_zero() || a + Expr() != a || a * Expr(1) != a) return "identities";
    const double t = g.real(-1.5, 1.5);
    const JetValues jv = g.jets(2, s.max_order);
    const double va = eval_numeric(a, t, jv), vb = eval_numeric(b, t, jv), vc = eval_numeric(c, t, jv);
    if (!close(eval_numeric(a + b, t, jv), va + vb)) return "numeric a+b";
    if (!close(eval_numeric(a * b, t, jv), va * vb)) return "numeric a*b";
    if (!close(eval_numeric(a * (b - c), t, jv), va * (vb - vc))) return "numeric a*(b-c)";
    if (!close(eval_numeric(a.pow(2), t, jv), va * va)) return "numeric a^2";
    return std::nullopt;
}

// A v = 0 exactly, basis size equals cols - rank (dense-Gauss oracle).
inline std::optional<std::string> law_nullspace(Gen& g) {
    const std::size_t rows = static_cast<std::size_t>(g.uniform(1, 9));
    const std::size_t cols = static_cast<std::size_t>(g.uniform(1, 9));
    const std::size_t r = static_cast<std::size_t>(g.uniform(0, static_cast<int>(std::min(rows, cols))));
    const RationalMatrix m = g.low_rank_matrix(rows, cols, r);
    const auto basis = nullspace(m);
    const std::size_t oracle = oracle_rank(m);
    if (basis.size() != cols - oracle) return "nullity mismatch";
    if (rank(m) != oracle) return "rank mismatch";
    for (const auto& v : basis) {
        for (const auto& x : m.multiply(v)) {
            if (!x.is_zero()) return "A v != 0";
        }
    }
    return std::nullopt;
}

// E_i(L + D_t F) = E_i(L).
inline std::optional<std::string> law_gauge_invariance(Gen& g) {
    ExprShape s;
    s.n_coords = g.uniform(1, 2);
    s.max_order = 2;
    s.coordinate_args = true;
    const Expr l = g.expr(s);
    s.max_order = g.uniform(0, 1);
    const Expr f = g.expr(s);
    const Expr lg = l + total_derivative(f);
    const int order = std::max({1, l.max_order(), lg.max_order()});
    const auto a = LagrangianSpec::make(s.n_coords, order, l);
    const auto b = LagrangianSpec::make(s.n_coords, order, lg);
    for (int c = 0; c < s.n_coords; ++c) {
        if (euler_lagrange(a, c, 12) != euler_lagrange(b, c, 12)) {
            return "gauge term changes E for F = " + print(f, names());
        }
    }
    return std::nullopt;
}

struct NamedLaw {
    const char* name;
    Law law;
};

inline std::vector<NamedLaw> all_laws() {
    return {
        {"el_annihilates_total_derivative", law_el_annihilates_total_derivative},
        {"leibniz", law_leibniz},
        {"commutation", law_commutation},
        {"parse_print_roundtrip", law_parse_print_roundtrip},
        {"arithmetic", law_arithmetic},
        {"nullspace", law_nullspace},
        {"gauge_invariance", law_gauge_invariance},
    };
}

}  // namespace noether::proptest
