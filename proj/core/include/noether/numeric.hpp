#pragma once

#include <optional>
#include <vector>

#include "noether/calculus.hpp"
#include "noether/expr.hpp"

namespace noether {

/// Flattened Expr for repeated floating-point evaluation against a fixed
/// variable layout. Same domain rules as eval_numeric.
class CompiledExpr {
public:
    CompiledExpr() = default;
    /// Throws Error(UnboundJetVar) if e uses a jet variable outside `layout`.
    CompiledExpr(const Expr& e, const std::vector<JetVar>& layout);

    double operator()(double t, const double* values) const;

private:
    struct Factor {
        int slot;
        long ipow;
        double fpow;
        bool integral;
    };
    struct Arg {
        double t_coeff = 0.0;
        std::vector<std::pair<int, double>> slots;
    };
    struct CTerm {
        double coeff;
        Factor t;
        std::vector<Factor> factors;
        bool has_exp = false;
        Arg exp_arg;
        TrigKind trig = TrigKind::None;
        Arg trig_arg;
    };
    std::vector<CTerm> terms_;
};

/// Explicit form x_j^(r_j) = f_j(state, t) of the EL system with state
/// (x_j, x_j', ..., x_j^(r_j - 1)) per coordinate.
struct FirstOrderSystem {
    int n_coords = 0;
    std::vector<JetVar> state_layout;
    std::vector<int> top_orders;  // r_j per coordinate
    /// d(state)/dt. Filled when the leading matrix could be inverted
    /// symbolically; empty otherwise (numeric solve of leading * top = -rest).
    std::vector<Expr> rhs;
    std::vector<std::vector<Expr>> leading;  // dE_i/dx_j^(r_j)
    std::vector<Expr> rest;                  // E_i - sum_j leading_ij x_j^(r_j)

    std::size_t dim() const { return state_layout.size(); }
    bool symbolic() const { return !rhs.empty(); }
};

/// Throws NotReducible when some EL expression is not linear in the highest
/// derivatives and DegenerateLeadingCoefficient for a constant singular
/// leading matrix.
FirstOrderSystem reduce_to_first_order(const LagrangianSpec& spec, int max_order = kDefaultOrderCap);

/// Compiled right-hand side. Also yields the top derivatives, so that jets up
/// to order r_j can be evaluated along a trajectory.
class SystemEvaluator {
public:
    explicit SystemEvaluator(const FirstOrderSystem& sys);

    std::size_t dim() const { return dim_; }
    /// Layout of state followed by the top derivative of every coordinate.
    const std::vector<JetVar>& extended_layout() const { return extended_; }
    /// Fills out[0..dim) with d(state)/dt. Throws DegenerateLeadingCoefficient
    /// if a numeric leading matrix has |det| < 1e-9.
    void derivative(double t, const double* state, double* out) const;
    /// state followed by the top derivatives.
    std::vector<double> extended_values(double t, const std::vector<double>& state) const;

private:
    void tops(double t, const double* state, double* out) const;

    std::size_t dim_;
    int n_;
    std::vector<JetVar> extended_;
    std::vector<CompiledExpr> rhs_;
    std::vector<std::vector<CompiledExpr>> leading_;
    std::vector<CompiledExpr> rest_;
    std::vector<std::size_t> top_slot_;  // index in derivative output of each top
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    double step = 0.0;
    bool nonfinite = false;  // integration stopped early
};

/// Classical fixed-step RK4 on [0, t_end]. The step is shrunk slightly if
/// needed so that t_end is hit exactly. Stops with nonfinite = true on a
/// non-finite state or a domain error.
Trajectory integrate(const SystemEvaluator& sys, const std::vector<double>& initial, double t_end, double step);

struct DriftReport {
    double initial = 0.0;
    double max_abs = 0.0;
    double max_rel = 0.0;  // max_abs / max(1, |I(0)|)
};

/// Throws UnboundJetVar if q uses a jet outside the extended layout.
DriftReport drift(const SystemEvaluator& sys, const Trajectory& traj, const Expr& q);

}  // namespace noether
