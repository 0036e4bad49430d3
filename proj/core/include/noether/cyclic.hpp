#pragma once

#include <map>
#include <optional>
#include <vector>

#include "noether/calculus.hpp"

namespace noether {

/// Point transformation t = T(x', t'), x_i = X_i(x', t'). Primed variables
/// reuse the jet indices of the original coordinates and Expr::time() for t'.
struct PointTransformation {
    Expr t_of;
    std::vector<Expr> x_of;

    static PointTransformation identity(int n_coords);
    int n_coords() const { return static_cast<int>(x_of.size()); }
};

/// Re-expresses expressions over (x, x', ..., t) in primed variables by
/// substituting the forward map and its prolongation
///   x^(k) = D'(x^(k-1)) / D'T.
class PrimedSubstitution {
public:
    /// Throws NonInvertibleTimeFactor when D'T is not a single invertible term.
    explicit PrimedSubstitution(PointTransformation tr, int max_order = kDefaultOrderCap);

    const Expr& time_factor() const { return dt_; }
    const Expr& jet(JetVar v);
    /// Throws SubstitutionDomainError if a power or a transcendental argument
    /// has no image in the representable class.
    Expr apply(const Expr& e);

private:
    PointTransformation tr_;
    int max_order_;
    Expr dt_;
    Expr dt_inverse_;
    std::map<JetVar, Expr> jets_;
};

/// L' = L(x(x', t'), ...) * dt/dt'.
LagrangianSpec transform_lagrangian(const LagrangianSpec& spec, const PointTransformation& tr,
                                    int max_order = kDefaultOrderCap);

/// dL/dx_k = 0.
bool is_cyclic(const LagrangianSpec& spec, int k);

/// p_k = dL/dx_k' - D_t(dL/dx_k'') for a Lagrangian of order <= 2.
Expr ostrogradsky_momentum(const LagrangianSpec& spec, int k, int max_order = kDefaultOrderCap);

/// -dF/dx'_k equals G re-expressed in primed variables.
bool gauge_lift_check(const Expr& gauge, const Expr& lift, const PointTransformation& tr, int k,
                      int max_order = kDefaultOrderCap);

/// Term-by-term antiderivative with respect to v. Returns nullopt when a term
/// has exponent -1 in v or v appears inside a transcendental argument.
std::optional<Expr> naive_antiderivative(const Expr& e, JetVar v);

/// F with -dF/dx'_k = G', or nullopt if the naive antiderivative fails.
std::optional<Expr> lift_gauge(const Expr& gauge, const PointTransformation& tr, int k,
                               int max_order = kDefaultOrderCap);

/// L' + D_t' F.
LagrangianSpec equivalent_lagrangian(const LagrangianSpec& primed, const Expr& lift,
                                     int max_order = kDefaultOrderCap);

}  // namespace noether
