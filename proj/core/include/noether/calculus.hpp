#pragma once

#include <vector>

#include "noether/expr.hpp"

namespace noether {

/// L(x, x', ..., x^(N); t) over n coordinates.
struct LagrangianSpec {
    int n_coords = 1;
    int order = 1;
    Expr lagrangian;

    /// Validates order >= 1 and that no jet variable exceeds `order`.
    static LagrangianSpec make(int n_coords, int order, Expr lagrangian);
};

/// Partial derivative treating every jet variable as independent.
Expr partial(const Expr& e, JetVar v);

/// Explicit time derivative: acts on t powers and on the t-part of
/// transcendental arguments only.
Expr partial_t(const Expr& e);

/// D_t e = de/dt + sum x^(k+1) de/dx^(k). Throws Error(OrderCapExceeded)
/// when a derivative beyond max_order would be introduced.
Expr total_derivative(const Expr& e, int max_order = kDefaultOrderCap);

/// D_t applied `times` times.
Expr total_derivative(const Expr& e, int times, int max_order);

/// E_i(L) = sum_k (-1)^k D_t^k dL/dx_i^(k).
Expr euler_lagrange(const LagrangianSpec& spec, int coord, int max_order = kDefaultOrderCap);

std::vector<Expr> euler_lagrange_all(const LagrangianSpec& spec, int max_order = kDefaultOrderCap);

}  // namespace noether
