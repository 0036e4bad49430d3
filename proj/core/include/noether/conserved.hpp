#pragma once

#include <cstdint>
#include <vector>

#include "noether/calculus.hpp"
#include "noether/symmetry.hpp"

namespace noether {

struct ConservedQuantity {
    Expr expr;
    SymmetryGenerator generator;
    bool checked_offshell = false;
    bool checked_numeric = false;
};

/// Global sign sigma in D_t I + sigma * sum_i Q_i E_i(L) = 0. Fixed once by
/// the free particle L = x'^2/2 with eta = 1, whose charge must be the momentum.
int noether_sign();

/// Second-order bracket
///   zeta L + sum_i [Q_i dL/dx_i' + D_t Q_i dL/dx_i'' - Q_i D_t(dL/dx_i'')] - G.
/// Requires spec.order <= 2.
Expr noether_bracket_order2(const LagrangianSpec& spec, const SymmetryGenerator& g,
                            int max_order = kDefaultOrderCap);

/// Any order:
///   zeta L - sum_i sum_k sum_{j=1..k} (-1)^j D^(k-j) Q_i D^(j-1)(dL/dx_i^(k)) - G.
Expr noether_charge_general(const LagrangianSpec& spec, const SymmetryGenerator& g,
                            int max_order = kDefaultOrderCap);

/// The charge of a generator. For second-order Lagrangians the bracket and the
/// general formula are both evaluated and must agree (VerificationFailure
/// otherwise).
ConservedQuantity noether_charge(const LagrangianSpec& spec, const SymmetryGenerator& g,
                                 int max_order = kDefaultOrderCap);

/// D_t I + sigma * sum_i Q_i E_i(L), canonicalized.
Expr noether_residual(const LagrangianSpec& spec, const Expr& charge, const std::vector<Expr>& characteristics,
                      int max_order = kDefaultOrderCap);

bool verify_offshell(const LagrangianSpec& spec, const Expr& charge, const std::vector<Expr>& characteristics,
                     int max_order = kDefaultOrderCap);

/// Sets q.checked_offshell to the outcome.
bool verify_offshell(const LagrangianSpec& spec, ConservedQuantity& q, int max_order = kDefaultOrderCap);

/// Floating-point spot check of the Noether identity at seeded random jet
/// points. D_t I is formed from central differences of I rather than from
/// the symbolic total derivative. Sets q.checked_numeric.
bool numeric_spot_check(const LagrangianSpec& spec, ConservedQuantity& q, std::uint64_t seed, int samples = 8,
                        int max_order = kDefaultOrderCap);

struct SpanMatch {
    bool contained = false;
    std::vector<Rational> coefficients;  // one per basis charge
    Rational constant;
};

/// Decides candidate = sum_j a_j I_j + c over the rationals. The coefficients
/// of every monomial must match, which gives an exact linear system in
/// (a_j, c); a solution is then re-verified structurally.
SpanMatch span_contains(const std::vector<Expr>& basis, const Expr& candidate);
SpanMatch span_contains(const std::vector<ConservedQuantity>& basis, const Expr& candidate);

}  // namespace noether
