#pragma once

#include <optional>
#include <string>
#include <vector>

#include "noether/calculus.hpp"
#include "noether/expr.hpp"
#include "noether/linsolve.hpp"

namespace noether {

/// Degrees and switches for the finite ansatz of (zeta, eta_i, G).
struct AnsatzConfig {
    int zeta_degree = 2;
    int eta_t_degree = 1;
    int eta_x_degree = 1;
    bool inverse_coords = false;
    bool zeta_depends_on_x = false;
    /// nullopt derives frequencies from the characteristic roots of the EL system.
    std::optional<std::vector<Rational>> frequencies;
    int gauge_t_degree = 1;
    int gauge_x_degree = 1;
    int gauge_v_degree = 1;
    int max_order = kDefaultOrderCap;
};

/// Result of the characteristic-root analysis of a linear constant-coefficient
/// EL system. Frequencies are the distinct nonzero |Re| and |Im| parts of
/// rational (or purely imaginary rational) roots.
struct FrequencyAnalysis {
    bool linear_constant = false;
    std::string characteristic;  // det of the symbol matrix, in r
    std::vector<Rational> frequencies;
    bool unresolved_roots = false;
};

FrequencyAnalysis characteristic_frequencies(const LagrangianSpec& spec, int max_order = kDefaultOrderCap);

enum class Component { Gauge, Eta, Zeta };

struct AnsatzColumn {
    Component component;
    int coord;  // eta only
    Expr basis;
};

/// Basis functions for each component. Unknown coefficients are implicit:
/// one per basis element, laid out by columns().
struct GeneratorAnsatz {
    int n_coords = 1;
    std::vector<Expr> zeta_basis;
    std::vector<std::vector<Expr>> eta_basis;
    std::vector<Expr> gauge_basis;
    std::vector<Rational> frequencies;

    /// Column order of the determining system: gauge, then eta per
    /// coordinate, then zeta. Free columns of the RREF therefore land on
    /// eta/zeta unknowns and each gauge function is solved for.
    std::vector<AnsatzColumn> columns() const;
    std::size_t unknown_count() const;
};

GeneratorAnsatz build_ansatz(const LagrangianSpec& spec, const AnsatzConfig& config);

/// Homogeneous linear system: one row per distinct monomial of the expanded
/// determining identity.
struct DeterminingSystem {
    std::size_t unknown_count = 0;
    RationalMatrix matrix;
    std::vector<Monomial> row_monomials;
};

DeterminingSystem assemble_system(const LagrangianSpec& spec, const GeneratorAnsatz& ansatz,
                                  int max_order = kDefaultOrderCap);

struct SymmetryGenerator {
    Expr zeta;
    std::vector<Expr> eta;
    Expr gauge;
    std::vector<Expr> characteristics;  // Q_i = eta_i - x_i' zeta
};

/// Q_i = eta_i - x_i' * zeta.
std::vector<Expr> characteristics(const Expr& zeta, const std::vector<Expr>& eta);

/// The k-th prolongation coefficient D_t^k(eta_i - x_i' zeta) + x_i^(k+1) zeta.
Expr prolongation(const Expr& zeta, const Expr& eta_i, int coord, int k, int max_order = kDefaultOrderCap);

/// Evaluates the determining identity
///   sum_i sum_k dL/dx_i^(k) * pr_k + dL/dt zeta + L D_t zeta - D_t G.
/// The result is the zero expression exactly when (zeta, eta, G) is a
/// variational symmetry with gauge G.
Expr determining_identity(const LagrangianSpec& spec, const Expr& zeta, const std::vector<Expr>& eta,
                          const Expr& gauge, int max_order = kDefaultOrderCap);

/// Caches the partial derivatives of L so the identity can be applied to
/// many basis elements.
class DeterminingOperator {
public:
    DeterminingOperator(const LagrangianSpec& spec, int max_order = kDefaultOrderCap);
    Expr apply(const Expr& zeta, const std::vector<Expr>& eta, const Expr& gauge) const;

private:
    LagrangianSpec spec_;
    int max_order_;
    std::vector<std::vector<Expr>> partials_;  // [coord][order]
    Expr partial_t_;
};

/// Instantiates a coefficient vector into a concrete generator.
SymmetryGenerator instantiate(const GeneratorAnsatz& ansatz, const RationalVector& coefficients);

/// Instantiates each vector and re-verifies it against the identity.
/// Throws Error(VerificationFailure) if any vector fails and
/// Error(InvalidArgument) for a zero vector.
std::vector<SymmetryGenerator> extract_generators(const LagrangianSpec& spec, const GeneratorAnsatz& ansatz,
                                                  const std::vector<RationalVector>& nullspace_basis,
                                                  int max_order = kDefaultOrderCap);

struct SymmetrySearch {
    FrequencyAnalysis frequency;
    GeneratorAnsatz ansatz;
    DeterminingSystem system;
    std::vector<RationalVector> nullspace;
    std::vector<SymmetryGenerator> generators;
};

/// Full pipeline: frequencies -> ansatz -> system -> nullspace -> generators.
SymmetrySearch find_symmetries(const LagrangianSpec& spec, const AnsatzConfig& config);

}  // namespace noether
