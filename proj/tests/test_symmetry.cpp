#include <gtest/gtest.h>

#include "noether/error.hpp"
#include "noether/parse.hpp"
#include "noether/symmetry.hpp"

using namespace noether;

namespace {

const std::vector<std::string> xy{"x", "y"};

Expr P(const std::string& s) { return parse(s, xy); }

LagrangianSpec spec(int n, int order, const std::string& l) { return LagrangianSpec::make(n, order, P(l)); }

std::size_t count(const LagrangianSpec& s, const AnsatzConfig& c) { return find_symmetries(s, c).generators.size(); }

}  // namespace

TEST(Symmetry, Prolongation) {
    // zeta = t: pr_1 = D(-x' t) + x'' t = -x'
    EXPECT_EQ(prolongation(P("t"), Expr(), 0, 1), P("-x'"));
    EXPECT_EQ(prolongation(Expr(), P("t*x"), 0, 2), P("t*x'' + 2*x'"));
    EXPECT_EQ(characteristics(P("t"), {P("x"), Expr()}), (std::vector<Expr>{P("x - t*x'"), P("-t*y'")}));
}

TEST(Symmetry, DeterminingIdentityOfKnownSymmetries) {
    const auto spin = spec(1, 2, "1/2*(x''^2 - x'^2)");
    EXPECT_TRUE(determining_identity(spin, Expr(), {Expr(1)}, Expr()).is_zero());
    EXPECT_TRUE(determining_identity(spin, Expr(1), {Expr()}, Expr()).is_zero());
    EXPECT_TRUE(determining_identity(spin, Expr(), {P("sin(t)")}, P("-x'*sin(t)")).is_zero());
    EXPECT_TRUE(determining_identity(spin, Expr(), {P("t")}, P("-x")).is_zero());
    EXPECT_FALSE(determining_identity(spin, Expr(), {P("x")}, Expr()).is_zero());
    const DeterminingOperator op(spin);
    EXPECT_EQ(op.apply(Expr(), {P("x")}, Expr()), determining_identity(spin, Expr(), {P("x")}, Expr()));
}

TEST(Symmetry, FreeParticleHasFiveVariationalSymmetries) {
    AnsatzConfig c;
    c.frequencies = std::vector<Rational>{};
    c.gauge_t_degree = 1;
    c.gauge_x_degree = 2;
    EXPECT_EQ(count(spec(1, 1, "x'^2/2"), c), 5u);
}

TEST(Symmetry, CharacteristicFrequencies) {
    const auto spin = characteristic_frequencies(spec(1, 2, "1/2*(x''^2 - x'^2)"));
    EXPECT_TRUE(spin.linear_constant);
    EXPECT_EQ(spin.frequencies, std::vector<Rational>{Rational(1)});
    EXPECT_FALSE(spin.unresolved_roots);

    const auto cs = characteristic_frequencies(spec(2, 2, "(y'*x'' - x'*y'') + 1/2*(x'^2 + y'^2)"));
    EXPECT_EQ(cs.frequencies, std::vector<Rational>{Rational(1, 2)});
    EXPECT_EQ(cs.characteristic, "4*r^6 + r^4");

    const auto irrational = characteristic_frequencies(spec(1, 2, "x''^2/2 - x'^2"));
    EXPECT_TRUE(irrational.unresolved_roots);
    EXPECT_TRUE(irrational.frequencies.empty());

    EXPECT_FALSE(characteristic_frequencies(spec(1, 2, "x'^4 + 3*x^2*x''^2")).linear_constant);
}

TEST(Symmetry, GeneratorCounts) {
    AnsatzConfig c;
    EXPECT_EQ(count(spec(1, 2, "1/2*(x''^2 - x'^2)"), c), 5u);
    EXPECT_EQ(count(spec(1, 2, "1/2*(x''^2 - x^2)"), c), 5u);
    EXPECT_EQ(count(spec(2, 2, "(y'*x'' - x'*y'') + 1/2*(x'^2 + y'^2)"), c), 8u);
}

// With frequency 1 the planar particle also has sin t / cos t translations
// in each coordinate separately: 10, not 6.
TEST(Symmetry, PlanarSpinningParticleDependsOnFrequencies) {
    const auto planar = spec(2, 2, "1/2*(x''^2 + y''^2 - x'^2 - y'^2)");
    AnsatzConfig c;
    c.frequencies = std::vector<Rational>{};
    EXPECT_EQ(count(planar, c), 6u);
    c.frequencies = std::vector<Rational>{Rational(1)};
    EXPECT_EQ(count(planar, c), 10u);
}

TEST(Symmetry, AnsatzLayout) {
    AnsatzConfig c;
    c.frequencies = std::vector<Rational>{};
    const auto a = build_ansatz(spec(1, 2, "1/2*(x''^2 - x'^2)"), c);
    const auto cols = a.columns();
    ASSERT_EQ(cols.size(), a.unknown_count());
    EXPECT_EQ(cols.front().component, Component::Gauge);
    EXPECT_EQ(cols.back().component, Component::Zeta);
    for (const auto& g : a.gauge_basis) EXPECT_FALSE(g.is_constant());
    EXPECT_EQ(a.zeta_basis.size(), 3u);  // 1, t, t^2
}

TEST(Symmetry, ExtractRejectsBadVectors) {
    const auto s = spec(1, 2, "1/2*(x''^2 - x'^2)");
    AnsatzConfig c;
    const auto a = build_ansatz(s, c);
    try {
        extract_generators(s, a, {RationalVector(a.unknown_count())});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument);
    }
    const auto cols = a.columns();
    RationalVector v(a.unknown_count());
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].component == Component::Eta && cols[i].basis == P("x")) v[i] = Rational(1);
    }
    try {
        extract_generators(s, a, {v});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::VerificationFailure);
    }
}

TEST(Symmetry, SystemRowsAreDistinctMonomials) {
    const auto s = spec(1, 2, "1/2*(x''^2 - x'^2)");
    const auto search = find_symmetries(s, AnsatzConfig{});
    const auto& rows = search.system.row_monomials;
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(compare(rows[i - 1], rows[i]), 0);
    EXPECT_EQ(search.system.matrix.rows(), rows.size());
    for (const auto& v : search.nullspace) {
        for (const auto& x : search.system.matrix.multiply(v)) EXPECT_TRUE(x.is_zero());
    }
}
