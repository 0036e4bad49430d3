#include <functional>

#include <gtest/gtest.h>

#include "noether/conserved.hpp"
#include "noether/cyclic.hpp"
#include "noether/error.hpp"
#include "noether/parse.hpp"

using namespace noether;

namespace {

const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> uv{"u", "v"};

Expr P(const std::string& s) { return parse(s, xy); }
Expr U(const std::string& s) { return parse(s, uv); }

PointTransformation map(const std::string& t_of, const std::vector<std::string>& x_of) {
    PointTransformation tr;
    tr.t_of = U(t_of);
    for (const auto& x : x_of) tr.x_of.push_back(U(x));
    return tr;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error";
    return ErrorKind::InputError;
}

}  // namespace

TEST(Cyclic, HigherDerivativeOscillator) {
    const auto l = LagrangianSpec::make(1, 2, P("1/2*(x''^2 - x^2)"));
    const auto tr = map("t", {"u*exp(t)"});
    const auto primed = transform_lagrangian(l, tr);
    EXPECT_EQ(primed.lagrangian, U("1/2*((u''*exp(t) + 2*u'*exp(t) + u*exp(t))^2 - u^2*exp(2*t))"));
    EXPECT_FALSE(is_cyclic(primed, 0));

    const Expr gauge = P("x'*exp(t) - x*exp(t)");
    const auto f = lift_gauge(gauge, tr, 0);
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(*f, U("-u*u'*exp(2*t)"));
    EXPECT_TRUE(gauge_lift_check(gauge, *f, tr, 0));
    EXPECT_FALSE(gauge_lift_check(gauge, U("u*u'*exp(2*t)"), tr, 0));

    const auto eq = equivalent_lagrangian(primed, *f);
    EXPECT_EQ(eq.lagrangian, U("exp(2*t)/2*(u''^2 + 2*u'^2 + 4*u''*u')"));
    EXPECT_TRUE(is_cyclic(eq, 0));
    EXPECT_EQ(euler_lagrange(eq, 0), euler_lagrange(primed, 0));

    const Expr p = ostrogradsky_momentum(eq, 0);
    EXPECT_EQ(p, U("-exp(2*t)*(u''' + 2*u'' + 2*u')"));
    PrimedSubstitution sub(tr);
    EXPECT_EQ(sub.apply(P("(x - x' + x'' - x''')*exp(t)")), p);
}

TEST(Cyclic, QuarticExample) {
    const auto l = LagrangianSpec::make(1, 2, P("x'^4 + 3*x^2*x''^2"));
    const auto tr = map("-1/u", {"t*u^(-3/2)"});
    PrimedSubstitution sub(tr);
    EXPECT_EQ(sub.time_factor(), U("u'/u^2"));
    const auto primed = transform_lagrangian(l, tr);
    const Expr f = U("3*t^2/(u'^2*u) - 9/2*t^3/(u'*u^2) + 9/4*t^4/u^3");
    EXPECT_TRUE(gauge_lift_check(P("3*x^2*x'^2"), f, tr, 0));
    const auto eq = equivalent_lagrangian(primed, f);
    EXPECT_EQ(eq.lagrangian, U("3*u''^2*t^2/u'^5 + 1/u'^3"));
    EXPECT_TRUE(is_cyclic(eq, 0));

    const Expr i1 = P("3*x^3*x'' - x^2*x'^2 + (2*x*x'^3 - 7*x^2*x'*x'' - 3*x^3*x''')*t"
                      " + (-x'^4 - x^2*x''^2 + 4*x*x'^2*x'' + 2*x^2*x'*x''')*t^2");
    const auto m = span_contains(std::vector<Expr>{ostrogradsky_momentum(eq, 0)}, sub.apply(i1));
    ASSERT_TRUE(m.contained);
    EXPECT_EQ(m.coefficients[0], Rational(1, 3));
}

TEST(Cyclic, PolarChernSimons) {
    const auto l = LagrangianSpec::make(2, 2, P("(y'*x'' - x'*y'') + 1/2*(x'^2 + y'^2)"));
    const auto tr = map("t", {"v*sin(u)", "v*cos(u)"});
    const auto primed = transform_lagrangian(l, tr);
    EXPECT_EQ(primed.lagrangian, U("(u'^3*v^2 + 2*u'*v'^2 + u''*v'*v - u'*v''*v) + 1/2*(v'^2 + u'^2*v^2)"));
    EXPECT_TRUE(is_cyclic(primed, 0));
    EXPECT_FALSE(is_cyclic(primed, 1));
    PrimedSubstitution sub(tr);
    const Expr rotation = P("2*(x'^2/2 + y'^2/2 - x*x'' - y*y'') + (x'*y - y'*x)");
    const auto m = span_contains(std::vector<Expr>{ostrogradsky_momentum(primed, 0)}, sub.apply(rotation));
    ASSERT_TRUE(m.contained);
    EXPECT_EQ(m.coefficients[0], Rational(1));
}

TEST(Cyclic, IdentityMapPreservesEverything) {
    const auto l = LagrangianSpec::make(2, 2, P("(y'*x'' - x'*y'') + 1/2*(x'^2 + y'^2)"));
    const auto primed = transform_lagrangian(l, PointTransformation::identity(2));
    EXPECT_EQ(primed.lagrangian, l.lagrangian);
    EXPECT_EQ(ostrogradsky_momentum(primed, 0), P("-2*y'' + x'"));
}

TEST(Cyclic, NaiveAntiderivative) {
    EXPECT_EQ(naive_antiderivative(P("t*x^2 + x'"), {0, 0}), P("t*x^3/3 + x*x'"));
    EXPECT_EQ(naive_antiderivative(P("x^(-1/2)"), {0, 0}), P("2*x^(1/2)"));
    EXPECT_FALSE(naive_antiderivative(P("x^(-1)"), {0, 0}).has_value());
    EXPECT_FALSE(naive_antiderivative(P("sin(x)"), {0, 0}).has_value());
}

TEST(Cyclic, Errors) {
    EXPECT_EQ(kind_of([] { PrimedSubstitution(map("t + sin(t)", {"u"})); }), ErrorKind::NonInvertibleTimeFactor);
    EXPECT_EQ(kind_of([] { PrimedSubstitution(map("sin(t)", {"u"})); }), ErrorKind::NonInvertibleTimeFactor);
    EXPECT_EQ(kind_of([] { PrimedSubstitution(map("t", {"u + 1"})).apply(P("x^(1/2)")); }),
              ErrorKind::SubstitutionDomainError);
    EXPECT_EQ(kind_of([] { PrimedSubstitution(map("t", {"u^2"})).apply(P("sin(x)")); }),
              ErrorKind::SubstitutionDomainError);
}
