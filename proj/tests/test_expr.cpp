#include <cmath>

#include <gtest/gtest.h>

#include "noether/error.hpp"
#include "noether/expr.hpp"
#include "noether/parse.hpp"

using namespace noether;

namespace {

const std::vector<std::string> xy{"x", "y"};

Expr P(const std::string& s) { return parse(s, xy); }

ErrorKind kind_of(const std::string& text, const ParameterMap& params = {}) {
    try {
        parse(text, xy, params);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for " << text;
    return ErrorKind::InputError;
}

}  // namespace

TEST(Expr, CanonicalMergeAndCancel) {
    const Expr x = Expr::var(0);
    EXPECT_EQ(x + x, Expr(2) * x);
    EXPECT_TRUE((x * x - x.pow(2)).is_zero());
    EXPECT_EQ((x + 1) * (x - 1), x.pow(2) - 1);
    EXPECT_EQ(P("x*x^(1/2)"), P("x^(3/2)"));
    EXPECT_EQ(P("x^2/x"), x);
}

TEST(Expr, TrigCanonicalSign) {
    const auto w = LinearArg::time(Rational(1, 2));
    EXPECT_EQ(Expr::sin(-w), -Expr::sin(w));
    EXPECT_EQ(Expr::cos(-w), Expr::cos(w));
    EXPECT_EQ(P("sin(-t/2)"), -P("sin(t/2)"));
}

TEST(Expr, ExpFactorsCombine) {
    EXPECT_EQ(P("exp(t)*exp(t)"), P("exp(2*t)"));
    EXPECT_EQ(P("exp(t)*exp(-t)"), Expr(1));
    EXPECT_EQ(P("exp(t)^2"), P("exp(2*t)"));
}

TEST(Expr, TrigProductsAreLinearized) {
    EXPECT_EQ(P("sin(t)^2 + cos(t)^2"), Expr(1));
    EXPECT_EQ(P("2*sin(t)*cos(t)"), P("sin(2*t)"));
    EXPECT_EQ(P("sin(t)*sin(t)"), P("1/2 - cos(2*t)/2"));
}

TEST(Expr, Queries) {
    const Expr e = P("x''*y + t^2*x'");
    EXPECT_EQ(e.max_order(), 2);
    EXPECT_EQ(e.max_order_of(1), 0);
    EXPECT_TRUE(e.depends_on_time());
    EXPECT_EQ(e.jet_vars().size(), 3u);
    EXPECT_EQ(P("3/4").constant_value(), Rational(3, 4));
    EXPECT_FALSE(e.is_constant());
}

TEST(Expr, PowerOfSum) {
    EXPECT_EQ(P("(x + 1)^2"), P("x^2 + 2*x + 1"));
    EXPECT_EQ(P("(4*x^2*y)^(1/2)").size(), 1u);
    try {
        P("(x + 1)^(-1)");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonMonomialFractionalPower);
    }
}

TEST(Expr, EvalNumeric) {
    const Expr e = P("x'^2*sin(t) + exp(2*t)*x^(1/2) + cos(x)");
    const JetValues v{{{0, 0}, 4.0}, {{0, 1}, 3.0}};
    const double t = 0.3;
    EXPECT_NEAR(eval_numeric(e, t, v), 9 * std::sin(t) + std::exp(2 * t) * 2 + std::cos(4.0), 1e-12);
    EXPECT_THROW(eval_numeric(P("y"), 0, v), Error);
    EXPECT_THROW(eval_numeric(P("x^(1/2)"), 0, {{{0, 0}, -1.0}}), Error);
    EXPECT_THROW(eval_numeric(P("x^(-1)"), 0, {{{0, 0}, 0.0}}), Error);
}

TEST(Parse, Grammar) {
    EXPECT_EQ(P("D(x,2)"), Expr::var(0, 2));
    EXPECT_EQ(P("x'''"), Expr::var(0, 3));
    EXPECT_EQ(P("-x^2"), -Expr::var(0).pow(2));
    EXPECT_EQ(P("2^3"), Expr(8));
    EXPECT_EQ(P("x^-1"), Expr::var(0).pow(-1));
    EXPECT_EQ(P("1/2*(x + y)"), P("x/2 + y/2"));
    EXPECT_EQ(P("sin(t + x)"), Expr::sin(LinearArg::time(1) + LinearArg::coordinate(0, 1)));
}

TEST(Parse, Parameters) {
    const ParameterMap params{{"m", Rational(2)}, {"lambda", Rational(3)}};
    EXPECT_EQ(parse("m/lambda*x", xy, params), Rational(2, 3) * Expr::var(0));
    EXPECT_EQ(parse("sin(m/lambda*t)", xy, params), Expr::sin(LinearArg::time(Rational(2, 3))));
}

TEST(Parse, Errors) {
    EXPECT_EQ(kind_of("x +"), ErrorKind::SyntaxError);
    EXPECT_EQ(kind_of("z"), ErrorKind::UnknownIdentifier);
    EXPECT_EQ(kind_of("x^y"), ErrorKind::NonRationalExponent);
    EXPECT_EQ(kind_of("sin(x^2)"), ErrorKind::NonlinearTransArgument);
    EXPECT_EQ(kind_of("sin(x')"), ErrorKind::NonlinearTransArgument);
    EXPECT_EQ(kind_of("1/(x + 1)"), ErrorKind::NonMonomialFractionalPower);
    EXPECT_EQ(kind_of("x/0"), ErrorKind::DomainError);
    EXPECT_EQ(kind_of("x)"), ErrorKind::SyntaxError);
}

TEST(Parse, PrintIsCanonical) {
    EXPECT_EQ(print(P("x'^2/2 - y'' + t")), "1/2*D(x,1)^2 - D(y,2) + t");
    EXPECT_EQ(print(P("x'^2/2 - y'' + t"), {"p", "q"}), "1/2*D(p,1)^2 - D(q,2) + t");
    EXPECT_EQ(print(Expr()), "0");
}

TEST(Parse, LinearArg) {
    const auto a = as_linear_arg(P("2*t - x/3"));
    ASSERT_TRUE(a.has_value());
    EXPECT_EQ(a->coefficient(LinearArg::kTime), Rational(2));
    EXPECT_EQ(a->coefficient(0), Rational(-1, 3));
    EXPECT_FALSE(as_linear_arg(P("t*x")).has_value());
    EXPECT_FALSE(as_linear_arg(P("1 + t")).has_value());
}
