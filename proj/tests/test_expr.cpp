#include "oracles.hpp"

#include <numbers>

using namespace diracinv;
using oracle::pt;

namespace {
cplx ev(const std::string& text, const Point& p = {}, const Params& params = {}) { return evaluate(parse(text), p, params); }
}  // namespace

TEST(ExprParse, ArithmeticAndPrecedence)
{
    EXPECT_EQ(ev("1 + 2*3"), cplx(7.0));
    EXPECT_EQ(ev("(1 + 2)*3"), cplx(9.0));
    EXPECT_EQ(ev("2^3^2"), cplx(512.0));
    EXPECT_EQ(ev("-2^2"), cplx(-4.0));
    EXPECT_EQ(ev("8/4/2"), cplx(1.0));
    EXPECT_EQ(ev("1 - 2 - 3"), cplx(-4.0));
    EXPECT_EQ(ev("+3"), cplx(3.0));
    EXPECT_EQ(ev("2^-1"), cplx(0.5));
}

TEST(ExprParse, NumbersAndConstants)
{
    EXPECT_EQ(ev("3e-1"), cplx(0.3));
    EXPECT_EQ(ev(".5"), cplx(0.5));
    EXPECT_EQ(ev("2.5E1"), cplx(25.0));
    EXPECT_EQ(ev("2i"), cplx(0.0, 2.0));
    EXPECT_EQ(ev("i*i"), cplx(-1.0));
    EXPECT_DOUBLE_EQ(ev("pi").real(), std::numbers::pi);
    EXPECT_DOUBLE_EQ(ev("e").real(), std::numbers::e);
}

TEST(ExprParse, VariablesAndParameters)
{
    const Point p = pt(1.0, 2.0, 3.0, 4.0);
    EXPECT_EQ(ev("x0 + 10*x1 + 100*x2 + 1000*x3", p), cplx(4321.0));
    const Params params{{"k", cplx(0.0, 2.0)}};
    EXPECT_EQ(ev("k*x1", p, params), cplx(0.0, 4.0));
    try {
        (void)ev("k*x1", p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnboundName);
    }
    std::set<std::string> names;
    collect_params(parse("a*x0 + sin(b) + x3"), names);
    EXPECT_EQ(names, (std::set<std::string>{"a", "b"}));
}

TEST(ExprParse, Functions)
{
    const Point p = pt(0.3, -0.7, 0.2, 0.9);
    EXPECT_NEAR(std::abs(ev("sin(x0)^2 + cos(x0)^2", p) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ev("cosh(x1)^2 - sinh(x1)^2", p) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ev("exp(log(2 + x2))", p) - 2.2), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ev("sqrt(4)") - 2.0), 0.0, 0.0);
    EXPECT_NEAR(std::abs(ev("tan(x3)", p) - std::tan(0.9)), 0.0, 1e-15);
    EXPECT_EQ(ev("conj(1 + 2i)"), cplx(1.0, -2.0));
    EXPECT_DOUBLE_EQ(ev("exp(i*pi)").real(), -1.0);
}

TEST(ExprParse, ErrorsCarryOffsets)
{
    try {
        (void)parse("sin(");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_EQ(e.offset(), 4u);
    }
    try {
        (void)parse("1 + * 2");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
    }
    EXPECT_THROW((void)parse("(1 + 2"), ParseError);
    EXPECT_THROW((void)parse("1 2"), ParseError);
    EXPECT_THROW((void)parse("sin x"), ParseError);
    EXPECT_THROW((void)parse(""), ParseError);
    EXPECT_THROW((void)parse("2 $ 3"), ParseError);
}

TEST(ExprParse, ExponentMustBeIntegerConstant)
{
    EXPECT_THROW((void)parse("x1^x0"), ParseError);
    EXPECT_THROW((void)parse("x1^0.5"), ParseError);
    EXPECT_THROW((void)parse("x1^2000"), ParseError);
    EXPECT_NO_THROW((void)parse("x1^(1+1)"));
}

TEST(ExprEval, NonFiniteIsReported)
{
    try {
        (void)ev("1/x0", pt(0, 0, 0, 0));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonFinite);
    }
    EXPECT_THROW((void)ev("log(x0)", pt(0, 0, 0, 0)), Error);
    EXPECT_THROW((void)ev("exp(1000)"), Error);
}

TEST(ExprEval, IntegerPowersAreExact)
{
    EXPECT_EQ(ev("3^5"), cplx(243.0));
    EXPECT_EQ(ev("(1+i)^4"), cplx(-4.0));
    EXPECT_EQ(ev("2^-2"), cplx(0.25));
    EXPECT_EQ(ev("x1^0", pt(0, 5, 0, 0)), cplx(1.0));
}

TEST(ExprDiff, Rules)
{
    const Point p = pt(0.4, -0.3, 0.8, 0.1);
    auto d = [&](const std::string& text, int axis) { return evaluate(differentiate(parse(text), axis), p); };
    EXPECT_NEAR(std::abs(d("x1^3", 1) - 3.0 * 0.09), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d("sin(x0*x2)", 0) - 0.8 * std::cos(0.32)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d("exp(i*x3)", 3) - cplx(0, 1) * std::exp(cplx(0, 0.1))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d("1/x2", 2) + 1.0 / 0.64), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d("conj(i*x1)", 1) - cplx(0, -1)), 0.0, 0.0);
    EXPECT_NEAR(std::abs(d("log(2 + x0)", 0) - 1.0 / 2.4), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d("sqrt(2 + x0)", 0) - 0.5 / std::sqrt(2.4)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(d("tan(x3)", 3) - 1.0 / std::pow(std::cos(0.1), 2)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(d("sinh(x1) + cosh(x1)", 1) - (std::cosh(-0.3) + std::sinh(-0.3))), 0.0, 1e-15);
    EXPECT_EQ(d("x1", 0), cplx(0.0));
    EXPECT_TRUE(differentiate(parse("k*x1 + 3"), 0).is_zero());
}

TEST(ExprDiff, InvalidAxis)
{
    EXPECT_THROW((void)differentiate(parse("x0"), 4), Error);
    EXPECT_THROW((void)Expr::var(-1), Error);
}

TEST(ExprPrint, RoundTrip)
{
    for (const char* t : {"sin(x0)*exp(-i*x1) + k^2", "conj(x1 + 2i)/(3 - x2)", "(x0 + 1)^-3", "-x3 - -x2"}) {
        const Expr e = parse(t);
        const Expr back = parse(to_string(e));
        const Point p = pt(0.1, 0.2, 0.3, 0.4);
        const Params params{{"k", cplx(1.5, -0.5)}};
        EXPECT_LE(std::abs(evaluate(e, p, params) - evaluate(back, p, params)), 1e-14) << t << " -> " << to_string(e);
    }
}

TEST(ExprFolding, ConstantsAndIdentities)
{
    EXPECT_TRUE(parse("2*3 + 1").is_const());
    EXPECT_EQ(parse("2*3 + 1").const_value(), cplx(7.0));
    EXPECT_TRUE(parse("0*x1").is_zero());
    EXPECT_EQ(node_count(parse("x1*1 + 0")), node_count(parse("x1")));
    using namespace diracinv::literals;
    EXPECT_EQ(evaluate("x2 + 1"_ex, pt(0, 0, 2, 0)), cplx(3.0));
}

TEST(ExprProperty, GeneratedDerivativesMatchFiniteDifferences)
{
    const auto r = suite_exprlang(7, 200);
    EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}

TEST(ExprProperty, GeneratorCoversGrammar)
{
    Rng rng(3);
    ExprGenerator gen(rng);
    std::set<std::string, std::less<>> seen;
    for (auto prod : kProductions) {
        const auto g = gen.generate(prod);
        EXPECT_NO_THROW((void)parse(g.text)) << g.text;
        EXPECT_TRUE(g.productions.count(prod)) << prod;
        seen.insert(g.productions.begin(), g.productions.end());
    }
    EXPECT_EQ(seen.size(), kProductions.size());
}
