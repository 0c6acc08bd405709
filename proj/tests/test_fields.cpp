#include "oracles.hpp"

using namespace diracinv;
using oracle::pt;

TEST(Sampling, Deterministic)
{
    SampleDomain d;
    const auto a = d.points();
    const auto b = d.points();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.size(), 100u);
    EXPECT_EQ(d.point(17), a[17]);
    SampleDomain other = d;
    other.seed = 43;
    EXPECT_NE(other.point(0), d.point(0));
}

TEST(Sampling, StaysInBox)
{
    SampleDomain d;
    d.box = {{{0.0, 0.5}, {-2.0, -1.0}, {3.0, 3.0}, {-1.0, 1.0}}};
    d.count = 500;
    for (const auto& p : d.points()) {
        EXPECT_GE(p[0], 0.0);
        EXPECT_LE(p[0], 0.5);
        EXPECT_GE(p[1], -2.0);
        EXPECT_LE(p[1], -1.0);
        EXPECT_EQ(p[2], 3.0);
    }
}

TEST(Sampling, Validation)
{
    SampleDomain d;
    d.count = 0;
    EXPECT_THROW((void)d.points(), Error);
    d.count = 1;
    d.box[0] = {1.0, 0.0};
    EXPECT_THROW((void)d.points(), Error);
}

TEST(Rng, Reproducible)
{
    Rng a(5), b(5), c(6);
    for (int k = 0; k < 10; ++k) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
    EXPECT_NE(Rng(5).uniform(), c.uniform());
}

TEST(SpinorField, JetMatchesFiniteDifferences)
{
    const SpinorField psi({parse("exp(-i*x0)*cos(x1)"), parse("x2*x3 + i*x0"), parse("k*sin(x1 + x2)"), parse("conj(x0 + i*x3)^2")},
                          {{"k", cplx(0.5, 1.0)}});
    for (const auto& p : {pt(0.1, 0.2, 0.3, 0.4), pt(-0.7, 0.5, -0.1, 0.9)}) {
        const auto j = psi.jet(p);
        const auto fd = oracle::fd_jet(psi, p);
        oracle::expect_near(j.value, fd.value, 0.0);
        for (std::size_t a = 0; a < 4; ++a) oracle::expect_near(j.d[a], fd.d[a], 1e-8);
    }
}

TEST(SpinorField, Accessors)
{
    const SpinorField psi({parse("x0"), parse("0"), parse("x1*x1"), parse("1")});
    EXPECT_EQ(evaluate(psi.partial(2, 1), pt(0, 3, 0, 0)), cplx(6.0));
    EXPECT_THROW((void)psi.component(4), std::exception);
    const auto z = SpinorField::zero();
    EXPECT_EQ(z.value(pt(1, 2, 3, 4)).norm(), 0.0);
    const auto s = psi.scaled(parse("2*i"));
    EXPECT_EQ(s.value(pt(1, 0, 0, 0))[0], cplx(0.0, 2.0));
}

TEST(Bilinears, AdjointAndTranspose)
{
    const SpinorField psi({parse("1"), parse("i"), parse("x1"), parse("2")});
    const Point p = pt(0, 3, 0, 0);
    const CVector4 v{{1.0, I, 3.0, 2.0}};
    EXPECT_EQ(bilinear_adjoint(psi, gamma(4), p), adjoint_form(v, gamma(4), v));
    EXPECT_EQ(bilinear_transpose(psi, gamma(2), p), transpose_form(v, gamma(2), v));
    EXPECT_EQ(bilinear_adjoint(psi, gamma(4), p), cplx(1.0 + 1.0 - 9.0 - 4.0));
    // symbolic forms agree with pointwise ones
    EXPECT_NEAR(std::abs(evaluate(adjoint_bilinear_expr(psi, delta(4)), p) - adjoint_form(v, delta(4), v)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(evaluate(transpose_bilinear_expr(psi, gamma(2)), p) - transpose_form(v, gamma(2), v)), 0.0, 1e-15);
}

TEST(Bilinears, DerivativesAgainstFiniteDifferences)
{
    const SpinorField psi({parse("exp(i*x1)*x0"), parse("cos(x2) + i*x3"), parse("x0*x1*i"), parse("sin(x3 - x0)")});
    const Point p = pt(0.3, -0.2, 0.6, 0.1);
    const auto j = psi.jet(p);
    const double h = 1e-5;
    for (int a = 0; a < 4; ++a) {
        Point hi = p, lo = p;
        hi[a] += h;
        lo[a] -= h;
        const cplx fd = (bilinear_adjoint(psi, gamma(3), hi) - bilinear_adjoint(psi, gamma(3), lo)) / (2.0 * h);
        EXPECT_NEAR(std::abs(partial_adjoint(j, gamma(3), a) - fd), 0.0, 1e-9);
    }
    // bidirectional: Psi* M dPsi - (dPsi)* M Psi
    const auto& dv = j.d[1];
    EXPECT_EQ(bidirectional(j, gamma(4), 1), adjoint_form(j.value, gamma(4), dv) - adjoint_form(dv, gamma(4), j.value));
    EXPECT_EQ(bidirectional(psi, gamma(4), 1, p), bidirectional(j, gamma(4), 1));
    EXPECT_THROW((void)bidirectional(psi, gamma(4), 4, p), Error);
}

TEST(Support, Partition)
{
    const SpinorField psi({parse("x1 - 0.5 + (x1 - 0.5)^2"), parse("0"), parse("0"), parse("0")});
    SampleDomain d;
    d.box = {{{0, 0}, {0.5, 0.5}, {0, 1}, {0, 1}}};  // psi vanishes identically on this box
    const auto part = sample_support(psi, d);
    EXPECT_TRUE(part.support.empty());
    EXPECT_EQ(part.null.size(), 100u);
    const auto full = sample_support(psi, SampleDomain{});
    EXPECT_EQ(full.support.size(), 100u);
    EXPECT_THROW((void)sample_support(psi, d, 0.0), Error);
}

TEST(Potential, ValuesGradientAndImag)
{
    const FourPotential a({parse("x0*x1"), parse("sin(x2)"), parse("c"), parse("i*x3")}, {{"c", cplx(2.0)}});
    const Point p = pt(2.0, 3.0, 0.0, 0.5);
    const auto v = a.values(p);
    EXPECT_EQ(v[0], 6.0);
    EXPECT_EQ(v[2], 2.0);
    EXPECT_EQ(a.imag_residue(p), 0.5);
    const auto g = a.gradient(p);
    EXPECT_EQ(g[0][0], 3.0);
    EXPECT_EQ(g[1][0], 2.0);
    EXPECT_EQ(g[2][1], 1.0);
    const auto sum = a + (-a);
    for (double x : sum.values(p)) EXPECT_EQ(x, 0.0);
}

TEST(Params, MergeConflicts)
{
    EXPECT_NO_THROW((void)merge_params({{"a", 1.0}}, {{"a", 1.0}, {"b", 2.0}}));
    EXPECT_THROW((void)merge_params({{"a", 1.0}}, {{"a", 2.0}}), Error);
}
