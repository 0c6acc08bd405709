#include "oracles.hpp"

using namespace diracinv;
using oracle::pt;

namespace {

/// The operator written out with the hand matrices.
CVector4 hand_residual(const SpinorJet& j, const std::array<double, 4>& a, double kappa)
{
    CVector4 r = kappa * j.value;
    for (int mu = 1; mu <= 3; ++mu)
        r += oracle::hand_gamma(mu) * (j.d[static_cast<std::size_t>(mu)] - (I * a[static_cast<std::size_t>(mu)]) * j.value);
    r += (-I) * (oracle::hand_gamma(4) * (j.d[0] + (I * a[0]) * j.value));
    return r;
}

}  // namespace

TEST(Residual, MatchesHandOperator)
{
    Rng rng(1);
    for (int k = 0; k < 20; ++k) {
        SpinorJet j;
        for (int c = 0; c < 4; ++c) j.value[c] = rng.complex(1.0);
        for (auto& v : j.d)
            for (int c = 0; c < 4; ++c) v[c] = rng.complex(1.0);
        const std::array<double, 4> a{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
        oracle::expect_near(dirac_residual(j, a, 0.8), hand_residual(j, a, 0.8), 1e-14);
    }
}

TEST(Residual, RestWave)
{
    const auto rest = rest_plane_wave(1.5);
    const auto good = residual_norm(rest.spinor, *rest.potential, 1.5, SampleDomain{});
    EXPECT_LT(good.max, 1e-14);
    EXPECT_EQ(good.points.size(), 100u);
    EXPECT_FALSE(good.no_support_points);
    // wrong mass: residual is exactly |kappa' - kappa| |Psi|
    const auto bad = residual_norm(rest.spinor, *rest.potential, 2.0, SampleDomain{});
    EXPECT_NEAR(bad.max, 0.5, 1e-14);
    ASSERT_TRUE(bad.argmax.has_value());
    const auto none = residual_norm(SpinorField::zero(), FourPotential::zero(), 1.0, SampleDomain{});
    EXPECT_TRUE(none.no_support_points);
}

TEST(Residual, DegenerateExampleIsForceFree)
{
    for (const auto& [kappa, alpha, phi1, phi2] : catalog_degenerate_params())
        EXPECT_LT(residual_norm(degenerate_example(kappa, alpha, phi1, phi2), FourPotential::zero(), kappa, SampleDomain{})
                      .max_relative,
                  1e-12);
}

TEST(FieldTensor, HandValues)
{
    const FourPotential a({parse("x1"), parse("x2"), parse("0"), parse("x0*x3")});
    const auto t = field_tensor(a, pt(0.0, 0.0, 0.0, 2.0));
    // A = (-x1, x2, 0, x0 x3)
    EXPECT_DOUBLE_EQ(t.f[0], 1.0);   // f01 = d0 A1 - d1 A0
    EXPECT_DOUBLE_EQ(t.f[2], 2.0);   // f03 = d0 A3 - d3 A0
    EXPECT_DOUBLE_EQ(t.f[3], -1.0);  // f12 = d1 A2 - d2 A1
    EXPECT_DOUBLE_EQ(t.f[1], 0.0);
    EXPECT_DOUBLE_EQ(t.max_abs(), 2.0);
}

TEST(FieldTensor, PureGaugeHasNoField)
{
    const auto g = gauge_transform(rest_plane_wave(1.0).spinor, parse("sin(x0*x1) + x2^3*x3"));
    SampleDomain d;
    EXPECT_LT(tensor_distance(g.shift, FourPotential::zero(), d), 1e-13);
    EXPECT_TRUE(gauge_equivalent(g.shift, FourPotential::zero(), d));
}

TEST(FieldTensor, FamilyMembersAreNotGaugeEquivalent)
{
    SampleDomain d;
    const auto member = example_family(1.0, 0.3, 0.2, -0.1, parse("x0"));
    EXPECT_GT(tensor_distance(member, FourPotential::zero(), d), 0.1);
    EXPECT_FALSE(gauge_equivalent(member, FourPotential::zero(), d));
    // a constant f only shifts by a constant vector
    EXPECT_TRUE(gauge_equivalent(example_family(1.0, 0.3, 0.2, -0.1, parse("1")), FourPotential::zero(), d));
}

TEST(Lightlike, Gap)
{
    const FourPotential a({parse("2"), parse("1"), parse("1"), parse("0")});
    EXPECT_DOUBLE_EQ(lightlike_gap(a, FourPotential::zero(), pt(0, 0, 0, 0)), 2.0);
    const auto member = example_family(2.0, -0.7, 1.1, 0.4, parse("x0 - 3*x2"));
    for (const auto& p : SampleDomain{}.points()) EXPECT_NEAR(lightlike_gap(member, FourPotential::zero(), p), 0.0, 1e-13);
}

TEST(Property, FamilyAndGaugeSuites)
{
    SampleDomain d;
    d.count = 50;
    d.seed = 3;
    for (const auto& r : {suite_degenerate_residual(d), suite_family(d), suite_theta(d), suite_gauge_inequivalence(d),
                          suite_lightlike(3, d)})
        EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
}
