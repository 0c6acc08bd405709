#include "oracles.hpp"

using namespace diracinv;
using oracle::pt;

namespace {

CVector4 random_vector(Rng& rng)
{
    return CVector4{{rng.complex(1.0), rng.complex(1.0), rng.complex(1.0), rng.complex(1.0)}};
}

/// Cofactor expansion, independent of the elimination in lemma43_detP.
double det4(const std::array<std::array<double, 4>, 4>& m)
{
    double det = 0.0;
    for (std::size_t c = 0; c < 4; ++c) {
        std::array<std::array<double, 3>, 3> s{};
        for (std::size_t r = 1; r < 4; ++r)
            for (std::size_t k = 0, kk = 0; k < 4; ++k)
                if (k != c) s[r - 1][kk++] = m[r][k];
        const double minor = s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) -
                             s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0]) +
                             s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]);
        det += (c % 2 ? -1.0 : 1.0) * m[0][c] * minor;
    }
    return det;
}

}  // namespace

TEST(Indicator, SplitsIntoInversionDenominators)
{
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const auto x = random_vector(rng);
        const cplx ind = indicator(x);
        EXPECT_NEAR(ind.real(), adjoint_form(x, gamma(4), x).real(), 1e-14);
        EXPECT_NEAR(ind.imag(), (-I * adjoint_form(x, gamma(5) * gamma(4), x)).real(), 1e-14);
    }
}

TEST(Classify, Verdicts)
{
    SampleDomain d;
    EXPECT_EQ(classify(rest_plane_wave(1.0).spinor, d).verdict, Verdict::NonDegenerate);
    const auto deg = classify(degenerate_example(1.0, 0.3, 0.2, -0.1), d, 1e-10, 1.0);
    EXPECT_EQ(deg.verdict, Verdict::Degenerate);
    EXPECT_EQ(deg.degenerate_points.size(), 100u);
    ASSERT_TRUE(deg.gamma2_covers_support.has_value());
    EXPECT_TRUE(*deg.gamma2_covers_support);
    // degenerate for x1 < 0.08 within tolerance, non-degenerate above
    const SpinorField mixed({parse("1"), parse("0"), parse("0"), parse("1 - exp(25*(x1 - 1))")});
    const auto m = classify(mixed, d);
    EXPECT_EQ(m.verdict, Verdict::Mixed);
    EXPECT_FALSE(m.s_points.empty());
    EXPECT_FALSE(m.degenerate_points.empty());
    EXPECT_STREQ(to_string(Verdict::Mixed), "Mixed");
}

TEST(Classify, LsetMembersAreDegenerate)
{
    for (const auto& psi : lset_members(parse("x1 + i*x2"), parse("exp(i*x3) + x0"))) {
        const auto c = classify(psi, SampleDomain{});
        EXPECT_EQ(c.verdict, Verdict::Degenerate);
        EXPECT_FALSE(c.gamma2_covers_support.has_value());
    }
}

TEST(Classify, Errors)
{
    EXPECT_THROW((void)classify(SpinorField::zero(), SampleDomain{}), Error);
    EXPECT_THROW((void)classify(rest_plane_wave(1.0).spinor, SampleDomain{}, 0.0), Error);
}

TEST(Theta, MatchesClosedFormOfExample)
{
    for (const auto& [kappa, alpha, phi1, phi2] : catalog_degenerate_params()) {
        const auto psi = degenerate_example(kappa, alpha, phi1, phi2);
        const auto want = degenerate_example_theta(alpha, phi1, phi2);
        const auto sym = theta_exprs(psi);
        for (const auto& p : SampleDomain{.count = 10}.points()) {
            const auto t = theta(psi, p);
            EXPECT_NEAR(t.norm2(), 1.0, 1e-12);
            for (std::size_t k = 0; k < 3; ++k) {
                EXPECT_NEAR(t.theta[k], want[k], 1e-12);
                EXPECT_NEAR(std::abs(evaluate(sym[k], p, psi.params()) - want[k]), 0.0, 1e-12);
            }
        }
    }
}

TEST(Theta, Errors)
{
    try {
        (void)theta(CVector4{{1.0, 0.0, 0.0, 0.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::GuardViolated);
    }
    Rng rng(5);
    std::size_t complex = 0;
    for (int k = 0; k < 50; ++k) {
        try {
            (void)theta(random_vector(rng));
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NonRealTheta) ++complex;
        }
    }
    EXPECT_GT(complex, 40u);
}

TEST(Family, MembersSolveWithSameMass)
{
    const auto psi = degenerate_example(1.0, 0.3, 0.2, -0.1);
    const auto cls = classify(psi, SampleDomain{}, 1e-10, 1.0);
    for (const char* f : {"1", "x0", "sin(x0 + x1)", "x2^2 - x3"}) {
        const auto member = potential_family(psi, FourPotential::zero(), parse(f), cls);
        EXPECT_LT(residual_norm(psi, member, 1.0, SampleDomain{}).max, 1e-12) << f;
        const auto closed = example_family(1.0, 0.3, 0.2, -0.1, parse(f));
        EXPECT_LT(tensor_distance(member, closed, SampleDomain{}), 1e-10) << f;
        for (const auto& p : SampleDomain{.count = 5}.points())
            EXPECT_NEAR(lightlike_gap(member, FourPotential::zero(), p), 0.0, 1e-12);
    }
}

TEST(Family, RequiresDegenerateSpinor)
{
    const auto psi = rest_plane_wave(1.0).spinor;
    const auto cls = classify(psi, SampleDomain{});
    try {
        (void)potential_family(psi, FourPotential::zero(), parse("x0"), cls);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotDegenerate);
    }
}

TEST(DegenerateForm, RoundTrip)
{
    Rng rng(9);
    for (int k = 0; k < 100; ++k) {
        const cplx u = rng.complex(1.0), v = rng.complex(1.0), w = rng.complex(2.0);
        const auto x = compose_degenerate(u, v, w);
        EXPECT_LT(std::abs(indicator(x)), 1e-13 * (1.0 + x.norm2()));
        const auto back = decompose_degenerate(x);
        EXPECT_LT((compose_degenerate(back.u, back.v, back.w) - x).norm(), 1e-12 * (1.0 + x.norm()));
        EXPECT_FALSE(back.ambiguous);
    }
    EXPECT_TRUE(decompose_degenerate(CVector4{}).ambiguous);
}

TEST(DegenerateForm, NonDegenerateVectorRejected)
{
    try {
        (void)decompose_degenerate(CVector4{{1.0, 0.0, 0.0, 0.0}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotRepresentable);
    }
}

TEST(DegenerateForm, SymbolicCompose)
{
    const auto psi = compose_degenerate(parse("x0 + i"), parse("x1*x2"), parse("exp(i*x3)"));
    const Point p = pt(0.2, 0.3, -0.4, 0.8);
    oracle::expect_near(psi.value(p), compose_degenerate(cplx(0.2, 1.0), -0.12, std::exp(cplx(0, 0.8))), 1e-15);
}

TEST(Zeta, InverseAndLsetShape)
{
    Rng rng(2);
    for (int k = 0; k < 10; ++k) {
        const auto x = random_vector(rng);
        oracle::expect_near(unzeta(zeta(x)), x, 1e-15);
        oracle::expect_near(zeta(unzeta(x)), x, 1e-15);
    }
    const CVector4 shaped{{0.3, cplx(0, 1), 0.3, cplx(0, 1)}};
    EXPECT_NEAR(std::abs(zeta(shaped)[1]), 0.0, 0.0);
    EXPECT_NEAR(std::abs(zeta(shaped)[3]), 0.0, 0.0);
}

TEST(Identities, SymmetrisedProductEquivalence)
{
    Rng rng(4);
    for (int k = 0; k < 200; ++k) {
        const auto x = k % 2 ? random_vector(rng) : compose_degenerate(rng.complex(1), rng.complex(1), rng.complex(1));
        const auto r = lemma41_conditions(x);
        EXPECT_EQ(r.lhs, r.rhs) << k << " lhs " << r.lhs_value << " rhs " << r.rhs_value;
        if (k % 2 == 0) {
            EXPECT_TRUE(r.rhs);
        }
    }
}

TEST(Identities, BothBilinearsVanishOnlyOnShapes)
{
    const auto members = lset_members(parse("x1 + i*x2"), parse("2 - x3"));
    const Point p = pt(0.1, 0.5, -0.2, 0.3);
    for (const auto& psi : members) {
        const auto r = lemma42_check(psi.value(p));
        EXPECT_TRUE(r.bilinears_vanish);
        EXPECT_TRUE(r.has_shape);
    }
    Rng rng(8);
    for (int k = 0; k < 50; ++k) {
        const auto x = compose_degenerate(rng.complex(1), rng.complex(1), rng.complex(1));
        const auto r = lemma42_check(x);
        if (!r.has_shape) {
            EXPECT_FALSE(r.bilinears_vanish);
        }
    }
}

TEST(Identities, DetPAgainstCofactorExpansion)
{
    Rng rng(6);
    for (int k = 0; k < 100; ++k) {
        const cplx a = rng.complex(2.0), b = rng.complex(2.0);
        const double k1 = a.real(), l1 = a.imag(), k2 = b.real(), l2 = b.imag();
        const std::array<std::array<double, 4>, 4> m{
            {{-k1, -k2, -l2, -k1}, {-l1, -l2, k2, -l1}, {-k2, -k1, l1, k2}, {-l2, -l1, -k1, l2}}};
        EXPECT_NEAR(lemma43_detP(a, b), std::abs(det4(m)), 1e-10 * (1.0 + std::abs(det4(m))));
    }
    EXPECT_EQ(lemma43_detP(0.0, 0.0), 0.0);
}

TEST(Property, IdentitySuite)
{
    for (std::uint64_t seed : {1u, 42u}) {
        const auto r = suite_lemmas(seed, 300);
        EXPECT_TRUE(r.passed()) << r.to_json().dump(2);
    }
}
