#pragma once

/**
 * @file selftest.hpp
 * @brief Property suites over the whole library. Each suite returns a Report;
 *        run_selftest bundles them. All randomness derives from one seed.
 */

#include "diracinv/catalog.hpp"
#include "diracinv/clifford.hpp"
#include "diracinv/degeneracy.hpp"
#include "diracinv/exprgen.hpp"
#include "diracinv/inversion.hpp"
#include "diracinv/manufactured.hpp"
#include "diracinv/report.hpp"
#include "diracinv/sampling.hpp"
#include "diracinv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace diracinv {

struct SelftestOptions {
    std::uint64_t seed = 42;
    std::size_t samples = 100;
    GammaSet gammas = GammaSet::standard();

    [[nodiscard]] SampleDomain domain() const
    {
        SampleDomain d;
        d.count = samples;
        d.seed = seed;
        return d;
    }
};

namespace detail {

inline std::string num(double v) { return nlohmann::json(v).dump(); }

/// Smooth real gauge function with random coefficients.
inline Expr random_gauge_function(Rng& rng)
{
    const Expr x0 = Expr::var(0), x1 = Expr::var(1), x2 = Expr::var(2), x3 = Expr::var(3);
    auto c = [&](double r) { return Expr(rng.uniform(-r, r)); };
    return c(1.0) * sin(c(2.0) * x0 + c(2.0) * x1) + c(0.5) * x0 * x2 + c(0.5) * x1 * cos(c(1.5) * x3 - x0) +
           c(0.3) * exp(c(0.5) * x2) * pow(x0, 2) + c(0.5) * x3;
}

inline CVector4 random_vector(Rng& rng, double r = 1.0)
{
    return CVector4{{rng.complex(r), rng.complex(r), rng.complex(r), rng.complex(r)}};
}

inline PlaneWave random_plane_wave(Rng& rng)
{
    return {{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}, random_vector(rng)};
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// Symbolic derivatives of generated expressions against central differences.
[[nodiscard]] inline Report suite_exprlang(std::uint64_t seed, std::size_t count = 100)
{
    Report rep("exprlang");
    Rng rng(seed, 10);
    ExprGenerator gen(rng);
    const Params& params = generator_params();
    std::set<std::string, std::less<>> covered;
    double worst = 0.0, worst_roundtrip = 0.0;
    std::size_t rejected = 0;
    std::string worst_text;

    for (std::size_t k = 0; k < count; ++k) {
        const std::string_view forced = kProductions[k % kProductions.size()];
        for (int attempt = 0; attempt < 200; ++attempt) {
            auto g = gen.generate(forced);
            const Expr e = parse(g.text);
            const int axis = static_cast<int>(rng.index(4));
            Point p;
            for (int a = 0; a < 4; ++a) p[a] = rng.uniform(-1.0, 1.0);
            try {
                const cplx sym = evaluate(differentiate(e, axis), p, params);
                const cplx val = evaluate(e, p, params);
                auto central = [&](double h) {
                    Point a = p, b = p;
                    a[axis] += h;
                    b[axis] -= h;
                    return (evaluate(e, a, params) - evaluate(e, b, params)) / (2.0 * h);
                };
                const cplx f1 = central(1e-3), f2 = central(5e-4);
                const cplx fd = (4.0 * f2 - f1) / 3.0;
                // skip points close to a singularity, where the difference quotient is meaningless
                if (std::abs(val) > 1e4 || std::abs(sym) > 1e4 || std::abs(f1 - f2) > 1e-3 * (1.0 + std::abs(fd))) {
                    ++rejected;
                    continue;
                }
                const double rel = std::abs(sym - fd) / std::max(1.0, std::abs(sym));
                if (rel > worst) {
                    worst = rel;
                    worst_text = g.text;
                }
                const Expr again = parse(to_string(e));
                const cplx v2 = evaluate(again, p, params);
                worst_roundtrip = std::max(worst_roundtrip, std::abs(v2 - val) / std::max(1.0, std::abs(val)));
                covered.insert(g.productions.begin(), g.productions.end());
                break;
            } catch (const Error&) {
                ++rejected;
            }
        }
    }
    rep.check_below("derivative matches central difference (relative)", worst, 1e-6);
    rep.check_below("print/parse round trip (relative)", worst_roundtrip, 1e-12);
    std::vector<std::string> missing;
    for (auto pr : kProductions)
        if (!covered.count(pr)) missing.emplace_back(pr);
    rep.check("every grammar production exercised", missing.empty(), {{"missing", missing}});
    rep.set("expressions", count);
    rep.set("rejected_near_singularity", rejected);
    rep.set("worst_expression", worst_text);
    return rep;
}

/// det P, the symmetrised-product equivalence, the degenerate form, zeta, the zero-bilinear
/// shapes and the L-set.
[[nodiscard]] inline Report suite_lemmas(std::uint64_t seed, std::size_t count = 1000)
{
    Report rep("lemmas");
    Rng rng(seed, 20);

    double det_worst = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double r = std::pow(10.0, rng.uniform(-2.0, 2.0));
        const cplx a = rng.complex(r), b = rng.complex(r);
        const double scale = std::max({std::abs(a.real()), std::abs(a.imag()), std::abs(b.real()), std::abs(b.imag())});
        det_worst = std::max(det_worst, lemma43_detP(a, b) / std::pow(scale, 4));
    }
    rep.check_below("det P vanishes (relative to scale^4)", det_worst, 1e-12);

    std::size_t excluded = 0, agree = 0, disagree = 0, lhs_true = 0;
    for (std::size_t k = 0; k < count; ++k) {
        CVector4 x;
        switch (k % 5) {
        case 0: x = detail::random_vector(rng); break;
        case 1: x = compose_degenerate(rng.complex(1.0), rng.complex(1.0), rng.complex(1.5)); break;
        case 2: {
            const cplx a = rng.complex(1.0), b = rng.complex(1.0);
            x = rng.index(2) ? CVector4{{a, b, a, b}} : CVector4{{a, b, -a, -b}};
            break;
        }
        case 3: {
            const cplx a = rng.complex(1.0), b = rng.complex(1.0);
            const std::array<CVector4, 6> shapes{CVector4{{a, b, -a, -b}}, CVector4{{a, 0.0, a, 0.0}},
                                                 CVector4{{a, -a, -a, a}},  CVector4{{a, b, a, b}},
                                                 CVector4{{0.0, b, 0.0, -b}}, CVector4{{a, a, a, a}}};
            x = shapes[rng.index(6)];
            break;
        }
        default: {
            x = detail::random_vector(rng);
            x[static_cast<int>(rng.index(4))] = 0.0;
            break;
        }
        }
        const auto r = lemma41_conditions(x);
        auto near = [&](double v) { return v > r.threshold / 10.0 && v < r.threshold * 10.0; };
        if (near(r.lhs_value) || near(r.rhs_value)) {
            ++excluded;
            continue;
        }
        (r.lhs == r.rhs ? agree : disagree) += 1;
        lhs_true += r.lhs;
    }
    rep.check("symmetrised products vanish <=> T2 * indicator vanishes", disagree == 0,
              {{"agree", agree}, {"disagree", disagree}, {"borderline_excluded", excluded}, {"lhs_true", lhs_true}});
    rep.check("equivalence sample has both outcomes", lhs_true > 0 && lhs_true < agree);

    double ind_worst = 0.0, rt_worst = 0.0;
    bool zeta_exact = true;
    const std::size_t small = std::max<std::size_t>(count / 10, 1);
    for (std::size_t k = 0; k < small; ++k) {
        const cplx u = rng.complex(1.0), v = rng.complex(1.0), w = rng.complex(1.5);
        const CVector4 x = compose_degenerate(u, v, w);
        ind_worst = std::max(ind_worst, std::abs(indicator(x)) / x.norm2());
        const auto back = decompose_degenerate(x);
        rt_worst = std::max(rt_worst, (compose_degenerate(back.u, back.v, back.w) - x).norm() / x.norm());
        const CVector4 y = detail::random_vector(rng);
        zeta_exact = zeta_exact && unzeta(zeta(y)) == y && zeta(unzeta(y)) == y;
    }
    rep.check_below("degenerate form has zero indicator", ind_worst, 1e-12);
    rep.check_below("decompose/compose round trip", rt_worst, 1e-10);
    rep.check("zeta and its inverse compose to the identity", zeta_exact);

    // symbolic composition with field-valued u, v, w
    {
        const Expr u = parse("x1 + i*x2"), v = parse("exp(i*x0) - x3"), w = parse("cos(x1) + i*sin(x2*x0)");
        const auto psi = compose_degenerate(u, v, w);
        double m = 0.0;
        SampleDomain d;
        d.seed = seed;
        for (const auto& p : d.points()) {
            const CVector4 x = psi.value(p);
            m = std::max(m, std::abs(indicator(x)) / std::max(x.norm2(), 1e-300));
        }
        rep.check_below("symbolic degenerate form has zero indicator", m, 1e-12);
    }

    std::size_t l42_bad = 0;
    for (std::size_t k = 0; k < small; ++k) {
        const cplx a = rng.complex(1.0), b = rng.complex(1.0);
        const auto s1 = lemma42_check(CVector4{{a, b, a, b}}), s2 = lemma42_check(CVector4{{a, b, -a, -b}});
        const auto rnd = lemma42_check(detail::random_vector(rng));
        l42_bad += !(s1.bilinears_vanish && s1.has_shape) + !(s2.bilinears_vanish && s2.has_shape) +
                   (rnd.bilinears_vanish != rnd.has_shape);
    }
    rep.check("zeta shapes <=> both bilinears vanish", l42_bad == 0, {{"violations", l42_bad}});

    double lset_worst = 0.0;
    for (std::size_t k = 0; k < small; ++k) {
        const cplx a = rng.complex(1.0), b = rng.complex(1.0);
        for (const auto& m : lset_members(Expr(a), Expr(b))) {
            const CVector4 x = m.value(Point{});
            lset_worst = std::max(lset_worst, std::abs(transpose_form(x, gamma(2), x)));
        }
    }
    rep.check_below("L-set shapes have Psi^T g2 Psi = 0", lset_worst, 1e-12);
    return rep;
}

/// Force-free residual and indicator of the degenerate example.
[[nodiscard]] inline Report suite_degenerate_residual(const SampleDomain& d)
{
    Report rep("degenerate_example");
    for (const auto& q : catalog_degenerate_params()) {
        const auto psi = degenerate_example(q.kappa, q.alpha, q.phi1, q.phi2);
        const std::string tag = "(" + detail::num(q.kappa) + "," + detail::num(q.alpha) + "," +
                                detail::num(q.phi1) + "," + detail::num(q.phi2) + ")";
        rep.check_below("force-free residual " + tag, residual_norm(psi, FourPotential::zero(), q.kappa, d).max,
                        1e-10);
        double ind = 0.0;
        for (const auto& p : d.points()) {
            const CVector4 v = psi.value(p);
            ind = std::max(ind, std::abs(indicator(v)) / v.norm2());
        }
        rep.check_below("indicator / |Psi|^2 " + tag, ind, 1e-10);
        rep.check("classified Degenerate " + tag, classify(psi, d, 1e-10, q.kappa).verdict == Verdict::Degenerate);
    }
    return rep;
}

inline const std::vector<std::string>& family_functions()
{
    static const std::vector<std::string> f{"1", "x0", "sin(x0+x1)"};
    return f;
}

/// Residual of (Psi, family member, kappa) on the degenerate example.
[[nodiscard]] inline Report suite_family(const SampleDomain& d)
{
    Report rep("family");
    for (const auto& q : catalog_degenerate_params()) {
        const auto psi = degenerate_example(q.kappa, q.alpha, q.phi1, q.phi2);
        const auto cls = classify(psi, d, 1e-10, q.kappa);
        const std::string tag = " (" + detail::num(q.alpha) + "," + detail::num(q.phi1) + "," + detail::num(q.phi2) + ")";
        for (const auto& ftext : family_functions()) {
            const Expr f = parse(ftext);
            const auto member = potential_family(psi, FourPotential::zero(), f, cls);
            const auto closed = example_family(q.kappa, q.alpha, q.phi1, q.phi2, f);
            rep.check_below("residual f=" + ftext + tag, residual_norm(psi, member, q.kappa, d).max, 1e-9);
            rep.check_below("closed-form residual f=" + ftext + tag, residual_norm(psi, closed, q.kappa, d).max, 1e-9);
        }
    }
    return rep;
}

/// Realness and unit norm of Theta on every degenerate catalog instance.
[[nodiscard]] inline Report suite_theta(const SampleDomain& d)
{
    Report rep("theta");
    for (const auto& q : catalog_degenerate_params()) {
        const auto psi = degenerate_example(q.kappa, q.alpha, q.phi1, q.phi2);
        const auto part = sample_support(psi, d);
        double im = 0.0, unit = 0.0, closed = 0.0;
        const auto expect = degenerate_example_theta(q.alpha, q.phi1, q.phi2);
        for (const auto& p : part.support) {
            const auto t = theta(psi, p);
            im = std::max(im, t.max_imag());
            unit = std::max(unit, std::abs(t.norm2() - 1.0));
            for (std::size_t i = 0; i < 3; ++i) closed = std::max(closed, std::abs(t.theta[i] - expect[i]));
        }
        const std::string tag = " (" + detail::num(q.alpha) + "," + detail::num(q.phi1) + "," + detail::num(q.phi2) + ")";
        rep.check_below("max |Im Theta|" + tag, im, 1e-10);
        rep.check_below("| |Theta|^2 - 1 |" + tag, unit, 1e-9);
        rep.check_below("Theta vs closed form" + tag, closed, 1e-9);
    }
    return rep;
}

/// f = 1 leaves the field tensor unchanged; f = x0 changes it by at least
/// half of the smallest sampled max_i |Theta_i|.
[[nodiscard]] inline Report suite_gauge_inequivalence(const SampleDomain& d)
{
    Report rep("gauge_inequivalence");
    for (const auto& q : catalog_degenerate_params()) {
        const auto psi = degenerate_example(q.kappa, q.alpha, q.phi1, q.phi2);
        const auto cls = classify(psi, d, 1e-10, q.kappa);
        const auto base = FourPotential::zero();
        const auto m1 = potential_family(psi, base, Expr(1.0), cls);
        const auto mx = potential_family(psi, base, Expr::var(0), cls);
        double min_theta = INFINITY;
        for (const auto& p : cls.support_points) {
            const auto t = theta(psi, p);
            min_theta = std::min(min_theta, std::max({std::abs(t.theta[0]), std::abs(t.theta[1]), std::abs(t.theta[2])}));
        }
        const std::string tag = " (" + detail::num(q.alpha) + "," + detail::num(q.phi1) + "," + detail::num(q.phi2) + ")";
        const double dx = tensor_distance(mx, base, d), d1 = tensor_distance(m1, base, d);
        rep.check("f=x0 member differs from base" + tag, dx >= 0.5 * min_theta,
                  {{"distance", dx}, {"bound", 0.5 * min_theta}});
        rep.check_below("f=1 member has the base field tensor" + tag, d1, 1e-9);
        rep.check("f=x0 member gauge-inequivalent" + tag, !gauge_equivalent(mx, base, d));
    }
    return rep;
}

/// Round trips on manufactured non-degenerate pairs.
[[nodiscard]] inline Report suite_inversion(std::uint64_t seed, const SampleDomain& d, std::size_t pairs = 10)
{
    Report rep("inversion");
    Rng rng(seed, 30);
    std::vector<ManufacturedSolution> cases;
    for (std::size_t k = 0; k < pairs; ++k) {
        const double kappa = rng.uniform(0.5, 2.0);
        cases.push_back(manufacture(rest_plane_wave(kappa).spinor, kappa, detail::random_gauge_function(rng)));
    }
    // superpositions have Psi^* g5 g4 Psi != 0, so the third route is exercised too
    for (std::size_t k = 0; k < 4; ++k) {
        const double kappa = rng.uniform(0.5, 2.0);
        const auto free = plane_wave_superposition(kappa, {detail::random_plane_wave(rng), detail::random_plane_wave(rng)});
        cases.push_back(manufacture(free, kappa, detail::random_gauge_function(rng)));
    }

    double err = 0.0, agree4 = 0.0, agree54 = 0.0, oracle = 0.0;
    std::size_t used = 0, used4 = 0, used54 = 0, failures = 0;
    for (const auto& c : cases) {
        for (const auto& p : sample_support(c.spinor, d).support) {
            const SpinorJet j = c.spinor.jet(p);
            RecoveredPotential r;
            try {
                r = invert_combined(j, c.kappa);
            } catch (const Error&) {
                ++failures;
                continue;
            }
            ++used;
            const auto known = c.potential.values(p);
            for (std::size_t mu = 0; mu < 4; ++mu) err = std::max(err, std::abs(r.a[mu] - known[mu]));
            oracle = std::max(oracle, dirac_residual(j, r.a, c.kappa).norm());
            try {
                const auto r4 = invert_gamma4(j, c.kappa);
                ++used4;
                for (std::size_t mu = 0; mu < 4; ++mu) agree4 = std::max(agree4, std::abs(r4.a[mu] - r.a[mu]));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::GuardViolated) ++failures;
            }
            try {
                const auto r54 = invert_gamma5gamma4(j, c.kappa);
                ++used54;
                for (std::size_t mu = 0; mu < 4; ++mu) agree54 = std::max(agree54, std::abs(r54.a[mu] - r.a[mu]));
            } catch (const Error& e) {
                if (e.code() != ErrorCode::GuardViolated) ++failures;
            }
        }
    }
    rep.check("no unexpected inversion errors", failures == 0, {{"count", failures}});
    rep.check_below("combined route vs known potential", err, 1e-8);
    rep.check_below("gamma4 route vs combined", agree4, 1e-8);
    rep.check_below("gamma5 gamma4 route vs combined", agree54, 1e-8);
    rep.check_below("residual of recovered potential", oracle, 1e-9);
    rep.check("gamma5 gamma4 route exercised", used54 > 0);
    rep.set("pairs", cases.size());
    rep.set("points_combined", used);
    rep.set("points_gamma4", used4);
    rep.set("points_gamma5gamma4", used54);
    return rep;
}

/// extract_mass on catalog solutions, family members and gauge transforms.
[[nodiscard]] inline Report suite_mass(std::uint64_t seed, const SampleDomain& d)
{
    Report rep("mass");
    Rng rng(seed, 40);
    auto run = [&](const std::string& name, const SpinorField& psi, const Expr& a0, double kappa) {
        try {
            const auto m = extract_mass(psi, a0, d);
            rep.check(name, std::abs(m.mean - kappa) < 1e-9 && m.spread < 1e-9,
                      {{"kappa", m.mean}, {"spread", m.spread}, {"cross_check", m.cross_check}, {"expected", kappa}});
        } catch (const Error& e) {
            rep.check(name, false, {{"error", to_string(e.code())}, {"message", e.what()}});
        }
    };
    for (double k : {1.0, 0.5, 2.0}) {
        const auto e = rest_plane_wave(k);
        run("rest_plane_wave kappa=" + detail::num(k), e.spinor, Expr(0.0), k);
        const Expr f = detail::random_gauge_function(rng);
        const auto g = gauge_transform(e.spinor, f);
        run("gauge-transformed rest_plane_wave kappa=" + detail::num(k), g.psi, g.shift.component(0), k);
    }
    for (const auto& q : catalog_degenerate_params()) {
        const auto psi = degenerate_example(q.kappa, q.alpha, q.phi1, q.phi2);
        const std::string tag = " (" + detail::num(q.kappa) + "," + detail::num(q.alpha) + "," + detail::num(q.phi1) +
                                "," + detail::num(q.phi2) + ")";
        run("degenerate_example" + tag, psi, Expr(0.0), q.kappa);
        run("degenerate_example, family a0 = x0" + tag, psi, Expr::var(0), q.kappa);
        const Expr f = detail::random_gauge_function(rng);
        const auto g = gauge_transform(psi, f);
        run("gauge-transformed degenerate_example" + tag, g.psi, g.shift.component(0), q.kappa);
    }
    return rep;
}

/// Light-like difference of every verified pair of potentials sharing a spinor.
[[nodiscard]] inline Report suite_lightlike(std::uint64_t seed, const SampleDomain& d)
{
    Report rep("lightlike");
    Rng rng(seed, 50);
    std::size_t pairs = 0, unverified = 0;
    double worst = 0.0;
    auto consider = [&](const SpinorField& psi, double kappa, const std::vector<FourPotential>& pots) {
        std::vector<const FourPotential*> ok;
        for (const auto& a : pots) {
            if (residual_norm(psi, a, kappa, d).max < 1e-9)
                ok.push_back(&a);
            else
                ++unverified;
        }
        const auto support = sample_support(psi, d).support;
        for (std::size_t i = 0; i < ok.size(); ++i)
            for (std::size_t j = i + 1; j < ok.size(); ++j) {
                ++pairs;
                for (const auto& p : support) worst = std::max(worst, std::abs(lightlike_gap(*ok[i], *ok[j], p)));
            }
    };
    for (const auto& q : catalog_degenerate_params()) {
        const auto psi = degenerate_example(q.kappa, q.alpha, q.phi1, q.phi2);
        const auto cls = classify(psi, d, 1e-10, q.kappa);
        std::vector<FourPotential> pots{FourPotential::zero()};
        for (const auto& f : family_functions()) pots.push_back(potential_family(psi, FourPotential::zero(), parse(f), cls));
        pots.push_back(potential_family(psi, FourPotential::zero(), detail::random_gauge_function(rng), cls));
        consider(psi, q.kappa, pots);
    }
    rep.check_below("max |gap| over verified pairs", worst, 1e-8);
    rep.check("all candidate potentials verified", unverified == 0, {{"unverified", unverified}});
    rep.set("pairs", pairs);
    return rep;
}

/// Every suite, in a fixed order.
[[nodiscard]] inline Report run_selftest(const SelftestOptions& opt = {})
{
    const SampleDomain d = opt.domain();
    Report rep("selftest");
    rep.set("seed", opt.seed);
    rep.set("samples", opt.samples);
    rep.add_section(structure_selftest(opt.gammas));
    rep.add_section(suite_exprlang(opt.seed));
    rep.add_section(suite_lemmas(opt.seed));
    rep.add_section(catalog_selftest(d));
    rep.add_section(suite_degenerate_residual(d));
    rep.add_section(suite_family(d));
    rep.add_section(suite_theta(d));
    rep.add_section(suite_gauge_inequivalence(d));
    rep.add_section(suite_inversion(opt.seed, d));
    rep.add_section(suite_mass(opt.seed, d));
    rep.add_section(suite_lightlike(opt.seed, d));
    return rep;
}

}  // namespace diracinv
