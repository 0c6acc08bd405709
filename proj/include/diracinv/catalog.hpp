#pragma once

/**
 * @file catalog.hpp
 * @brief Closed-form solutions used as fixtures and demos.
 *
 *   rest_plane_wave     [e^{-i kappa x0}, 0, 0, 0], a = 0, non-degenerate
 *   degenerate_example  force-free degenerate plane wave with complex exponents
 *   lset                six spinor shapes with Psi^T g2 Psi = 0
 *
 * Entries are checked against the Dirac residual the first time the registry
 * is used; a failing check throws CatalogSelfTest naming the failed identity.
 */

#include "diracinv/clifford.hpp"
#include "diracinv/degeneracy.hpp"
#include "diracinv/errors.hpp"
#include "diracinv/expr.hpp"
#include "diracinv/fields.hpp"
#include "diracinv/potential.hpp"
#include "diracinv/report.hpp"
#include "diracinv/sampling.hpp"
#include "diracinv/verify.hpp"

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace diracinv {

struct CatalogEntry {
    std::string name;
    SpinorField spinor;
    std::optional<double> kappa;            ///< known mass, if the entry is a Dirac solution
    std::optional<FourPotential> potential; ///< known potential
    std::optional<Verdict> expected;
    nlohmann::ordered_json args;            ///< resolved arguments, echoed in reports
};

inline constexpr double kSingularMargin = 1e-6;

[[nodiscard]] inline CatalogEntry rest_plane_wave(double kappa)
{
    if (!std::isfinite(kappa)) throw Error(ErrorCode::NonFinite, "kappa must be finite");
    SpinorField psi({exp(Expr(-I * kappa) * Expr::var(0)), Expr(0.0), Expr(0.0), Expr(0.0)});
    return {"rest_plane_wave", std::move(psi), kappa, FourPotential::zero(), Verdict::NonDegenerate,
            {{"kappa", kappa}}};
}

/// Exponents (p0, p1, p2, p3) of the degenerate plane wave.
[[nodiscard]] inline std::array<cplx, 4> degenerate_exponents(double kappa, double alpha, double phi1, double phi2)
{
    if (!std::isfinite(kappa) || !std::isfinite(alpha) || !std::isfinite(phi1) || !std::isfinite(phi2))
        throw Error(ErrorCode::NonFinite, "degenerate_example parameters must be finite");
    const double ca = std::cos(alpha), sa = std::sin(alpha), c2 = std::cos(phi2);
    if (std::abs(ca) < kSingularMargin || std::abs(c2) < kSingularMargin)
        throw Error(ErrorCode::ParameterOnSingularLocus, "cos(alpha) and cos(phi2) must stay away from 0");
    const cplx e1 = std::exp(I * phi1), e21 = std::exp(2.0 * I * phi1), e22 = std::exp(2.0 * I * phi2);
    const cplx den = 2.0 * e1 * ca * c2;
    return {-kappa * std::tan(phi2), I * kappa * (1.0 + e22 * sa * sa - e21 * ca * ca) / den,
            kappa * (1.0 + e21 * ca * ca + e22 * sa * sa) / den, I * kappa * std::exp(I * phi2) * sa / c2};
}

/// [e^{i(phi1-phi2)} cos alpha, sin alpha, 0, 1] exp(p1 x1 + p2 x2 + p3 x3 + p0 x0),
/// force-free (a = 0) with mass kappa. The exponents enter as parameters p0..p3.
[[nodiscard]] inline SpinorField degenerate_example(double kappa, double alpha, double phi1, double phi2)
{
    const auto p = degenerate_exponents(kappa, alpha, phi1, phi2);
    const Params params{{"p0", p[0]}, {"p1", p[1]}, {"p2", p[2]}, {"p3", p[3]}};
    const Expr e = exp(Expr::param("p1") * Expr::var(1) + Expr::param("p2") * Expr::var(2) +
                       Expr::param("p3") * Expr::var(3) + Expr::param("p0") * Expr::var(0));
    const cplx c0 = std::exp(I * (phi1 - phi2)) * std::cos(alpha);
    return SpinorField({Expr(c0) * e, Expr(std::sin(alpha)) * e, Expr(0.0), e}, params);
}

/// Theta of degenerate_example: constant over the support.
[[nodiscard]] inline std::array<double, 3> degenerate_example_theta(double alpha, double phi1, double phi2)
{
    return {std::cos(alpha) * std::cos(phi2 - phi1), std::cos(alpha) * std::sin(phi2 - phi1), -std::sin(alpha)};
}

/// (f, f Theta_1, f Theta_2, f Theta_3) with the constant Theta of degenerate_example.
[[nodiscard]] inline FourPotential example_family(double kappa, double alpha, double phi1, double phi2, const Expr& f,
                                                  const Params& f_params = {})
{
    (void)degenerate_exponents(kappa, alpha, phi1, phi2);
    const auto th = degenerate_example_theta(alpha, phi1, phi2);
    return FourPotential({f, Expr(th[0]) * f, Expr(th[1]) * f, Expr(th[2]) * f}, f_params);
}

/// The six shapes [p1,p2,-p1,-p2], [p1,0,p1,0], [p1,-p1,-p1,p1], [p1,p2,p1,p2],
/// [0,p2,0,-p2], [p1,p1,p1,p1].
[[nodiscard]] inline std::vector<SpinorField> lset_members(const Expr& psi1, const Expr& psi2,
                                                           const Params& params = {})
{
    const Expr z(0.0);
    return {SpinorField({psi1, psi2, -psi1, -psi2}, params), SpinorField({psi1, z, psi1, z}, params),
            SpinorField({psi1, -psi1, -psi1, psi1}, params), SpinorField({psi1, psi2, psi1, psi2}, params),
            SpinorField({z, psi2, z, -psi2}, params),        SpinorField({psi1, psi1, psi1, psi1}, params)};
}

// ---------------------------------------------------------------------------
// Self-test

struct DegenerateParams {
    double kappa, alpha, phi1, phi2;
};

/// Parameter triples used by the self-test, all well away from the singular locus.
[[nodiscard]] inline const std::vector<DegenerateParams>& catalog_degenerate_params()
{
    static const std::vector<DegenerateParams> v{
        {1.0, 0.3, 0.2, -0.1}, {1.0, 0.0, 0.0, 0.0}, {2.0, -0.7, 1.1, 0.4}, {0.5, 1.0, -2.0, 0.9}, {1.5, 0.9, 2.5, -0.6},
    };
    return v;
}

[[nodiscard]] inline Report catalog_selftest(const SampleDomain& d = {})
{
    Report rep("catalog");
    for (double k : {1.0, 0.5, 2.0}) {
        const auto e = rest_plane_wave(k);
        const std::string tag = "rest_plane_wave(kappa=" + nlohmann::json(k).dump() + ")";
        const auto r = residual_norm(e.spinor, *e.potential, k, d);
        rep.check_below(tag + ": Dirac residual", r.max, 1e-12);
        rep.check(tag + ": non-degenerate", classify(e.spinor, d).verdict == Verdict::NonDegenerate);
    }
    for (const auto& q : catalog_degenerate_params()) {
        const auto psi = degenerate_example(q.kappa, q.alpha, q.phi1, q.phi2);
        const std::string tag = "degenerate_example(" + nlohmann::json(q.kappa).dump() + "," +
                                nlohmann::json(q.alpha).dump() + "," + nlohmann::json(q.phi1).dump() + "," +
                                nlohmann::json(q.phi2).dump() + ")";
        rep.check_below(tag + ": force-free Dirac residual", residual_norm(psi, FourPotential::zero(), q.kappa, d).max,
                        1e-10);
        double ind = 0.0, th_err = 0.0;
        const auto expect = degenerate_example_theta(q.alpha, q.phi1, q.phi2);
        for (const auto& p : d.points()) {
            const CVector4 v = psi.value(p);
            ind = std::max(ind, std::abs(indicator(v)) / v.norm2());
            const auto t = theta(v);
            for (std::size_t i = 0; i < 3; ++i) th_err = std::max(th_err, std::abs(t.theta[i] - expect[i]));
        }
        rep.check_below(tag + ": indicator vanishes", ind, 1e-10);
        rep.check_below(tag + ": Theta matches closed form", th_err, 1e-9);
    }
    const Expr psi1 = parse("x1 + i*x2 - 0.5*x0");
    const Expr psi2 = parse("exp(i*x3) * (1 + x0*x1)");
    const auto members = lset_members(psi1, psi2);
    for (std::size_t m = 0; m < members.size(); ++m) {
        double worst = 0.0;
        for (const auto& p : d.points())
            worst = std::max(worst, std::abs(bilinear_transpose(members[m], gamma(2), p)));
        rep.check_below("lset member " + std::to_string(m + 1) + ": Psi^T g2 Psi vanishes", worst, 1e-12);
    }
    return rep;
}

/// Runs catalog_selftest once; throws CatalogSelfTest if any identity failed.
inline void ensure_catalog()
{
    static const Report rep = catalog_selftest();
    if (!rep.passed()) {
        std::string msg = "catalog self-test failed:";
        for (const auto& f : rep.failures()) msg += " [" + f + "]";
        throw Error(ErrorCode::CatalogSelfTest, msg);
    }
}

// ---------------------------------------------------------------------------
// Registry

[[nodiscard]] inline const std::vector<std::string>& catalog_names()
{
    static const std::vector<std::string> names{"rest_plane_wave", "degenerate_example", "lset"};
    return names;
}

namespace detail {

inline double number_arg(const nlohmann::ordered_json& args, const char* key, double fallback)
{
    if (!args.contains(key)) return fallback;
    const auto& v = args.at(key);
    if (!v.is_number()) throw Error(ErrorCode::Schema, std::string("catalog argument '") + key + "' must be a number");
    return v.get<double>();
}

inline std::string string_arg(const nlohmann::ordered_json& args, const char* key, const char* fallback)
{
    if (!args.contains(key)) return fallback;
    const auto& v = args.at(key);
    if (!v.is_string()) throw Error(ErrorCode::Schema, std::string("catalog argument '") + key + "' must be a string");
    return v.get<std::string>();
}

inline void reject_unknown(const nlohmann::ordered_json& args, std::initializer_list<const char*> known)
{
    if (args.is_null()) return;
    if (!args.is_object()) throw Error(ErrorCode::Schema, "catalog arguments must be an object");
    for (const auto& item : args.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || item.key() == k;
        if (!ok) throw Error(ErrorCode::Schema, "unknown catalog argument '" + item.key() + "'");
    }
}

}  // namespace detail

/// Build a catalog entry by name. Arguments:
///   rest_plane_wave     kappa (1)
///   degenerate_example  kappa (1), alpha (0.3), phi1 (0.2), phi2 (-0.1)
///   lset                member 1..6 (1), psi1, psi2 (expression strings)
[[nodiscard]] inline CatalogEntry make_catalog_entry(const std::string& name, const nlohmann::ordered_json& args = {})
{
    ensure_catalog();
    if (name == "rest_plane_wave") {
        detail::reject_unknown(args, {"kappa"});
        return rest_plane_wave(detail::number_arg(args, "kappa", 1.0));
    }
    if (name == "degenerate_example") {
        detail::reject_unknown(args, {"kappa", "alpha", "phi1", "phi2"});
        const double k = detail::number_arg(args, "kappa", 1.0), a = detail::number_arg(args, "alpha", 0.3),
                     f1 = detail::number_arg(args, "phi1", 0.2), f2 = detail::number_arg(args, "phi2", -0.1);
        return {name, degenerate_example(k, a, f1, f2), k, FourPotential::zero(), Verdict::Degenerate,
                {{"kappa", k}, {"alpha", a}, {"phi1", f1}, {"phi2", f2}}};
    }
    if (name == "lset") {
        detail::reject_unknown(args, {"member", "psi1", "psi2"});
        const double m = detail::number_arg(args, "member", 1.0);
        if (m != std::floor(m) || m < 1 || m > 6) throw Error(ErrorCode::Schema, "lset member must be 1..6");
        const std::string s1 = detail::string_arg(args, "psi1", "x1 + i*x2");
        const std::string s2 = detail::string_arg(args, "psi2", "exp(i*x3)");
        auto members = lset_members(parse(s1), parse(s2));
        return {name, std::move(members[static_cast<std::size_t>(m) - 1]), std::nullopt, std::nullopt, std::nullopt,
                {{"member", static_cast<int>(m)}, {"psi1", s1}, {"psi2", s2}}};
    }
    throw Error(ErrorCode::Schema, "unknown catalog entry '" + name + "'");
}

}  // namespace diracinv
