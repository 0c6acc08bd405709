#pragma once

/**
 * @file inversion.hpp
 * @brief Pointwise recovery of the 4-potential and the mass from a spinor,
 *        gauge transforms and temporal gauge fixing.
 *
 * Three algebraic routes recover (a0, a1, a2, a3) at a point:
 *   - the gamma_4 route, valid where Psi^* g4 Psi != 0,
 *   - the gamma_5 gamma_4 route, valid where Psi^* g5 g4 Psi != 0,
 *   - the combined (delta_4) route, valid on the whole non-degenerate set
 *     where Psi^* delta_4 Psi != 0.
 * Each route divides by its bilinear, so each has a guard relative to |Psi|^2.
 */

#include "diracinv/clifford.hpp"
#include "diracinv/errors.hpp"
#include "diracinv/expr.hpp"
#include "diracinv/fields.hpp"
#include "diracinv/potential.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

namespace diracinv {

struct InversionOptions {
    double guard = 1e-10;     ///< relative to |Psi(p)|^2
    double imag_tol = 1e-8;   ///< |Im a_mu| allowed, relative to 1 + |Re a_mu|
};

/// Potential recovered at one point: real parts and the discarded imaginary parts.
struct RecoveredPotential {
    std::array<double, 4> a{};
    std::array<double, 4> imag{};

    [[nodiscard]] double max_imag() const
    {
        double m = 0.0;
        for (double x : imag) m = std::max(m, std::abs(x));
        return m;
    }
};

namespace detail {

[[nodiscard]] inline RecoveredPotential finish(const std::array<cplx, 4>& a, const InversionOptions& opt)
{
    RecoveredPotential r;
    for (std::size_t k = 0; k < 4; ++k) {
        r.a[k] = a[k].real();
        r.imag[k] = a[k].imag();
        if (!std::isfinite(r.a[k]) || !std::isfinite(r.imag[k]))
            throw Error(ErrorCode::NonFinite, "recovered potential is not finite");
        if (std::abs(r.imag[k]) > opt.imag_tol * (1.0 + std::abs(r.a[k])))
            throw Error(ErrorCode::NonRealPotential,
                        "a" + std::to_string(k) + " has imaginary part " + std::to_string(r.imag[k]));
    }
    return r;
}

inline void require_guard(cplx s, double norm2, const InversionOptions& opt, ErrorCode code, const char* what)
{
    if (!(std::abs(s) > opt.guard * norm2))
        throw Error(code, std::string(what) + " vanishes at this point (|" + what + "| = " +
                              std::to_string(std::abs(s)) + ")");
}

struct Bilinears {
    const SpinorJet& j;
    [[nodiscard]] cplx at(const CMatrix4& m) const { return adjoint_form(j.value, m, j.value); }
    [[nodiscard]] cplx d(const CMatrix4& m, int axis) const { return partial_adjoint(j, m, axis); }
    [[nodiscard]] cplx bd(const CMatrix4& m, int axis) const { return bidirectional(j, m, axis); }
};

}  // namespace detail

/// Combined route: the sums of the gamma_4 and gamma_5 gamma_4 relations,
/// solved for a0..a3 at one point.
[[nodiscard]] inline RecoveredPotential invert_combined(const SpinorJet& j, double kappa,
                                                        const InversionOptions& opt = {})
{
    const detail::Bilinears b{j};
    const CMatrix4 d1 = delta(1), d2 = delta(2), d3 = delta(3), d4 = delta(4);
    const cplx s = b.at(d4);
    detail::require_guard(s, j.value.norm2(), opt, ErrorCode::DegeneratePoint, "Psi* delta4 Psi");
    const cplx norm = j.value.norm2();
    const auto g = [](int k) -> const CMatrix4& { return gamma(k); };
    std::array<cplx, 4> a;
    a[0] = (-b.d(d1, 1) - b.d(d2, 2) - b.d(d3, 3) + I * b.bd(d4, 0) - 2.0 * kappa * norm) / (2.0 * s);
    a[1] = (-2.0 * kappa * b.at(g(1) * g(4)) + b.bd(d4, 1) - b.d(d3, 2) + b.d(d2, 3) + I * b.d(d1, 0)) / (2.0 * I * s);
    a[2] = (-2.0 * kappa * b.at(g(2) * g(4)) + b.d(d3, 1) + b.bd(d4, 2) - b.d(d1, 3) + I * b.d(d2, 0)) / (2.0 * I * s);
    a[3] = (-2.0 * kappa * b.at(g(3) * g(4)) - b.d(d2, 1) + b.d(d1, 2) + b.bd(d4, 3) + I * b.d(d3, 0)) / (2.0 * I * s);
    return detail::finish(a, opt);
}

/// gamma_4 route. The temporal term of the a1 relation is i d0(Psi* g1 Psi);
/// see the residual test in test_inversion.cpp.
[[nodiscard]] inline RecoveredPotential invert_gamma4(const SpinorJet& j, double kappa,
                                                      const InversionOptions& opt = {})
{
    const detail::Bilinears b{j};
    const auto g = [](int k) -> const CMatrix4& { return gamma(k); };
    const cplx s = b.at(g(4));
    detail::require_guard(s, j.value.norm2(), opt, ErrorCode::GuardViolated, "Psi* g4 Psi");
    const cplx norm = j.value.norm2();
    const CMatrix4 g51 = g(5) * g(1), g52 = g(5) * g(2), g53 = g(5) * g(3);
    std::array<cplx, 4> a;
    a[0] = (-b.d(g(1), 1) - b.d(g(2), 2) - b.d(g(3), 3) + I * b.bd(g(4), 0) - 2.0 * kappa * norm) / (2.0 * s);
    a[1] = (-2.0 * kappa * b.at(g(1) * g(4)) + b.bd(g(4), 1) - b.d(g53, 2) + b.d(g52, 3) + I * b.d(g(1), 0)) /
           (2.0 * I * s);
    a[2] = (-2.0 * kappa * b.at(g(2) * g(4)) + b.d(g53, 1) + b.bd(g(4), 2) - b.d(g51, 3) + I * b.d(g(2), 0)) /
           (2.0 * I * s);
    a[3] = (-2.0 * kappa * b.at(g(3) * g(4)) - b.d(g52, 1) + b.d(g51, 2) + b.bd(g(4), 3) + I * b.d(g(3), 0)) /
           (2.0 * I * s);
    return detail::finish(a, opt);
}

/// gamma_5 gamma_4 route; kappa drops out of these relations.
[[nodiscard]] inline RecoveredPotential invert_gamma5gamma4(const SpinorJet& j, double /*kappa*/,
                                                            const InversionOptions& opt = {})
{
    const detail::Bilinears b{j};
    const auto g = [](int k) -> const CMatrix4& { return gamma(k); };
    const CMatrix4 g51 = g(5) * g(1), g52 = g(5) * g(2), g53 = g(5) * g(3), g54 = g(5) * g(4);
    const cplx s = b.at(g54);
    detail::require_guard(s, j.value.norm2(), opt, ErrorCode::GuardViolated, "Psi* g5 g4 Psi");
    std::array<cplx, 4> a;
    a[0] = (I * b.bd(g54, 0) - b.d(g51, 1) - b.d(g52, 2) - b.d(g53, 3)) / (2.0 * s);
    a[1] = (b.bd(g54, 1) - b.d(g(3), 2) + b.d(g(2), 3) + I * b.d(g51, 0)) / (2.0 * I * s);
    a[2] = (b.d(g(3), 1) + b.bd(g54, 2) - b.d(g(1), 3) + I * b.d(g52, 0)) / (2.0 * I * s);
    a[3] = (-b.d(g(2), 1) + b.d(g(1), 2) + b.bd(g54, 3) + I * b.d(g53, 0)) / (2.0 * I * s);
    return detail::finish(a, opt);
}

template <JetSource F>
[[nodiscard]] RecoveredPotential invert_combined(const F& psi, double kappa, const Point& p,
                                                 const InversionOptions& opt = {})
{
    return invert_combined(psi.jet(p), kappa, opt);
}
template <JetSource F>
[[nodiscard]] RecoveredPotential invert_gamma4(const F& psi, double kappa, const Point& p,
                                               const InversionOptions& opt = {})
{
    return invert_gamma4(psi.jet(p), kappa, opt);
}
template <JetSource F>
[[nodiscard]] RecoveredPotential invert_gamma5gamma4(const F& psi, double kappa, const Point& p,
                                                     const InversionOptions& opt = {})
{
    return invert_gamma5gamma4(psi.jet(p), kappa, opt);
}

// ---------------------------------------------------------------------------
// Mass

/// kappa = [i bd_0(Psi* g4 Psi) - sum_mu d_mu(Psi* g_mu Psi) - 2 a0 Psi* g4 Psi] / (2 Psi* Psi).
/// Complex on purpose: the imaginary part is a non-solution diagnostic.
[[nodiscard]] inline cplx extract_mass_at(const SpinorJet& j, double a0)
{
    const double norm2 = j.value.norm2();
    if (norm2 == 0.0) throw Error(ErrorCode::ZeroNorm, "Psi vanishes at this point");
    const detail::Bilinears b{j};
    const cplx num = I * b.bd(gamma(4), 0) - b.d(gamma(1), 1) - b.d(gamma(2), 2) - b.d(gamma(3), 3) -
                     2.0 * a0 * b.at(gamma(4));
    return num / (2.0 * norm2);
}

template <JetSource F>
[[nodiscard]] cplx extract_mass_at(const F& psi, const Expr& a0, const Point& p, const Params& a0_params = {})
{
    return extract_mass_at(psi.jet(p), evaluate(a0, p, a0_params).real());
}

// ---------------------------------------------------------------------------
// Gauge

struct GaugeTransformed {
    SpinorField psi;      ///< e^{-i f} Psi
    FourPotential shift;  ///< add to the potential of Psi to get the potential of psi
};

/// Psi' = e^{-i f} Psi solves the Dirac equation with a + (d0 f, -d1 f, -d2 f, -d3 f)
/// whenever Psi solves it with a (same kappa).
[[nodiscard]] inline GaugeTransformed gauge_transform(const SpinorField& psi, const Expr& f, const Params& f_params = {})
{
    const Params params = merge_params(psi.params(), f_params);
    const Expr phase = exp(Expr(-I) * f);
    SpinorField out({phase * psi.component(0), phase * psi.component(1), phase * psi.component(2),
                     phase * psi.component(3)},
                    params);
    FourPotential shift({differentiate(f, 0), -differentiate(f, 1), -differentiate(f, 2), -differentiate(f, 3)},
                        f_params);
    return {std::move(out), std::move(shift)};
}

/// Psi_0 = exp(+i int_k^{x0} a0(s, x1, x2, x3) ds) Psi, the representative of
/// the gauge class with vanishing temporal potential. The phase integral and
/// its spatial derivatives are computed by adaptive Gauss-Kronrod quadrature.
class TemporalGaugeFixed {
public:
    TemporalGaugeFixed(SpinorField psi, Expr a0, double k, Params a0_params = {}, double tol = 1e-11)
        : psi_(std::move(psi)), a0_(std::move(a0)), params_(std::move(a0_params)), k_(k), tol_(tol)
    {
        for (int ax = 1; ax <= 3; ++ax) da0_[static_cast<std::size_t>(ax - 1)] = differentiate(a0_, ax);
    }

    [[nodiscard]] const SpinorField& base() const noexcept { return psi_; }

    [[nodiscard]] CVector4 value(const Point& p) const { return std::exp(I * integral(a0_, p)) * psi_.value(p); }

    [[nodiscard]] SpinorJet jet(const Point& p) const
    {
        const SpinorJet base = psi_.jet(p);
        const cplx phase = std::exp(I * integral(a0_, p));
        std::array<double, 4> dphase{};
        dphase[0] = evaluate(a0_, p, params_).real();
        for (int ax = 1; ax <= 3; ++ax)
            dphase[static_cast<std::size_t>(ax)] = integral(da0_[static_cast<std::size_t>(ax - 1)], p);
        SpinorJet j;
        j.value = phase * base.value;
        for (std::size_t mu = 0; mu < 4; ++mu) j.d[mu] = phase * (base.d[mu] + (I * dphase[mu]) * base.value);
        return j;
    }

private:
    /// int_k^{x0} g(s, x1, x2, x3) ds, real part of g.
    [[nodiscard]] double integral(const Expr& g, const Point& p) const
    {
        if (g.is_const()) return g.const_value().real() * (p[0] - k_);
        if (p[0] == k_) return 0.0;
        // Integrate over t in [0, 1] with s = k + t (x0 - k). Boost compares its
        // error estimate against a tolerance scaled by the interval width, so
        // short raw intervals would never converge.
        const double len = p[0] - k_;
        auto integrand = [&](double t) {
            Point q = p;
            q[0] = k_ + t * len;
            return evaluate(g, q, params_).real();
        };
        double err = 0.0, l1 = 0.0;
        double v = 0.0;
        try {
            v = len * boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, 0.0, 1.0, 20, tol_, &err, &l1);
        } catch (const Error& e) {
            throw Error(ErrorCode::Quadrature, std::string("integrand failed: ") + e.what());
        }
        if (!std::isfinite(v) || !(err <= 1e3 * tol_ * (1.0 + l1)))
            throw Error(ErrorCode::Quadrature, "quadrature did not converge (error estimate " + std::to_string(err) + ")");
        return v;
    }

    SpinorField psi_;
    Expr a0_;
    Params params_;
    double k_;
    double tol_;
    std::array<Expr, 3> da0_{};
};

static_assert(JetSource<TemporalGaugeFixed>);

[[nodiscard]] inline TemporalGaugeFixed gauge_fix_temporal(const SpinorField& psi, const Expr& a0, double k,
                                                           const Params& a0_params = {})
{
    return TemporalGaugeFixed(psi, a0, k, a0_params);
}

struct MassOptions {
    double support_tol = 1e-12;
    double spread_tol = 1e-9;       ///< allowed spread and |Im kappa|, relative to 1 + |kappa|
    double cross_check_tol = 1e-8;  ///< primary vs gauge-fixed route, relative to 1 + |kappa|
    double gauge_fix_origin = 0.0;  ///< lower limit k of the phase integral
};

struct MassEstimate {
    double mean = 0.0;
    double spread = 0.0;       ///< max |kappa(p) - mean|
    double max_imag = 0.0;     ///< max |Im kappa(p)|
    double cross_check = 0.0;  ///< mean through the temporal-gauge representative with a0 = 0
    std::size_t points = 0;
};

/// Mass from every sampled support point. A spread beyond tolerance means no
/// single kappa fits Psi with this a0, i.e. the input is not a Dirac solution.
[[nodiscard]] inline MassEstimate extract_mass(const SpinorField& psi, const Expr& a0, const SampleDomain& d,
                                               const Params& a0_params = {}, const MassOptions& opt = {})
{
    const auto part = sample_support(psi, d, opt.support_tol);
    if (part.support.empty()) throw Error(ErrorCode::NoSupportPoints, "no sampled point lies in supp(Psi)");
    const TemporalGaugeFixed fixed(psi, a0, opt.gauge_fix_origin, a0_params);

    std::vector<double> values;
    MassEstimate est;
    double cross_sum = 0.0;
    for (const auto& p : part.support) {
        const cplx k = extract_mass_at(psi, a0, p, a0_params);
        values.push_back(k.real());
        est.max_imag = std::max(est.max_imag, std::abs(k.imag()));
        cross_sum += extract_mass_at(fixed.jet(p), 0.0).real();
    }
    double sum = 0.0;
    for (double v : values) sum += v;
    est.points = values.size();
    est.mean = sum / static_cast<double>(values.size());
    est.cross_check = cross_sum / static_cast<double>(values.size());
    for (double v : values) est.spread = std::max(est.spread, std::abs(v - est.mean));

    const double scale = 1.0 + std::abs(est.mean);
    if (!(est.spread <= opt.spread_tol * scale) || !(est.max_imag <= opt.spread_tol * scale))
        throw Error(ErrorCode::MassInconsistent, "mass varies over the support (spread " + std::to_string(est.spread) +
                                                     ", max |Im| " + std::to_string(est.max_imag) + ")");
    if (!(std::abs(est.cross_check - est.mean) <= opt.cross_check_tol * scale))
        throw Error(ErrorCode::MassInconsistent, "gauge-fixed route disagrees with the direct route");
    return est;
}

}  // namespace diracinv
