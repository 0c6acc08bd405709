#pragma once

/**
 * @file degeneracy.hpp
 * @brief Degenerate / non-degenerate classification, the Theta functions,
 *        the potential family of a degenerate spinor, and the pointwise
 *        algebra behind them (degenerate form, zeta coordinates, det P).
 *
 * A spinor is degenerate where the indicator Psi^* delta_4 Psi vanishes.
 * Its real part is Psi^* g4 Psi and its imaginary part is -i Psi^* g5 g4 Psi,
 * so the indicator vanishes exactly when both inversion denominators do.
 */

#include "diracinv/clifford.hpp"
#include "diracinv/errors.hpp"
#include "diracinv/expr.hpp"
#include "diracinv/fields.hpp"
#include "diracinv/potential.hpp"
#include "diracinv/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace diracinv {

[[nodiscard]] inline cplx indicator(const CVector4& x) { return adjoint_form(x, delta(4), x); }

template <JetSource F>
[[nodiscard]] cplx indicator(const F& psi, const Point& p)
{
    return indicator(psi.value(p));
}

enum class Verdict { Degenerate, NonDegenerate, Mixed };

[[nodiscard]] inline const char* to_string(Verdict v) noexcept
{
    switch (v) {
    case Verdict::Degenerate: return "Degenerate";
    case Verdict::NonDegenerate: return "NonDegenerate";
    case Verdict::Mixed: return "Mixed";
    }
    return "?";
}

struct Classification {
    Verdict verdict = Verdict::NonDegenerate;
    std::vector<Point> support_points;
    std::vector<Point> s_points;           ///< indicator != 0
    std::vector<Point> degenerate_points;  ///< in the support, indicator == 0
    std::size_t null_points = 0;
    double tol = 0.0;
    double max_relative_indicator = 0.0;   ///< over degenerate points: |ind| / |Psi|^2
    double min_relative_indicator = 0.0;   ///< over s-points
    /// Set for kappa != 0 degenerate verdicts: does Psi^T g2 Psi stay away from 0
    /// on the sampled support?
    std::optional<bool> gamma2_covers_support;
    std::size_t gamma2_failures = 0;
};

/// Partition sampled support points by |indicator| <= tol |Psi|^2.
template <JetSource F>
[[nodiscard]] Classification classify(const F& psi, const SampleDomain& d, double tol = 1e-10,
                                      std::optional<double> kappa = std::nullopt, double support_tol = 1e-12)
{
    if (!(tol > 0)) throw Error(ErrorCode::Schema, "classification tolerance must be positive");
    const auto part = sample_support(psi, d, support_tol);
    if (part.support.empty()) throw Error(ErrorCode::NoSupportPoints, "no sampled point lies in supp(Psi)");

    Classification c;
    c.tol = tol;
    c.null_points = part.null.size();
    c.support_points = part.support;
    c.min_relative_indicator = INFINITY;
    for (const auto& p : part.support) {
        const CVector4 v = psi.value(p);
        const double rel = std::abs(indicator(v)) / v.norm2();
        if (rel <= tol) {
            c.degenerate_points.push_back(p);
            c.max_relative_indicator = std::max(c.max_relative_indicator, rel);
        } else {
            c.s_points.push_back(p);
            c.min_relative_indicator = std::min(c.min_relative_indicator, rel);
        }
    }
    if (c.s_points.empty()) {
        c.verdict = Verdict::Degenerate;
        c.min_relative_indicator = 0.0;
    } else {
        c.verdict = c.degenerate_points.empty() ? Verdict::NonDegenerate : Verdict::Mixed;
    }

    if (c.verdict == Verdict::Degenerate && kappa && *kappa != 0.0) {
        for (const auto& p : c.support_points) {
            const CVector4 v = psi.value(p);
            if (!(std::abs(transpose_form(v, gamma(2), v)) > tol * v.norm2())) ++c.gamma2_failures;
        }
        c.gamma2_covers_support = c.gamma2_failures == 0;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Theta

struct ThetaOptions {
    double guard = 1e-10;    ///< |Psi^T g2 Psi| relative to |Psi|^2
    double imag_tol = 1e-8;  ///< allowed |Im Theta_i|
};

struct ThetaTriple {
    std::array<double, 3> theta{};
    std::array<double, 3> imag{};

    [[nodiscard]] double norm2() const { return theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2]; }
    [[nodiscard]] double max_imag() const
    {
        return std::max({std::abs(imag[0]), std::abs(imag[1]), std::abs(imag[2])});
    }
};

namespace detail {
inline const CMatrix4& g53()
{
    static const CMatrix4 m = gamma(5) * gamma(3);
    return m;
}
inline const CMatrix4& g51()
{
    static const CMatrix4 m = gamma(5) * gamma(1);
    return m;
}
}  // namespace detail

/// Theta_1 = -i T(g5 g3)/T(g2), Theta_2 = -i T(g4)/T(g2), Theta_3 = i T(g5 g1)/T(g2),
/// with T(M) = Psi^T M Psi.
[[nodiscard]] inline ThetaTriple theta(const CVector4& x, const ThetaOptions& opt = {})
{
    const cplx t2 = transpose_form(x, gamma(2), x);
    if (!(std::abs(t2) > opt.guard * x.norm2()))
        throw Error(ErrorCode::GuardViolated, "Psi^T g2 Psi vanishes at this point; Theta undefined");
    const std::array<cplx, 3> z{-I * transpose_form(x, detail::g53(), x) / t2,
                                -I * transpose_form(x, gamma(4), x) / t2,
                                I * transpose_form(x, detail::g51(), x) / t2};
    ThetaTriple t;
    for (std::size_t k = 0; k < 3; ++k) {
        t.theta[k] = z[k].real();
        t.imag[k] = z[k].imag();
        if (!std::isfinite(t.theta[k]) || !std::isfinite(t.imag[k]))
            throw Error(ErrorCode::NonFinite, "Theta is not finite");
        if (std::abs(t.imag[k]) > opt.imag_tol * (1.0 + std::abs(t.theta[k])))
            throw Error(ErrorCode::NonRealTheta, "Theta_" + std::to_string(k + 1) + " has imaginary part " +
                                                     std::to_string(t.imag[k]) + "; Psi is not a degenerate solution");
    }
    return t;
}

template <JetSource F>
[[nodiscard]] ThetaTriple theta(const F& psi, const Point& p, const ThetaOptions& opt = {})
{
    return theta(psi.value(p), opt);
}

/// Symbolic Theta_1..3 of a closed-form spinor.
[[nodiscard]] inline std::array<Expr, 3> theta_exprs(const SpinorField& psi)
{
    const Expr t2 = transpose_bilinear_expr(psi, gamma(2));
    return {Expr(-I) * transpose_bilinear_expr(psi, detail::g53()) / t2,
            Expr(-I) * transpose_bilinear_expr(psi, gamma(4)) / t2,
            Expr(I) * transpose_bilinear_expr(psi, detail::g51()) / t2};
}

/// (a0 + f, a1 + f Theta_1, a2 + f Theta_2, a3 + f Theta_3). Theta is kept
/// symbolic, so the member can be differentiated (field tensor) and is
/// undefined wherever Psi^T g2 Psi = 0.
[[nodiscard]] inline FourPotential potential_family(const SpinorField& psi, const FourPotential& base, const Expr& f,
                                                    const Classification& cls, const Params& f_params = {})
{
    if (cls.verdict != Verdict::Degenerate)
        throw Error(ErrorCode::NotDegenerate,
                    std::string("potential family requires a degenerate spinor, classification is ") +
                        to_string(cls.verdict));
    if (f.is_zero()) return base;
    const auto th = theta_exprs(psi);
    const Params params = merge_params(merge_params(base.params(), psi.params()), f_params);
    return FourPotential({base.component(0) + f, base.component(1) + f * th[0], base.component(2) + f * th[1],
                          base.component(3) + f * th[2]},
                         params);
}

// ---------------------------------------------------------------------------
// Degenerate form  Psi = u [conj w, 1, conj w, 1] + v [1, -w, -1, w]

[[nodiscard]] inline SpinorField compose_degenerate(const Expr& u, const Expr& v, const Expr& w,
                                                    const Params& params = {})
{
    const Expr wb = conj(w);
    return SpinorField({u * wb + v, u - v * w, u * wb - v, u + v * w}, params);
}

[[nodiscard]] inline CVector4 compose_degenerate(cplx u, cplx v, cplx w)
{
    const cplx wb = std::conj(w);
    return CVector4{{u * wb + v, u - v * w, u * wb - v, u + v * w}};
}

struct DegenerateForm {
    cplx u, v, w;
    bool ambiguous = false;  ///< only for the zero vector, where (0,0,0) is returned
};

/// Pointwise inverse of compose_degenerate. Throws NotRepresentable when x is
/// not of the degenerate form (equivalently, indicator(x) != 0).
[[nodiscard]] inline DegenerateForm decompose_degenerate(const CVector4& x, double tol = 1e-10)
{
    const double scale = x.norm();
    if (scale == 0.0) return {0.0, 0.0, 0.0, true};
    const cplx u = (x[1] + x[3]) / 2.0;
    const cplx v = (x[0] - x[2]) / 2.0;
    cplx w;
    if (std::abs(u) >= std::abs(v))
        w = std::conj((x[0] + x[2]) / (2.0 * u));
    else
        w = (x[3] - x[1]) / (2.0 * v);
    const CVector4 back = compose_degenerate(u, v, w);
    if (!((back - x).norm() <= tol * scale))
        throw Error(ErrorCode::NotRepresentable, "vector is not of the degenerate form (indicator " +
                                                     std::to_string(std::abs(indicator(x))) + ")");
    return {u, v, w, false};
}

// ---------------------------------------------------------------------------
// zeta coordinates

[[nodiscard]] inline const CMatrix4& zeta_matrix()
{
    static const CMatrix4 m = CMatrix4::from_rows(
        {{{0.5, 0.0, 0.5, 0.0}, {0.5, 0.0, -0.5, 0.0}, {0.0, 0.5, 0.0, 0.5}, {0.0, 0.5, 0.0, -0.5}}});
    return m;
}

[[nodiscard]] inline const CMatrix4& unzeta_matrix()
{
    static const CMatrix4 m = CMatrix4::from_rows(
        {{{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 1.0}, {1.0, -1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, -1.0}}});
    return m;
}

[[nodiscard]] inline CVector4 zeta(const CVector4& x) { return zeta_matrix() * x; }
[[nodiscard]] inline CVector4 unzeta(const CVector4& z) { return unzeta_matrix() * z; }

// ---------------------------------------------------------------------------
// Algebraic identities behind the classification

struct Lemma41Result {
    bool lhs = false;      ///< the three symmetrised products vanish
    bool rhs = false;      ///< (Psi^T g2 Psi)(Psi^* delta4 Psi) vanishes
    double lhs_value = 0;  ///< largest of the three |.|
    double rhs_value = 0;
    double threshold = 0;  ///< tol |x|^4
};

/// Both sides of the equivalence: T2 conj(T_M) + T_M conj(T2) = 0 for
/// M in {g1 g2 g4, g4, g2 g3 g4}, versus T2 * indicator = 0.
[[nodiscard]] inline Lemma41Result lemma41_conditions(const CVector4& x, double tol = 1e-10)
{
    static const std::array<CMatrix4, 3> ms{gamma(1) * gamma(2) * gamma(4), gamma(4), gamma(2) * gamma(3) * gamma(4)};
    Lemma41Result r;
    const double n2 = x.norm2();
    r.threshold = tol * n2 * n2;
    const cplx t2 = transpose_form(x, gamma(2), x);
    for (const auto& m : ms) {
        const cplx tm = transpose_form(x, m, x);
        r.lhs_value = std::max(r.lhs_value, std::abs(t2 * std::conj(tm) + tm * std::conj(t2)));
    }
    r.rhs_value = std::abs(t2 * indicator(x));
    r.lhs = r.lhs_value <= r.threshold;
    r.rhs = r.rhs_value <= r.threshold;
    return r;
}

struct Lemma42Result {
    bool bilinears_vanish = false;  ///< Psi^T g2 Psi = Psi^* delta4 Psi = 0
    bool has_shape = false;         ///< [p1,p2,p1,p2] or [p1,p2,-p1,-p2], i.e. zeta_1=zeta_3=0 or zeta_2=zeta_4=0
};

[[nodiscard]] inline Lemma42Result lemma42_check(const CVector4& x, double tol = 1e-10)
{
    const double n2 = x.norm2();
    const double n = std::sqrt(n2);
    const CVector4 z = zeta(x);
    Lemma42Result r;
    r.bilinears_vanish = std::abs(transpose_form(x, gamma(2), x)) <= tol * n2 && std::abs(indicator(x)) <= tol * n2;
    r.has_shape = (std::abs(z[0]) <= tol * n && std::abs(z[2]) <= tol * n) ||
                  (std::abs(z[1]) <= tol * n && std::abs(z[3]) <= tol * n);
    return r;
}

/// |det P| for the real 4x4 system built from k1 = Re psi1, l1 = Im psi1,
/// k2 = Re psi2, l2 = Im psi2.
[[nodiscard]] inline double lemma43_detP(cplx psi1, cplx psi2)
{
    const double k1 = psi1.real(), l1 = psi1.imag(), k2 = psi2.real(), l2 = psi2.imag();
    std::array<std::array<double, 4>, 4> m{{{-k1, -k2, -l2, -k1}, {-l1, -l2, k2, -l1}, {-k2, -k1, l1, k2},
                                            {-l2, -l1, -k1, l2}}};
    // Gaussian elimination with partial pivoting
    double det = 1.0;
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < 4; ++r)
            if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
        if (m[piv][c] == 0.0) return 0.0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (std::size_t r = c + 1; r < 4; ++r) {
            const double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return std::abs(det);
}

}  // namespace diracinv
