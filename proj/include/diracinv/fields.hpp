#pragma once

/**
 * @file fields.hpp
 * @brief Spinor fields over closed-form expressions, their pointwise jets,
 *        bilinear covariants and support sampling.
 *
 * Everything downstream of this header is pointwise and works on a
 * SpinorJet (value plus the four exact first partials), so any type
 * satisfying JetSource can stand in for a SpinorField.
 */

#include "diracinv/clifford.hpp"
#include "diracinv/expr.hpp"
#include "diracinv/sampling.hpp"

#include <algorithm>
#include <array>
#include <concepts>
#include <string>
#include <utility>
#include <vector>

namespace diracinv {

/// Value of a spinor at a point together with d/dx_mu of it, mu = 0..3.
struct SpinorJet {
    CVector4 value;
    std::array<CVector4, 4> d;
};

template <class F>
concept JetSource = requires(const F& f, const Point& p) {
    { f.value(p) } -> std::same_as<CVector4>;
    { f.jet(p) } -> std::same_as<SpinorJet>;
};

/// Merge two parameter maps; a name bound to different values is an error.
[[nodiscard]] inline Params merge_params(Params a, const Params& b)
{
    for (const auto& [k, v] : b) {
        const auto [it, inserted] = a.emplace(k, v);
        if (!inserted && it->second != v)
            throw Error(ErrorCode::Schema, "parameter '" + k + "' bound to conflicting values");
    }
    return a;
}

class SpinorField {
public:
    SpinorField() = default;

    SpinorField(std::array<Expr, 4> psi, Params params = {}) : psi_(std::move(psi)), params_(std::move(params))
    {
        // Derivative table built once; fields are immutable afterwards.
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) dpsi_[idx(a)][idx(c)] = differentiate(psi_[idx(c)], a);
    }

    [[nodiscard]] static SpinorField zero() { return SpinorField({Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0)}); }

    [[nodiscard]] const std::array<Expr, 4>& components() const noexcept { return psi_; }
    [[nodiscard]] const Expr& component(int k) const { return psi_.at(idx(k)); }
    [[nodiscard]] const Expr& partial(int component, int axis) const { return dpsi_.at(idx(axis)).at(idx(component)); }
    [[nodiscard]] const Params& params() const noexcept { return params_; }

    [[nodiscard]] CVector4 value(const Point& p) const
    {
        CVector4 v;
        for (int c = 0; c < 4; ++c) v[c] = evaluate(psi_[idx(c)], p, params_);
        return v;
    }

    [[nodiscard]] SpinorJet jet(const Point& p) const
    {
        SpinorJet j;
        j.value = value(p);
        for (int a = 0; a < 4; ++a)
            for (int c = 0; c < 4; ++c) j.d[idx(a)][c] = evaluate(dpsi_[idx(a)][idx(c)], p, params_);
        return j;
    }

    /// s * Psi for a scalar expression s (parameters of s are merged in).
    [[nodiscard]] SpinorField scaled(const Expr& s, const Params& extra = {}) const
    {
        return SpinorField({s * psi_[0], s * psi_[1], s * psi_[2], s * psi_[3]}, merge_params(params_, extra));
    }

private:
    static std::size_t idx(int k) { return static_cast<std::size_t>(k); }

    std::array<Expr, 4> psi_{Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0)};
    Params params_;
    std::array<std::array<Expr, 4>, 4> dpsi_{};
};

static_assert(JetSource<SpinorField>);

// --- pointwise bilinears on jets ---------------------------------------------

/// d_axis (Psi^* M Psi).
[[nodiscard]] inline cplx partial_adjoint(const SpinorJet& j, const CMatrix4& m, int axis)
{
    const auto& dv = j.d[static_cast<std::size_t>(axis)];
    return adjoint_form(dv, m, j.value) + adjoint_form(j.value, m, dv);
}

/// Bidirectional derivative Psi^* M (d Psi) - (d Psi)^* M Psi.
[[nodiscard]] inline cplx bidirectional(const SpinorJet& j, const CMatrix4& m, int axis)
{
    const auto& dv = j.d[static_cast<std::size_t>(axis)];
    return adjoint_form(j.value, m, dv) - adjoint_form(dv, m, j.value);
}

// --- field-level operations ------------------------------------------------

template <JetSource F>
[[nodiscard]] CVector4 spinor_eval(const F& psi, const Point& p)
{
    return psi.value(p);
}

template <JetSource F>
[[nodiscard]] cplx bilinear_adjoint(const F& psi, const CMatrix4& m, const Point& p)
{
    const CVector4 v = psi.value(p);
    return adjoint_form(v, m, v);
}

template <JetSource F>
[[nodiscard]] cplx bilinear_transpose(const F& psi, const CMatrix4& m, const Point& p)
{
    const CVector4 v = psi.value(p);
    return transpose_form(v, m, v);
}

template <JetSource F>
[[nodiscard]] cplx bidirectional(const F& psi, const CMatrix4& m, int axis, const Point& p)
{
    if (axis < 0 || axis > 3) throw Error(ErrorCode::InvalidIndex, "axis must be in 0..3");
    return bidirectional(psi.jet(p), m, axis);
}

/// Psi^T M Psi as an expression (no conjugation).
[[nodiscard]] inline Expr transpose_bilinear_expr(const SpinorField& psi, const CMatrix4& m)
{
    Expr sum(0.0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (m(r, c) != cplx{}) sum = sum + Expr(m(r, c)) * psi.component(r) * psi.component(c);
    return sum;
}

/// Psi^* M Psi as an expression.
[[nodiscard]] inline Expr adjoint_bilinear_expr(const SpinorField& psi, const CMatrix4& m)
{
    Expr sum(0.0);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (m(r, c) != cplx{}) sum = sum + Expr(m(r, c)) * conj(psi.component(r)) * psi.component(c);
    return sum;
}

struct SupportPartition {
    std::vector<Point> support;
    std::vector<Point> null;
    double max_norm = 0.0;
    double threshold = 0.0;
};

/// A sample point is in the support iff |Psi(p)| > tol * (1 + max sampled |Psi|).
/// The result is relative to the sampled domain only.
template <JetSource F>
[[nodiscard]] SupportPartition sample_support(const F& psi, const SampleDomain& d, double tol = 1e-12)
{
    if (!(tol > 0)) throw Error(ErrorCode::Schema, "support tolerance must be positive");
    const auto pts = d.points();
    std::vector<double> norms;
    norms.reserve(pts.size());
    SupportPartition part;
    for (const auto& p : pts) {
        norms.push_back(psi.value(p).norm());
        part.max_norm = std::max(part.max_norm, norms.back());
    }
    part.threshold = tol * (1.0 + part.max_norm);
    for (std::size_t k = 0; k < pts.size(); ++k)
        (norms[k] > part.threshold ? part.support : part.null).push_back(pts[k]);
    return part;
}

}  // namespace diracinv
