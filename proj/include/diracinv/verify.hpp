#pragma once

/**
 * @file verify.hpp
 * @brief Dirac residual (the ground-truth oracle for every claimed
 *        (Psi, a, kappa) triple), field tensors and potential comparisons.
 */

#include "diracinv/clifford.hpp"
#include "diracinv/fields.hpp"
#include "diracinv/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

namespace diracinv {

/// [sum_{mu=1..3} g_mu (d_mu - i a_mu) - i g4 (d0 + i a0) + kappa] Psi at one point.
[[nodiscard]] inline CVector4 dirac_residual(const SpinorJet& j, const std::array<double, 4>& a, double kappa)
{
    CVector4 r = kappa * j.value;
    for (int mu = 1; mu <= 3; ++mu) {
        const CVector4 cov = j.d[static_cast<std::size_t>(mu)] - (I * a[static_cast<std::size_t>(mu)]) * j.value;
        r += gamma(mu) * cov;
    }
    const CVector4 temporal = j.d[0] + (I * a[0]) * j.value;
    r -= I * (gamma(4) * temporal);
    return r;
}

template <JetSource F>
[[nodiscard]] CVector4 dirac_residual(const F& psi, const FourPotential& a, double kappa, const Point& p)
{
    return dirac_residual(psi.jet(p), a.values(p), kappa);
}

struct ResidualReport {
    std::vector<Point> points;
    std::vector<double> norms;
    double max = 0.0;
    double max_relative = 0.0;  ///< max of |r| / ((|kappa| + 1) |Psi|)
    std::optional<Point> argmax;
    bool no_support_points = false;
};

/// Residual norms over the sampled support of Psi.
template <JetSource F>
[[nodiscard]] ResidualReport residual_norm(const F& psi, const FourPotential& a, double kappa, const SampleDomain& d,
                                           double support_tol = 1e-12)
{
    ResidualReport rep;
    const auto part = sample_support(psi, d, support_tol);
    rep.no_support_points = part.support.empty();
    for (const auto& p : part.support) {
        const SpinorJet j = psi.jet(p);
        const double n = dirac_residual(j, a.values(p), kappa).norm();
        rep.points.push_back(p);
        rep.norms.push_back(n);
        if (!rep.argmax || n > rep.max) {
            rep.max = n;
            rep.argmax = p;
        }
        rep.max_relative = std::max(rep.max_relative, n / ((std::abs(kappa) + 1.0) * j.value.norm()));
    }
    return rep;
}

/// The six independent entries f_01 f_02 f_03 f_12 f_13 f_23 of
/// f_{mu nu} = d_mu A_nu - d_nu A_mu with A = (-a0, a1, a2, a3). The sign on
/// a0 makes the gauge shift (+d0 f, -grad f) of this coupling a pure gradient.
struct FieldTensor {
    std::array<double, 6> f{};

    static constexpr std::array<std::array<int, 2>, 6> kIndices{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

    [[nodiscard]] double max_abs() const
    {
        double m = 0.0;
        for (double x : f) m = std::max(m, std::abs(x));
        return m;
    }
};

[[nodiscard]] inline FieldTensor field_tensor(const FourPotential& a, const Point& p)
{
    auto g = a.gradient(p);  // g[mu][c] = d_mu a_c
    for (auto& row : g) row[0] = -row[0];
    FieldTensor t;
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [mu, nu] = FieldTensor::kIndices[k];
        t.f[k] = g[static_cast<std::size_t>(mu)][static_cast<std::size_t>(nu)] -
                 g[static_cast<std::size_t>(nu)][static_cast<std::size_t>(mu)];
    }
    return t;
}

/// Largest pointwise |f(a) - f(b)| entry over the sample.
[[nodiscard]] inline double tensor_distance(const FourPotential& a, const FourPotential& b, const SampleDomain& d)
{
    double m = 0.0;
    for (const auto& p : d.points()) {
        const auto fa = field_tensor(a, p), fb = field_tensor(b, p);
        for (std::size_t k = 0; k < 6; ++k) m = std::max(m, std::abs(fa.f[k] - fb.f[k]));
    }
    return m;
}

/// Field-tensor equality on the sampled (simply connected) box.
[[nodiscard]] inline bool gauge_equivalent(const FourPotential& a, const FourPotential& b, const SampleDomain& d,
                                           double tol = 1e-9)
{
    return tensor_distance(a, b, d) < tol;
}

/// (a0 - b0)^2 - sum_{mu=1..3} (a_mu - b_mu)^2 at p.
[[nodiscard]] inline double lightlike_gap(const FourPotential& a, const FourPotential& b, const Point& p)
{
    const auto va = a.values(p), vb = b.values(p);
    double gap = (va[0] - vb[0]) * (va[0] - vb[0]);
    for (std::size_t mu = 1; mu < 4; ++mu) gap -= (va[mu] - vb[mu]) * (va[mu] - vb[mu]);
    return gap;
}

}  // namespace diracinv
