#pragma once

/**
 * @file manufactured.hpp
 * @brief Manufactured (Psi, a, kappa) triples with a known potential.
 *
 * A plane wave u e^{i k.x - i w x0} solves the free equation when
 * (A + kappa) u = 0 with A = i g.k - g4 w. Taking u = (A - kappa) e for any e
 * works because A^2 = w^2 - k^2 = kappa^2. Superposing
 * several waves and multiplying by e^{-i f} gives a spinor with potential
 * (d0 f, -d1 f, -d2 f, -d3 f).
 */

#include "diracinv/clifford.hpp"
#include "diracinv/expr.hpp"
#include "diracinv/fields.hpp"
#include "diracinv/inversion.hpp"
#include "diracinv/potential.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace diracinv {

struct PlaneWave {
    std::array<double, 3> k{};
    CVector4 polarization{};  ///< the free vector e
};

struct ManufacturedSolution {
    SpinorField spinor;
    FourPotential potential;
    double kappa = 0.0;
};

/// Sum of free plane waves of mass kappa, each with positive frequency.
[[nodiscard]] inline SpinorField plane_wave_superposition(double kappa, const std::vector<PlaneWave>& waves)
{
    std::array<Expr, 4> comp{Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0)};
    for (const auto& w : waves) {
        const double omega = std::sqrt(w.k[0] * w.k[0] + w.k[1] * w.k[1] + w.k[2] * w.k[2] + kappa * kappa);
        const CMatrix4 a = I * w.k[0] * gamma(1) + I * w.k[1] * gamma(2) + I * w.k[2] * gamma(3) - omega * gamma(4);
        const CVector4 u = (a - kappa * CMatrix4::identity()) * w.polarization;
        const Expr phase = exp(Expr(I) * (w.k[0] * Expr::var(1) + w.k[1] * Expr::var(2) + w.k[2] * Expr::var(3)) -
                               Expr(I * omega) * Expr::var(0));
        for (int c = 0; c < 4; ++c) comp[static_cast<std::size_t>(c)] = comp[static_cast<std::size_t>(c)] + Expr(u[c]) * phase;
    }
    return SpinorField(comp);
}

/// e^{-i f} times a free spinor, together with the potential it solves for.
[[nodiscard]] inline ManufacturedSolution manufacture(const SpinorField& free_spinor, double kappa, const Expr& f,
                                                      const Params& f_params = {})
{
    auto g = gauge_transform(free_spinor, f, f_params);
    return {std::move(g.psi), std::move(g.shift), kappa};
}

}  // namespace diracinv
