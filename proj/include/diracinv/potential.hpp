#pragma once

#include "diracinv/expr.hpp"
#include "diracinv/fields.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace diracinv {

/// Real 4-potential (a0, a1, a2, a3) in the dimensionless coupling of the
/// Dirac operator [sum g_mu (d_mu - i a_mu) - i g4 (d0 + i a0) + kappa].
/// Components are expressions; realness is checked on evaluation, not assumed.
class FourPotential {
public:
    FourPotential() : FourPotential({Expr(0.0), Expr(0.0), Expr(0.0), Expr(0.0)}) {}

    FourPotential(std::array<Expr, 4> a, Params params = {}) : a_(std::move(a)), params_(std::move(params))
    {
        for (int mu = 0; mu < 4; ++mu)
            for (int c = 0; c < 4; ++c) da_[i(mu)][i(c)] = differentiate(a_[i(c)], mu);
    }

    [[nodiscard]] static FourPotential zero() { return {}; }

    [[nodiscard]] const std::array<Expr, 4>& components() const noexcept { return a_; }
    [[nodiscard]] const Expr& component(int k) const { return a_.at(i(k)); }
    [[nodiscard]] const Params& params() const noexcept { return params_; }

    [[nodiscard]] std::array<cplx, 4> complex_values(const Point& p) const
    {
        std::array<cplx, 4> v;
        for (int c = 0; c < 4; ++c) v[i(c)] = evaluate(a_[i(c)], p, params_);
        return v;
    }

    [[nodiscard]] std::array<double, 4> values(const Point& p) const
    {
        const auto z = complex_values(p);
        return {z[0].real(), z[1].real(), z[2].real(), z[3].real()};
    }

    /// Largest |Im a_mu(p)|.
    [[nodiscard]] double imag_residue(const Point& p) const
    {
        double m = 0.0;
        for (const auto& z : complex_values(p)) m = std::max(m, std::abs(z.imag()));
        return m;
    }

    /// d_mu a_c at p (real part), indexed [mu][c].
    [[nodiscard]] std::array<std::array<double, 4>, 4> gradient(const Point& p) const
    {
        std::array<std::array<double, 4>, 4> g{};
        for (int mu = 0; mu < 4; ++mu)
            for (int c = 0; c < 4; ++c) g[i(mu)][i(c)] = evaluate(da_[i(mu)][i(c)], p, params_).real();
        return g;
    }

    friend FourPotential operator+(const FourPotential& a, const FourPotential& b)
    {
        return FourPotential({a.a_[0] + b.a_[0], a.a_[1] + b.a_[1], a.a_[2] + b.a_[2], a.a_[3] + b.a_[3]},
                             merge_params(a.params_, b.params_));
    }

    friend FourPotential operator-(const FourPotential& a)
    {
        return FourPotential({-a.a_[0], -a.a_[1], -a.a_[2], -a.a_[3]}, a.params_);
    }

private:
    static std::size_t i(int k) { return static_cast<std::size_t>(k); }

    std::array<Expr, 4> a_;
    Params params_;
    std::array<std::array<Expr, 4>, 4> da_{};
};

}  // namespace diracinv
