#pragma once

/**
 * @file clifford.hpp
 * @brief Dirac matrices in the standard representation and the small dense
 *        complex 4x4 / 4-vector algebra they live in.
 *
 * All gamma entries are 0, +-1 or +-i, so every structural identity below is
 * checked with exact floating-point equality.
 */

#include "diracinv/errors.hpp"
#include "diracinv/report.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>

namespace diracinv {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

/// Pointwise value of a spinor: four complex components.
struct CVector4 {
    std::array<cplx, 4> c{};

    [[nodiscard]] cplx& operator[](int k) { return c[static_cast<std::size_t>(k)]; }
    [[nodiscard]] const cplx& operator[](int k) const { return c[static_cast<std::size_t>(k)]; }

    friend bool operator==(const CVector4&, const CVector4&) = default;

    CVector4& operator+=(const CVector4& o)
    {
        for (int k = 0; k < 4; ++k) (*this)[k] += o[k];
        return *this;
    }
    CVector4& operator-=(const CVector4& o)
    {
        for (int k = 0; k < 4; ++k) (*this)[k] -= o[k];
        return *this;
    }
    CVector4& operator*=(cplx s)
    {
        for (auto& x : c) x *= s;
        return *this;
    }
    friend CVector4 operator+(CVector4 a, const CVector4& b) { return a += b; }
    friend CVector4 operator-(CVector4 a, const CVector4& b) { return a -= b; }
    friend CVector4 operator*(cplx s, CVector4 a) { return a *= s; }
    friend CVector4 operator*(CVector4 a, cplx s) { return a *= s; }

    /// Euclidean norm over the four complex entries.
    [[nodiscard]] double norm() const
    {
        double s = 0.0;
        for (const auto& x : c) s += std::norm(x);
        return std::sqrt(s);
    }
    [[nodiscard]] double norm2() const
    {
        double s = 0.0;
        for (const auto& x : c) s += std::norm(x);
        return s;
    }
    [[nodiscard]] CVector4 conj() const
    {
        CVector4 r;
        for (int k = 0; k < 4; ++k) r[k] = std::conj((*this)[k]);
        return r;
    }
    [[nodiscard]] bool finite() const
    {
        for (const auto& x : c)
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
        return true;
    }
};

/// Dense 4x4 complex matrix, row-major.
class CMatrix4 {
public:
    constexpr CMatrix4() = default;

    [[nodiscard]] static CMatrix4 identity()
    {
        CMatrix4 m;
        for (int k = 0; k < 4; ++k) m(k, k) = 1.0;
        return m;
    }

    [[nodiscard]] static CMatrix4 diag(cplx a, cplx b, cplx c, cplx d)
    {
        CMatrix4 m;
        m(0, 0) = a;
        m(1, 1) = b;
        m(2, 2) = c;
        m(3, 3) = d;
        return m;
    }

    [[nodiscard]] static CMatrix4 from_rows(const std::array<std::array<cplx, 4>, 4>& rows)
    {
        CMatrix4 m;
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        return m;
    }

    [[nodiscard]] cplx& operator()(int r, int c) { return e_[static_cast<std::size_t>(4 * r + c)]; }
    [[nodiscard]] const cplx& operator()(int r, int c) const { return e_[static_cast<std::size_t>(4 * r + c)]; }

    friend bool operator==(const CMatrix4&, const CMatrix4&) = default;

    CMatrix4& operator+=(const CMatrix4& o)
    {
        for (std::size_t k = 0; k < 16; ++k) e_[k] += o.e_[k];
        return *this;
    }
    CMatrix4& operator-=(const CMatrix4& o)
    {
        for (std::size_t k = 0; k < 16; ++k) e_[k] -= o.e_[k];
        return *this;
    }
    CMatrix4& operator*=(cplx s)
    {
        for (auto& x : e_) x *= s;
        return *this;
    }
    friend CMatrix4 operator+(CMatrix4 a, const CMatrix4& b) { return a += b; }
    friend CMatrix4 operator-(CMatrix4 a, const CMatrix4& b) { return a -= b; }
    friend CMatrix4 operator-(CMatrix4 a) { return a *= -1.0; }
    friend CMatrix4 operator*(cplx s, CMatrix4 a) { return a *= s; }

    friend CMatrix4 operator*(const CMatrix4& a, const CMatrix4& b)
    {
        CMatrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
                r(i, j) = s;
            }
        return r;
    }

    friend CVector4 operator*(const CMatrix4& a, const CVector4& x)
    {
        CVector4 r;
        for (int i = 0; i < 4; ++i) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += a(i, k) * x[k];
            r[i] = s;
        }
        return r;
    }

    /// Conjugate transpose.
    [[nodiscard]] CMatrix4 adjoint() const
    {
        CMatrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    [[nodiscard]] CMatrix4 transpose() const
    {
        CMatrix4 r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    [[nodiscard]] bool is_zero() const
    {
        for (const auto& x : e_)
            if (x != cplx{}) return false;
        return true;
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s = "[";
        for (int i = 0; i < 4; ++i) {
            s += i ? ", [" : "[";
            for (int j = 0; j < 4; ++j) {
                if (j) s += ", ";
                const cplx x = (*this)(i, j);
                s += std::to_string(x.real());
                if (x.imag() != 0.0) s += (x.imag() < 0 ? "-" : "+") + std::to_string(std::abs(x.imag())) + "i";
            }
            s += "]";
        }
        return s + "]";
    }

private:
    std::array<cplx, 16> e_{};
};

/// x^* M y (conjugate-transpose on the left).
[[nodiscard]] inline cplx adjoint_form(const CVector4& x, const CMatrix4& m, const CVector4& y)
{
    const CVector4 my = m * y;
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += std::conj(x[k]) * my[k];
    return s;
}

/// x^T M y (no conjugation).
[[nodiscard]] inline cplx transpose_form(const CVector4& x, const CMatrix4& m, const CVector4& y)
{
    const CVector4 my = m * y;
    cplx s = 0.0;
    for (int k = 0; k < 4; ++k) s += x[k] * my[k];
    return s;
}

[[nodiscard]] inline CMatrix4 anticommutator(const CMatrix4& a, const CMatrix4& b) { return a * b + b * a; }

/// Index of a Dirac matrix, 1..5 (5 is the product of the first four).
class GammaIndex {
public:
    explicit GammaIndex(int value) : value_(value)
    {
        if (value < 1 || value > 5)
            throw Error(ErrorCode::InvalidIndex, "gamma index must be in 1..5, got " + std::to_string(value));
    }
    [[nodiscard]] int value() const noexcept { return value_; }

private:
    int value_;
};

/// The four defining matrices plus the derived gamma_5 = g1 g2 g3 g4.
/// Kept as a value so structure checks can run on a deliberately corrupted set.
struct GammaSet {
    std::array<CMatrix4, 5> g;

    [[nodiscard]] static GammaSet from_generators(const CMatrix4& g1, const CMatrix4& g2, const CMatrix4& g3,
                                                  const CMatrix4& g4)
    {
        return GammaSet{{g1, g2, g3, g4, g1 * g2 * g3 * g4}};
    }

    [[nodiscard]] static GammaSet standard()
    {
        const cplx o = 0.0, p = 1.0, m = -1.0, i = I, mi = -I;
        const auto g1 = CMatrix4::from_rows({{{o, o, o, mi}, {o, o, mi, o}, {o, i, o, o}, {i, o, o, o}}});
        const auto g2 = CMatrix4::from_rows({{{o, o, o, m}, {o, o, p, o}, {o, p, o, o}, {m, o, o, o}}});
        const auto g3 = CMatrix4::from_rows({{{o, o, mi, o}, {o, o, o, i}, {i, o, o, o}, {o, mi, o, o}}});
        const auto g4 = CMatrix4::diag(p, p, m, m);
        return from_generators(g1, g2, g3, g4);
    }

    [[nodiscard]] const CMatrix4& operator[](GammaIndex idx) const { return g[static_cast<std::size_t>(idx.value() - 1)]; }
};

namespace detail {
inline const GammaSet& standard_gammas()
{
    static const GammaSet set = GammaSet::standard();
    return set;
}
}  // namespace detail

[[nodiscard]] inline const CMatrix4& gamma(GammaIndex idx) { return detail::standard_gammas()[idx]; }
[[nodiscard]] inline const CMatrix4& gamma(int idx) { return gamma(GammaIndex(idx)); }

/// delta_mu = gamma_mu + gamma_5 gamma_mu, mu = 1..4.
[[nodiscard]] inline CMatrix4 delta(int idx)
{
    if (idx < 1 || idx > 4)
        throw Error(ErrorCode::InvalidIndex, "delta index must be in 1..4, got " + std::to_string(idx));
    return gamma(idx) + gamma(5) * gamma(idx);
}

/// Hermiticity, anti-Hermiticity of distinct products, the anticommutation
/// table and gamma_5^2 = I, each as its own report entry.
[[nodiscard]] inline Report structure_selftest(const GammaSet& set = GammaSet::standard())
{
    Report report("clifford");
    const auto id = CMatrix4::identity();
    for (int mu = 1; mu <= 5; ++mu) {
        const auto& g = set[GammaIndex(mu)];
        report.check("hermitian/gamma" + std::to_string(mu), g.adjoint() == g);
    }
    for (int l = 1; l <= 5; ++l)
        for (int mu = l + 1; mu <= 5; ++mu) {
            const auto prod = set[GammaIndex(l)] * set[GammaIndex(mu)];
            report.check("antihermitian/gamma" + std::to_string(l) + "gamma" + std::to_string(mu),
                         prod.adjoint() == -prod);
        }
    for (int mu = 1; mu <= 5; ++mu)
        for (int nu = 1; nu <= 5; ++nu) {
            const auto ac = anticommutator(set[GammaIndex(mu)], set[GammaIndex(nu)]);
            const auto expected = mu == nu ? 2.0 * id : CMatrix4{};
            report.check("anticommutator/" + std::to_string(mu) + "," + std::to_string(nu), ac == expected);
        }
    const auto& g5 = set[GammaIndex(5)];
    report.check("gamma5_squared_identity", g5 * g5 == id);
    return report;
}

}  // namespace diracinv
