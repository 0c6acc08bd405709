#pragma once

#include "diracinv/errors.hpp"
#include "diracinv/expr.hpp"

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace diracinv {

/// Finite stand-in for R^4: an axis-aligned box sampled at `count` seeded
/// points. Point k depends only on (seed, k), never on iteration order.
struct SampleDomain {
    std::array<std::pair<double, double>, 4> box{{{-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}, {-1.0, 1.0}}};
    std::size_t count = 100;
    std::uint64_t seed = 42;

    void validate() const
    {
        if (count < 1) throw Error(ErrorCode::Schema, "sample count must be >= 1");
        for (int k = 0; k < 4; ++k) {
            const auto& [lo, hi] = box[static_cast<std::size_t>(k)];
            if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
                throw Error(ErrorCode::Schema, "invalid interval on axis " + std::to_string(k));
        }
    }

    [[nodiscard]] Point point(std::size_t k) const
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32u),
                          static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32u)};
        std::mt19937_64 rng(seq);
        Point p;
        for (int a = 0; a < 4; ++a) {
            // 53-bit mantissa draw; portable unlike uniform_real_distribution.
            const double u = static_cast<double>(rng() >> 11u) * 0x1.0p-53;
            const auto& [lo, hi] = box[static_cast<std::size_t>(a)];
            p[a] = lo + (hi - lo) * u;
        }
        return p;
    }

    [[nodiscard]] std::vector<Point> points() const
    {
        validate();
        std::vector<Point> out;
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k) out.push_back(point(k));
        return out;
    }
};

/// Seeded uniform draws with a fixed mapping from engine output, so sequences
/// are identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
    {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32u),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32u), 0x5eedu};
        eng_.seed(seq);
    }

    [[nodiscard]] double uniform() { return static_cast<double>(eng_() >> 11u) * 0x1.0p-53; }
    [[nodiscard]] double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Integer in [0, n).
    [[nodiscard]] std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
    [[nodiscard]] cplx complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

private:
    std::mt19937_64 eng_;
};

}  // namespace diracinv
