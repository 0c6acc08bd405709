// Recover the potential of a gauge-transformed rest wave, then build two
// members of the potential family of the degenerate catalog example.

#include "diracinv/diracinv.hpp"

#include <cstdio>

int main()
{
    using namespace diracinv;

    const double kappa = 1.0;
    const auto rest = rest_plane_wave(kappa);
    const auto gauged = gauge_transform(rest.spinor, parse("0.5*x0*x1 + 0.2*sin(x2)"));

    const Point p{{0.1, -0.4, 0.3, 0.7}};
    const auto r = invert_combined(gauged.psi, kappa, p);
    const auto known = gauged.shift.values(p);
    std::printf("recovered a = (%.6f, %.6f, %.6f, %.6f)\n", r.a[0], r.a[1], r.a[2], r.a[3]);
    std::printf("known     a = (%.6f, %.6f, %.6f, %.6f)\n", known[0], known[1], known[2], known[3]);

    const auto m = extract_mass(gauged.psi, gauged.shift.component(0), SampleDomain{});
    std::printf("mass %.12f (spread %.2e)\n", m.mean, m.spread);

    const auto psi = degenerate_example(kappa, 0.3, 0.2, -0.1);
    const SampleDomain d;
    const auto cls = classify(psi, d, 1e-10, kappa);
    std::printf("verdict %s\n", to_string(cls.verdict));

    const auto base = FourPotential::zero();
    const auto member = potential_family(psi, base, Expr::var(0), cls);
    std::printf("family member residual %.2e, tensor distance to base %.3f\n",
                residual_norm(psi, member, kappa, d).max, tensor_distance(member, base, d));
    return 0;
}
