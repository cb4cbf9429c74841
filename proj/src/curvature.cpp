#include "emconn/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace emconn {

CScalar Ricci::trace() const
{
    return (*this)(0, 0) + (*this)(1, 1) + (*this)(2, 2) + (*this)(3, 3);
}

Riemann riemann(const ConnectionJet& jet)
{
    const Connection& g = jet.g;
    Riemann r;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 4; ++l) {
                    CScalar v = jet.dg[k](i, l, j) - jet.dg[l](i, k, j);
                    for (int m = 0; m < 4; ++m) {
                        v += g(m, l, j) * g(i, k, m) - g(m, k, j) * g(i, l, m);
                    }
                    r(i, j, k, l) = v;
                }
            }
        }
    }
    return r;
}

Ricci ricci(const Riemann& r)
{
    Ricci out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CScalar v = 0.0;
            for (int k = 0; k < 4; ++k) {
                v += r(k, j, k, i);
            }
            out(i, j) = v;
        }
    }
    return out;
}

SymmetryReport symmetry_report(const FieldSample& s, const ParticleParams& pp, Placement placement)
{
    const Ricci ric = ricci(riemann(build_jet(s, pp, placement)));
    const double kappa = pp.kappa();
    const double energy = norm2(s.e) + norm2(s.b);

    SymmetryReport rep;
    rep.scale = std::max(1.0, kappa * kappa * energy);

    rep.trace = ric.trace();
    rep.trace_expected = kappa * kappa * energy + 2.0 * kappa * s.div_e();

    const Vec3 exb = cross(s.e, s.b);
    const Vec3 ampere = s.curl_b() - s.de[0];
    for (int n = 0; n < 3; ++n) {
        rep.mixed[n] = ric(0, n + 1) + ric(n + 1, 0);
        rep.mixed_expected[n] = kappa * kappa * exb[n] + kappa * ampere[n];
    }

    // (1,2) -> z, (3,1) -> y, (2,3) -> x
    const Vec3 faraday = s.curl_e() + s.db[0];
    constexpr int component[3] = {2, 1, 0};
    for (int n = 0; n < 3; ++n) {
        const auto [a, b] = SymmetryReport::kSpatialPairs[n];
        rep.spatial[n] = ric(a, b) - ric(b, a);
        rep.spatial_expected[n] = kappa * faraday[component[n]];
    }
    return rep;
}

SymmetryReport symmetry_report(const FieldModel& model, const SpacetimePoint& p,
                               const ParticleParams& pp, Placement placement)
{
    return symmetry_report(eval_field(model, p), pp, placement);
}

SourceDensities geometric_sources(const FieldSample& s, const ParticleParams& pp)
{
    SourceDensities d;
    d.u = (norm2(s.e) + norm2(s.b)) / (8.0 * kPi);
    d.s = cross(s.e, s.b) * (pp.c() / (4.0 * kPi));
    d.rho = -pp.kappa() * d.u;
    d.j = d.s * -pp.kappa();
    return d;
}

ContinuityResult continuity_residual(const FieldSample& s, const ParticleParams& pp)
{
    const double kappa = pp.kappa();
    const double c = pp.c();

    ContinuityResult out;
    // rho = -kappa (E^2 + B^2) / 8 pi, so d rho/dx0 = -kappa (E.dE + B.dB) / 4 pi
    const double drho_dx0 = -kappa * (dot(s.e, s.de[0]) + dot(s.b, s.db[0])) / (4.0 * kPi);
    out.drho_dt = c * drho_dx0;

    double div_terms = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Vec3 dexb = cross(s.de[i + 1], s.b) + cross(s.e, s.db[i + 1]);
        const double term = -kappa * c / (4.0 * kPi) * dexb[i];
        out.div_j += term;
        div_terms += std::abs(term);
    }
    out.residual = out.drho_dt + out.div_j;
    out.scale = std::max(1.0, std::abs(out.drho_dt) + div_terms);

    const SourceDensities d = geometric_sources(s, pp);
    out.j_dot_e = dot(d.j, s.e);
    out.j_dot_e_scale = std::max(1.0, norm(d.j) * norm(s.e));
    return out;
}

ContinuityResult continuity_residual(const FieldModel& model, const SpacetimePoint& p,
                                     const ParticleParams& pp)
{
    return continuity_residual(eval_field(model, p), pp);
}

}  // namespace emconn
