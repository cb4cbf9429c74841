#ifndef EMCONN_CURVATURE_HPP
#define EMCONN_CURVATURE_HPP

#include <array>

#include "emconn/connection.hpp"

namespace emconn {

/// R^i_jkl, units 1/length^2.
class Riemann {
public:
    CScalar& operator()(int i, int j, int k, int l) { return v_[index(i, j, k, l)]; }
    const CScalar& operator()(int i, int j, int k, int l) const { return v_[index(i, j, k, l)]; }

private:
    static constexpr std::size_t index(int i, int j, int k, int l)
    {
        return static_cast<std::size_t>(64 * i + 16 * j + 4 * k + l);
    }
    std::array<CScalar, 256> v_{};
};

/// R_ij = sum_k R^k_jki.
class Ricci {
public:
    CScalar& operator()(int i, int j) { return v_[static_cast<std::size_t>(4 * i + j)]; }
    const CScalar& operator()(int i, int j) const { return v_[static_cast<std::size_t>(4 * i + j)]; }

    /// Plain index sum R_00 + R_11 + R_22 + R_33; no metric is involved.
    CScalar trace() const;

private:
    std::array<CScalar, 16> v_{};
};

/// R^i_jkl = dG^i_lj/dx^k - dG^i_kj/dx^l + sum_m (G^m_lj G^i_km - G^m_kj G^i_lm)
Riemann riemann(const ConnectionJet& jet);

Ricci ricci(const Riemann& r);

/// The Ricci combinations tied to Maxwell's equations, their closed forms
/// in terms of the fields, and the residual (Ricci value minus closed form).
///
/// Closed forms, with kappa = q/(m c^2) and d0 = d/dx^0 = (1/c) d/dt:
///   trace           kappa^2 (E^2 + B^2) + 2 kappa div E
///   mixed[i]        R_0i + R_i0 = kappa^2 (E x B)_i + kappa (curl B - d0 E)_i
///   spatial[n]      R_ij - R_ji for (i,j) = (1,2), (3,1), (2,3)
///                   = kappa (curl E + d0 B)_{z, y, x}
/// The spatial combinations vanish exactly when Faraday's law holds.
struct SymmetryReport {
    static constexpr std::array<std::array<int, 2>, 3> kSpatialPairs{{{1, 2}, {3, 1}, {2, 3}}};

    CScalar trace;
    std::array<CScalar, 3> mixed{};
    std::array<CScalar, 3> spatial{};

    double trace_expected = 0.0;
    std::array<double, 3> mixed_expected{};
    std::array<double, 3> spatial_expected{};

    /// max(1, kappa^2 (E^2 + B^2)); residual tolerances are relative to it.
    double scale = 1.0;

    CScalar trace_residual() const { return trace - trace_expected; }
    CScalar mixed_residual(int n) const { return mixed[n] - mixed_expected[n]; }
    CScalar spatial_residual(int n) const { return spatial[n] - spatial_expected[n]; }
};

SymmetryReport symmetry_report(const FieldSample& s, const ParticleParams& pp, Placement placement);
SymmetryReport symmetry_report(const FieldModel& model, const SpacetimePoint& p,
                               const ParticleParams& pp, Placement placement = Placement::Full);

/// Sources implied by a vanishing Ricci trace and vanishing mixed sums.
struct SourceDensities {
    double u = 0.0;     ///< energy density (E^2 + B^2) / 8 pi
    Vec3 s;             ///< Poynting vector (c / 4 pi) E x B
    double rho = 0.0;   ///< -kappa u
    Vec3 j;             ///< -kappa S
};

SourceDensities geometric_sources(const FieldSample& s, const ParticleParams& pp);

struct ContinuityResult {
    double drho_dt = 0.0;   ///< d rho / dt (physical time)
    double div_j = 0.0;
    double residual = 0.0;  ///< d rho / dt + div J
    double j_dot_e = 0.0;
    /// |d rho/dt| + sum_i |dJ_i/dx_i| (at least 1): relative scale for residual.
    double scale = 1.0;
    /// max(1, |J| |E|): relative scale for j_dot_e.
    double j_dot_e_scale = 1.0;
};

/// Continuity check for the geometric sources, using the product rule on the
/// sample's field derivatives.
ContinuityResult continuity_residual(const FieldSample& s, const ParticleParams& pp);
ContinuityResult continuity_residual(const FieldModel& model, const SpacetimePoint& p,
                                     const ParticleParams& pp);

}  // namespace emconn

#endif
