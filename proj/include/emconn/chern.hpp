#ifndef EMCONN_CHERN_HPP
#define EMCONN_CHERN_HPP

#include <array>
#include <string_view>

#include "emconn/connection.hpp"

namespace emconn {

/// 2-form w = sum_{a<b} w[ab] dx^a ^ dx^b in the (x0 = c t, x, y, z) basis.
class TwoForm {
public:
    static constexpr std::array<std::array<int, 2>, 6> kPairs{
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

    /// Antisymmetric access; (a, a) is zero.
    CScalar operator()(int a, int b) const;
    void set(int a, int b, CScalar v);

    CScalar& slot(int n) { return w_[static_cast<std::size_t>(n)]; }
    const CScalar& slot(int n) const { return w_[static_cast<std::size_t>(n)]; }

    TwoForm& operator*=(CScalar s);
    friend TwoForm operator*(TwoForm f, CScalar s) { return f *= s; }

    double max_abs() const;
    double max_abs_difference(const TwoForm& o) const;

private:
    static int slot_index(int a, int b);
    std::array<CScalar, 6> w_{};
};

struct CurvatureTraceForm {
    TwoForm raw;         ///< sum_i R^i_iab
    TwoForm normalized;  ///< raw / kappa (zero when kappa is zero)
};

/// Trace of the curvature 2-form at p.
CurvatureTraceForm curvature_trace_form(const FieldSample& s, const ParticleParams& pp,
                                        Placement placement = Placement::Full);
CurvatureTraceForm curvature_trace_form(const FieldModel& model, const SpacetimePoint& p,
                                        const ParticleParams& pp,
                                        Placement placement = Placement::Full);

/// The same 2-form written with physical time, in the order
///   dx^dt, dy^dt, dz^dt, dy^dz, dx^dz, dx^dy
/// and coefficients
///   dE_x/dt, dE_y/dt, dE_z/dt, -(dE_z/dy - dE_y/dz), (dE_x/dz - dE_z/dx), -(dE_y/dx - dE_x/dy).
struct TimeBasisForm {
    static constexpr std::array<std::string_view, 6> kLabels{"dx^dt", "dy^dt", "dz^dt",
                                                             "dy^dz", "dx^dz", "dx^dy"};
    std::array<double, 6> coeff{};
};

TimeBasisForm closed_form_coefficients(const FieldSample& s, double c);

/// dt = dx0 / c; the only place the two bases meet.
TwoForm to_x0_basis(const TimeBasisForm& f, double c);
TimeBasisForm to_time_basis(const TwoForm& w, double c);

/// Closed-form expression of the normalized trace, built from E derivatives.
TwoForm closed_form_trace(const FieldSample& s, double c);
TwoForm closed_form_trace(const FieldModel& model, const SpacetimePoint& p, double c);

/// -d(E . dx) by central differences of E with step h: the 1-form whose
/// exterior derivative the normalized trace form is.
TwoForm exact_form_fd(const FieldModel& model, const SpacetimePoint& p, double h);

struct ExactnessReport {
    double h = 0.0;
    double deviation = 0.0;       ///< max |normalized trace - (-d(E.dx))_h|
    double deviation_half = 0.0;  ///< same with h / 2
    /// deviation / deviation_half; about 4 for O(h^2) convergence, 0 when both vanish.
    double ratio = 0.0;
};

ExactnessReport exactness_check(const FieldModel& model, const SpacetimePoint& p,
                                const ParticleParams& pp, double h);

/// Largest component of d(w) for the normalized trace form w, by central
/// differences with step h. Zero up to O(h^2) since w is exact.
double closedness_defect(const FieldModel& model, const SpacetimePoint& p,
                         const ParticleParams& pp, double h);

}  // namespace emconn

#endif
