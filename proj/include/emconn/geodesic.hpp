#ifndef EMCONN_GEODESIC_HPP
#define EMCONN_GEODESIC_HPP

#include <array>
#include <optional>
#include <vector>

#include "emconn/connection.hpp"

namespace emconn {

/// Position and u^mu = dx^mu/ds with s = c tau. u^0 = dt/dtau, u^i = v_i / c.
struct GeodesicState {
    SpacetimePoint x;
    std::array<double, 4> u{1.0, 0.0, 0.0, 0.0};

    Vec3 spatial_u() const { return {u[1], u[2], u[3]}; }
};

/// (dx^mu/ds, du^mu/ds).
using StateDerivative = std::array<double, 8>;

enum class Dynamics {
    Geodesic,   ///< -Re(Gamma^mu_jk) u^j u^k
    Classical,  ///< m a = q E + (q/c) v x B with u^0 held fixed
};

/// du^mu/ds = -sum_jk Re(Gamma^mu_jk) u^j u^k. Imaginary parts never enter.
StateDerivative geodesic_rhs(const GeodesicState& st, const FieldModel& model,
                             const ParticleParams& pp, Placement placement = Placement::Full);

StateDerivative classical_rhs(const GeodesicState& st, const FieldModel& model,
                              const ParticleParams& pp);

struct TrajectorySample {
    double tau = 0.0;  ///< proper time, s
    GeodesicState state;
    double dt_dtau = 1.0;

    double lab_time(double c) const { return state.x[0] / c; }
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    double step = 0.0;  ///< proper-time step, s
    int order = 4;
};

/// Raised when integration cannot continue; carries everything up to the last good state.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, Trajectory partial)
        : Error(what), partial_(std::move(partial))
    {
    }
    const Trajectory& partial() const { return partial_; }
    const TrajectorySample& last_good() const { return partial_.samples.back(); }

private:
    Trajectory partial_;
};

/// Fixed-step RK4 in s = c tau from tau = 0 to tau_end (seconds) with
/// proper-time step h; the last step is shortened to land on tau_end.
/// Aborts with IntegrationError when u^0 <= 0 or the state turns non-finite,
/// and when the field model raises SingularityError.
Trajectory integrate(Dynamics dynamics, const GeodesicState& st0, const FieldModel& model,
                     const ParticleParams& pp, double tau_end, double h,
                     Placement placement = Placement::Full);

/// T_char / 1000 with T_char = min(m c / (|q| |B|), m c / (|q| |E|)) over the
/// nonzero fields at the start point; tau_end / 1000 in a field-free region.
double default_step(const FieldSample& s, const ParticleParams& pp, double tau_end);

/// Force on a particle with u = (1, v/c) in a uniform E, relative to q E.
struct ForceProbe {
    /// Acceleration along v over q E_par / m; empty when E has no component along v
    /// (with v = 0 it is measured along E).
    std::optional<double> parallel_ratio;
    /// Same across v; empty when E has no component across v.
    std::optional<double> transverse_ratio;
};

ForceProbe force_probe(const Vec3& e, const Vec3& v, const ParticleParams& pp);

struct DecayRow {
    double t = 0.0;
    double tau_plus = 0.0;
    double tau_minus = 0.0;
    double rate_plus = 0.0;   ///< (1/tau0) dtau/dt
    double rate_minus = 0.0;
    double survival_plus = 1.0;
    double survival_minus = 1.0;
    double asymmetry = 0.0;   ///< (rate_plus - rate_minus) / (rate_plus + rate_minus)
};

struct DecayReport {
    std::vector<DecayRow> rows;
    Trajectory plus;   ///< launched along E
    Trajectory minus;  ///< launched against E
};

/// Two equal-speed launches (speed beta c, u^0 = 1) along and against a uniform
/// E, resampled onto a common lab-time grid of `samples` points spanning the
/// time both runs cover. Needs pp.tau0(); E = 0 launches along x.
DecayReport decay_experiment(const Vec3& e, double beta, const ParticleParams& pp, double tau_end,
                             double h, std::size_t samples = 201);

}  // namespace emconn

#endif
