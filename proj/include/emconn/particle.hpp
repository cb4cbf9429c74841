#ifndef EMCONN_PARTICLE_HPP
#define EMCONN_PARTICLE_HPP

#include <optional>

#include "emconn/types.hpp"

namespace emconn {

/// Charge q (statC), mass m (g), light speed c (cm/s) and an optional proper
/// lifetime tau0 (s). The coupling q/(m c^2) is always derived on demand.
class ParticleParams {
public:
    /// Throws std::invalid_argument unless m > 0, c > 0, every value is
    /// finite and tau0 (when given) is positive.
    ParticleParams(double q, double m, double c = kSpeedOfLight,
                   std::optional<double> tau0 = std::nullopt);

    double q() const { return q_; }
    double m() const { return m_; }
    double c() const { return c_; }
    std::optional<double> tau0() const { return tau0_; }

    /// q / (m c^2), units of 1 / (field x length).
    double kappa() const { return q_ / (m_ * c_ * c_); }

    ParticleParams with_charge(double q) const { return {q, m_, c_, tau0_}; }
    ParticleParams with_lifetime(double tau0) const { return {q_, m_, c_, tau0}; }

private:
    double q_;
    double m_;
    double c_;
    std::optional<double> tau0_;
};

}  // namespace emconn

#endif
