#include "emconn/particle.hpp"

#include <cmath>
#include <stdexcept>

namespace emconn {

ParticleParams::ParticleParams(double q, double m, double c, std::optional<double> tau0)
    : q_(q), m_(m), c_(c), tau0_(tau0)
{
    if (!std::isfinite(q) || !std::isfinite(m) || !std::isfinite(c)) {
        throw std::invalid_argument("particle parameters must be finite");
    }
    if (m <= 0.0) {
        throw std::invalid_argument("particle mass must be positive");
    }
    if (c <= 0.0) {
        throw std::invalid_argument("speed of light must be positive");
    }
    if (tau0 && !(std::isfinite(*tau0) && *tau0 > 0.0)) {
        throw std::invalid_argument("proper lifetime tau0 must be positive");
    }
}

}  // namespace emconn
