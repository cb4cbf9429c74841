#ifndef EMCONN_BOOST_HPP
#define EMCONN_BOOST_HPP

#include <array>
#include <string>

#include "emconn/connection.hpp"

namespace emconn {

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Constant-velocity boost along a coordinate axis (1 = x, 2 = y, 3 = z).
class BoostSpec {
public:
    /// Throws std::invalid_argument unless axis is 1..3 and |beta| < 1.
    BoostSpec(int axis, double beta);

    int axis() const { return axis_; }
    double beta() const { return beta_; }
    double gamma() const { return gamma_; }

private:
    int axis_;
    double beta_;
    double gamma_;
};

struct BoostMatrices {
    Mat4 forward{};   ///< x'^a = forward[a][b] x^b, in (c t, x, y, z)
    Mat4 inverse{};
};

BoostMatrices boost_matrix(const BoostSpec& bs);

/// Tensor transformation G'^i_jk = L^i_a (L^-1)^b_j (L^-1)^d_k G^a_bd.
/// The inhomogeneous second-derivative term vanishes for a constant boost.
Connection transform_connection(const Connection& c, const BoostSpec& bs);

/// Field values read back from the averaged "observable" components:
///   E_i  from -G^i_00
///   B_x  from (G^3_02 + G^3_20 - (G^2_30 + G^2_03)) / 2, and cyclically
/// both divided by kappa, real parts only.
struct ObservableSet {
    Vec3 e_obs;
    Vec3 b_obs;
};

/// Throws std::invalid_argument when kappa is zero.
ObservableSet observables(const Connection& c, const ParticleParams& pp);

struct BoostFieldRow {
    std::string label;       ///< B_x, B_y, B_z, E_x, E_y, E_z
    double initial = 0.0;
    double observed = 0.0;
    double expected = 0.0;   ///< first-order transform with gamma -> 1
    double expected_gamma = 0.0;  ///< same with the gamma factors kept
    double deviation = 0.0;  ///< |observed - expected|
};

struct BoostFieldReport {
    std::array<BoostFieldRow, 6> rows;
    double beta = 0.0;
    double gamma = 1.0;
    /// C beta^2 max(|E|, |B|), the allowed per-row deviation.
    double bound = 0.0;

    double max_deviation() const;
};

/// Constant in the O(beta^2) deviation bound, for unit-scale fields.
inline constexpr double kBoostBoundConstant = 10.0;

/// Transforms the Full connection of uniform (E, B) and compares the
/// observables with E' = E + beta n x B, B' = B - beta n x E.
BoostFieldReport boost_field_check(const Vec3& e, const Vec3& b, const BoostSpec& bs,
                          const ParticleParams& pp);

}  // namespace emconn

#endif
