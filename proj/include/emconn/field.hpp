#ifndef EMCONN_FIELD_HPP
#define EMCONN_FIELD_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emconn/types.hpp"

namespace emconn {

/// E, B and their first partial derivatives at one spacetime point.
///
/// de[a] and db[a] hold dE/dx^a and dB/dx^a. Since x^0 = c t the time slot
/// stores (1/c) dE/dt; multiply by c to recover the physical time derivative.
struct FieldSample {
    Vec3 e;
    Vec3 b;
    std::array<Vec3, 4> de{};
    std::array<Vec3, 4> db{};

    double div_e() const { return de[1].x + de[2].y + de[3].z; }
    double div_b() const { return db[1].x + db[2].y + db[3].z; }
    Vec3 curl_e() const { return {de[2].z - de[3].y, de[3].x - de[1].z, de[1].y - de[2].x}; }
    Vec3 curl_b() const { return {db[2].z - db[3].y, db[3].x - db[1].z, db[1].y - db[2].x}; }
};

bool is_finite(const FieldSample& s);

/// Largest absolute deviation of any of the vacuum Maxwell equations
/// (div E, div B, curl E + dB/dx0, curl B - dE/dx0) at a sample.
double maxwell_violation(const FieldSample& s);

enum class DerivativeKind { Analytic, FiniteDifference };

/// Value-only field description used by the finite-difference adapter.
struct FieldValue {
    Vec3 e;
    Vec3 b;
};

using RawField = std::function<FieldValue(const SpacetimePoint&)>;

/// A named, immutable point -> FieldSample map.
class FieldModel {
public:
    using Evaluator = std::function<FieldSample(const SpacetimePoint&)>;

    FieldModel(std::string name, Evaluator eval, DerivativeKind kind, bool source_free,
               bool uniform = false);

    const std::string& name() const { return name_; }
    DerivativeKind derivatives() const { return kind_; }
    /// True when the model satisfies the vacuum Maxwell equations wherever it is defined.
    bool source_free() const { return source_free_; }
    /// True when E and B are the same at every point.
    bool uniform() const { return uniform_; }

    FieldSample evaluate(const SpacetimePoint& p) const { return eval_(p); }

private:
    std::string name_;
    Evaluator eval_;
    DerivativeKind kind_;
    bool source_free_;
    bool uniform_;
};

/// Evaluates a model; throws std::invalid_argument for a non-finite point and
/// SingularityError (from the model) where it is undefined.
FieldSample eval_field(const FieldModel& model, const SpacetimePoint& p);

/// Default central-difference step along one axis: eps^(1/3) * max(1, |coordinate|).
double default_fd_step(double coordinate);

/// Wraps a value-only field. Derivatives use second-order central differences
/// with step h along every axis; without h, default_fd_step is used per axis.
FieldModel finite_difference_adapter(RawField raw, std::optional<double> h = std::nullopt,
                                     std::string name = "finite_difference",
                                     bool source_free = false);

/// Rows are field components, columns are the coordinates x^0..x^3.
using FieldGradient = std::array<std::array<double, 4>, 3>;

namespace presets {

FieldModel uniform_e(const Vec3& e);
FieldModel uniform_b(const Vec3& b);
FieldModel crossed_eb(const Vec3& e, const Vec3& b);

/// Linearly polarized vacuum wave travelling along +z:
///   E = e0 cos(k (x3 - x0) + phase) (cos psi, sin psi, 0),  B = z_hat x E.
/// In physical time, dE/dt = c dE/dx0. k = 0 degenerates to a uniform field.
FieldModel plane_wave(double e0, double k, double polarization = 0.0, double phase = 0.0);

/// Static point charge: E = q_src (r - center) / |r - center|^3, B = 0.
FieldModel coulomb(double q_src, const Vec3& center = {});

/// E(p) = e0 + dE p, B(p) = b0 + dB p. Gradients are arbitrary, so the model
/// may violate Maxwell's equations; source_free() reports whether it does.
FieldModel linear_gradient(const Vec3& e0, const Vec3& b0, const FieldGradient& de,
                           const FieldGradient& db);

}  // namespace presets

/// Named numeric parameters for make_preset, e.g. {"E", {1, 0, 0}}.
using PresetParams = std::map<std::string, std::vector<double>, std::less<>>;

/// Builds a preset by name (uniform_E, uniform_B, crossed_EB, plane_wave,
/// coulomb, linear_gradient). Unknown names, unknown parameter keys and
/// wrongly-sized values throw std::invalid_argument.
FieldModel make_preset(std::string_view name, const PresetParams& params);

/// Names accepted by make_preset.
const std::vector<std::string>& preset_names();

}  // namespace emconn

#endif
