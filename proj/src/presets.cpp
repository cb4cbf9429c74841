#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "emconn/field.hpp"

namespace emconn {
namespace presets {

namespace {

void require_finite(const Vec3& v, const char* what)
{
    if (!is_finite(v)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

FieldModel constant(std::string name, const Vec3& e, const Vec3& b)
{
    require_finite(e, "E");
    require_finite(b, "B");
    return FieldModel(
        std::move(name),
        [e, b](const SpacetimePoint&) {
            FieldSample s;
            s.e = e;
            s.b = b;
            return s;
        },
        DerivativeKind::Analytic, true, true);
}

}  // namespace

FieldModel uniform_e(const Vec3& e) { return constant("uniform_E", e, {}); }

FieldModel uniform_b(const Vec3& b) { return constant("uniform_B", {}, b); }

FieldModel crossed_eb(const Vec3& e, const Vec3& b) { return constant("crossed_EB", e, b); }

FieldModel plane_wave(double e0, double k, double polarization, double phase)
{
    if (!std::isfinite(e0) || !std::isfinite(k) || !std::isfinite(polarization) ||
        !std::isfinite(phase)) {
        throw std::invalid_argument("plane_wave parameters must be finite");
    }
    const Vec3 e_dir{std::cos(polarization), std::sin(polarization), 0.0};
    const Vec3 b_dir = cross(Vec3{0.0, 0.0, 1.0}, e_dir);
    auto eval = [=](const SpacetimePoint& p) {
        const double arg = k * (p[3] - p[0]) + phase;
        const double amp = e0 * std::cos(arg);
        // d(amp)/dx3 = -e0 k sin(arg), d(amp)/dx0 = +e0 k sin(arg)
        const double slope = e0 * k * std::sin(arg);
        FieldSample s;
        s.e = e_dir * amp;
        s.b = b_dir * amp;
        s.de[0] = e_dir * slope;
        s.db[0] = b_dir * slope;
        s.de[3] = e_dir * -slope;
        s.db[3] = b_dir * -slope;
        return s;
    };
    return FieldModel("plane_wave", eval, DerivativeKind::Analytic, true, k == 0.0);
}

FieldModel coulomb(double q_src, const Vec3& center)
{
    if (!std::isfinite(q_src)) {
        throw std::invalid_argument("coulomb source charge must be finite");
    }
    require_finite(center, "coulomb center");
    auto eval = [=](const SpacetimePoint& p) {
        const Vec3 r = p.spatial() - center;
        const double r2 = norm2(r);
        if (r2 == 0.0) {
            throw SingularityError("singularity: coulomb field evaluated at its source " +
                                   to_string(center));
        }
        const double rn = std::sqrt(r2);
        const double inv3 = 1.0 / (r2 * rn);
        const double inv5 = inv3 / r2;
        FieldSample s;
        s.e = r * (q_src * inv3);
        for (int j = 0; j < 3; ++j) {
            Vec3 col;
            for (int i = 0; i < 3; ++i) {
                col[i] = q_src * ((i == j ? inv3 : 0.0) - 3.0 * r[i] * r[j] * inv5);
            }
            s.de[j + 1] = col;
        }
        return s;
    };
    return FieldModel("coulomb", eval, DerivativeKind::Analytic, true);
}

FieldModel linear_gradient(const Vec3& e0, const Vec3& b0, const FieldGradient& de,
                           const FieldGradient& db)
{
    require_finite(e0, "E");
    require_finite(b0, "B");
    FieldSample slope;
    bool zero = true;
    for (int i = 0; i < 3; ++i) {
        for (int a = 0; a < 4; ++a) {
            const double ge = de[i][a];
            const double gb = db[i][a];
            if (!std::isfinite(ge) || !std::isfinite(gb)) {
                throw std::invalid_argument("linear_gradient gradients must be finite");
            }
            slope.de[a][i] = ge;
            slope.db[a][i] = gb;
            zero = zero && ge == 0.0 && gb == 0.0;
        }
    }
    const bool source_free = maxwell_violation(slope) == 0.0;
    auto eval = [e0, b0, slope](const SpacetimePoint& p) {
        FieldSample s = slope;
        s.e = e0;
        s.b = b0;
        for (int a = 0; a < 4; ++a) {
            s.e += slope.de[a] * p[a];
            s.b += slope.db[a] * p[a];
        }
        return s;
    };
    return FieldModel("linear_gradient", eval, DerivativeKind::Analytic, source_free, zero);
}

}  // namespace presets

namespace {

class ParamReader {
public:
    ParamReader(std::string_view preset, const PresetParams& params)
        : preset_(preset), params_(params)
    {
    }

    double scalar(const std::string& key, double fallback)
    {
        const auto v = fetch(key, 1);
        return v ? (*v)[0] : fallback;
    }

    Vec3 vec3(const std::string& key)
    {
        const auto v = fetch(key, 3);
        return v ? Vec3{(*v)[0], (*v)[1], (*v)[2]} : Vec3{};
    }

    FieldGradient gradient(const std::string& key)
    {
        FieldGradient g{};
        if (const auto v = fetch(key, 12)) {
            for (std::size_t n = 0; n < 12; ++n) {
                g[n / 4][n % 4] = (*v)[n];
            }
        }
        return g;
    }

    void finish() const
    {
        for (const auto& [key, value] : params_) {
            if (used_.count(key) == 0) {
                throw std::invalid_argument("preset " + std::string(preset_) +
                                            " does not take parameter '" + key + "'");
            }
        }
    }

private:
    const std::vector<double>* fetch(const std::string& key, std::size_t size)
    {
        used_.insert(key);
        const auto it = params_.find(key);
        if (it == params_.end()) {
            return nullptr;
        }
        if (it->second.size() != size) {
            throw std::invalid_argument("preset " + std::string(preset_) + " parameter '" + key +
                                        "' expects " + std::to_string(size) + " value(s), got " +
                                        std::to_string(it->second.size()));
        }
        return &it->second;
    }

    std::string_view preset_;
    const PresetParams& params_;
    std::set<std::string, std::less<>> used_;
};

}  // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = {"uniform_E",  "uniform_B", "crossed_EB",
                                                   "plane_wave", "coulomb",   "linear_gradient"};
    return names;
}

FieldModel make_preset(std::string_view name, const PresetParams& params)
{
    ParamReader in(name, params);
    auto build = [&]() -> FieldModel {
        if (name == "uniform_E") {
            return presets::uniform_e(in.vec3("E"));
        }
        if (name == "uniform_B") {
            return presets::uniform_b(in.vec3("B"));
        }
        if (name == "crossed_EB") {
            const Vec3 e = in.vec3("E");
            return presets::crossed_eb(e, in.vec3("B"));
        }
        if (name == "plane_wave") {
            const double e0 = in.scalar("E0", 1.0);
            const double k = in.scalar("k", 1.0);
            const double psi = in.scalar("polarization", 0.0);
            return presets::plane_wave(e0, k, psi, in.scalar("phase", 0.0));
        }
        if (name == "coulomb") {
            const double q = in.scalar("q_src", 1.0);
            return presets::coulomb(q, in.vec3("center"));
        }
        if (name == "linear_gradient") {
            const Vec3 e = in.vec3("E");
            const Vec3 b = in.vec3("B");
            const FieldGradient de = in.gradient("dE");
            return presets::linear_gradient(e, b, de, in.gradient("dB"));
        }
        throw std::invalid_argument("unknown field preset '" + std::string(name) + "'");
    };
    FieldModel model = build();
    in.finish();
    return model;
}

}  // namespace emconn
