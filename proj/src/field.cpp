#include "emconn/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace emconn {

bool is_finite(const FieldSample& s)
{
    if (!is_finite(s.e) || !is_finite(s.b)) {
        return false;
    }
    for (int a = 0; a < 4; ++a) {
        if (!is_finite(s.de[a]) || !is_finite(s.db[a])) {
            return false;
        }
    }
    return true;
}

double maxwell_violation(const FieldSample& s)
{
    double worst = std::max(std::abs(s.div_e()), std::abs(s.div_b()));
    const Vec3 faraday = s.curl_e() + s.db[0];
    const Vec3 ampere = s.curl_b() - s.de[0];
    for (int i = 0; i < 3; ++i) {
        worst = std::max({worst, std::abs(faraday[i]), std::abs(ampere[i])});
    }
    return worst;
}

FieldModel::FieldModel(std::string name, Evaluator eval, DerivativeKind kind, bool source_free,
                       bool uniform)
    : name_(std::move(name)), eval_(std::move(eval)), kind_(kind), source_free_(source_free),
      uniform_(uniform)
{
    if (!eval_) {
        throw std::invalid_argument("field model needs an evaluator");
    }
}

FieldSample eval_field(const FieldModel& model, const SpacetimePoint& p)
{
    if (!is_finite(p)) {
        throw std::invalid_argument("field evaluated at non-finite point " + to_string(p));
    }
    return model.evaluate(p);
}

double default_fd_step(double coordinate)
{
    static const double base = std::cbrt(std::numeric_limits<double>::epsilon());
    return base * std::max(1.0, std::abs(coordinate));
}

FieldModel finite_difference_adapter(RawField raw, std::optional<double> h, std::string name,
                                     bool source_free)
{
    if (!raw) {
        throw std::invalid_argument("finite_difference_adapter needs a field function");
    }
    if (h && !(std::isfinite(*h) && *h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    auto eval = [raw = std::move(raw), h](const SpacetimePoint& p) {
        const FieldValue centre = raw(p);
        FieldSample s;
        s.e = centre.e;
        s.b = centre.b;
        for (int a = 0; a < 4; ++a) {
            const double step = h ? *h : default_fd_step(p[a]);
            const FieldValue fwd = raw(shifted(p, a, step));
            const FieldValue bwd = raw(shifted(p, a, -step));
            const double inv = 1.0 / (2.0 * step);
            s.de[a] = (fwd.e - bwd.e) * inv;
            s.db[a] = (fwd.b - bwd.b) * inv;
        }
        return s;
    };
    return FieldModel(std::move(name), std::move(eval), DerivativeKind::FiniteDifference,
                      source_free);
}

}  // namespace emconn
