#include "emconn/chern.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "emconn/curvature.hpp"

namespace emconn {

int TwoForm::slot_index(int a, int b)
{
    for (int n = 0; n < 6; ++n) {
        if (kPairs[n][0] == a && kPairs[n][1] == b) {
            return n;
        }
    }
    throw std::out_of_range("two-form index pair must satisfy 0 <= a < b <= 3");
}

CScalar TwoForm::operator()(int a, int b) const
{
    if (a == b) {
        return 0.0;
    }
    return a < b ? w_[slot_index(a, b)] : -w_[slot_index(b, a)];
}

void TwoForm::set(int a, int b, CScalar v)
{
    if (a < b) {
        w_[slot_index(a, b)] = v;
    } else {
        w_[slot_index(b, a)] = -v;
    }
}

TwoForm& TwoForm::operator*=(CScalar s)
{
    for (auto& v : w_) {
        v *= s;
    }
    return *this;
}

double TwoForm::max_abs() const
{
    double m = 0.0;
    for (const auto& v : w_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double TwoForm::max_abs_difference(const TwoForm& o) const
{
    double m = 0.0;
    for (int n = 0; n < 6; ++n) {
        m = std::max(m, std::abs(w_[n] - o.w_[n]));
    }
    return m;
}

CurvatureTraceForm curvature_trace_form(const FieldSample& s, const ParticleParams& pp,
                                        Placement placement)
{
    const Riemann r = riemann(build_jet(s, pp, placement));
    CurvatureTraceForm out;
    for (int n = 0; n < 6; ++n) {
        const auto [a, b] = TwoForm::kPairs[n];
        CScalar v = 0.0;
        for (int i = 0; i < 4; ++i) {
            v += r(i, i, a, b);
        }
        out.raw.slot(n) = v;
    }
    const double kappa = pp.kappa();
    out.normalized = kappa == 0.0 ? TwoForm{} : out.raw * (1.0 / kappa);
    return out;
}

CurvatureTraceForm curvature_trace_form(const FieldModel& model, const SpacetimePoint& p,
                                        const ParticleParams& pp, Placement placement)
{
    return curvature_trace_form(eval_field(model, p), pp, placement);
}

TimeBasisForm closed_form_coefficients(const FieldSample& s, double c)
{
    const auto& d = s.de;
    TimeBasisForm f;
    f.coeff[0] = c * d[0].x;
    f.coeff[1] = c * d[0].y;
    f.coeff[2] = c * d[0].z;
    f.coeff[3] = -(d[2].z - d[3].y);
    f.coeff[4] = d[3].x - d[1].z;
    f.coeff[5] = -(d[1].y - d[2].x);
    return f;
}

TwoForm to_x0_basis(const TimeBasisForm& f, double c)
{
    // dx^i ^ dt = -(1/c) dx0 ^ dx^i
    TwoForm w;
    w.set(0, 1, -f.coeff[0] / c);
    w.set(0, 2, -f.coeff[1] / c);
    w.set(0, 3, -f.coeff[2] / c);
    w.set(2, 3, f.coeff[3]);
    w.set(1, 3, f.coeff[4]);
    w.set(1, 2, f.coeff[5]);
    return w;
}

TimeBasisForm to_time_basis(const TwoForm& w, double c)
{
    TimeBasisForm f;
    f.coeff[0] = -c * w(0, 1).real();
    f.coeff[1] = -c * w(0, 2).real();
    f.coeff[2] = -c * w(0, 3).real();
    f.coeff[3] = w(2, 3).real();
    f.coeff[4] = w(1, 3).real();
    f.coeff[5] = w(1, 2).real();
    return f;
}

TwoForm closed_form_trace(const FieldSample& s, double c)
{
    return to_x0_basis(closed_form_coefficients(s, c), c);
}

TwoForm closed_form_trace(const FieldModel& model, const SpacetimePoint& p, double c)
{
    return closed_form_trace(eval_field(model, p), c);
}

TwoForm exact_form_fd(const FieldModel& model, const SpacetimePoint& p, double h)
{
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    // grad[a][i] = dE_i/dx^a from E values alone
    std::array<Vec3, 4> grad;
    for (int a = 0; a < 4; ++a) {
        const Vec3 fwd = eval_field(model, shifted(p, a, h)).e;
        const Vec3 bwd = eval_field(model, shifted(p, a, -h)).e;
        grad[a] = (fwd - bwd) * (1.0 / (2.0 * h));
    }
    // E.dx has no dx0 component
    auto one_form_derivative = [&](int a, int b) { return b == 0 ? 0.0 : grad[a][b - 1]; };
    TwoForm w;
    for (const auto& [a, b] : TwoForm::kPairs) {
        w.set(a, b, -(one_form_derivative(a, b) - one_form_derivative(b, a)));
    }
    return w;
}

ExactnessReport exactness_check(const FieldModel& model, const SpacetimePoint& p,
                                const ParticleParams& pp, double h)
{
    const TwoForm trace = curvature_trace_form(model, p, pp).normalized;
    ExactnessReport rep;
    rep.h = h;
    rep.deviation = trace.max_abs_difference(exact_form_fd(model, p, h));
    rep.deviation_half = trace.max_abs_difference(exact_form_fd(model, p, 0.5 * h));
    rep.ratio = rep.deviation_half > 0.0 ? rep.deviation / rep.deviation_half : 0.0;
    return rep;
}

double closedness_defect(const FieldModel& model, const SpacetimePoint& p,
                         const ParticleParams& pp, double h)
{
    if (!(h > 0.0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    std::array<TwoForm, 4> dw;
    for (int a = 0; a < 4; ++a) {
        const TwoForm fwd = curvature_trace_form(model, shifted(p, a, h), pp).normalized;
        const TwoForm bwd = curvature_trace_form(model, shifted(p, a, -h), pp).normalized;
        for (int n = 0; n < 6; ++n) {
            dw[a].slot(n) = (fwd.slot(n) - bwd.slot(n)) / (2.0 * h);
        }
    }
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            for (int c = b + 1; c < 4; ++c) {
                const CScalar v = dw[a](b, c) - dw[b](a, c) + dw[c](a, b);
                worst = std::max(worst, std::abs(v));
            }
        }
    }
    return worst;
}

}  // namespace emconn
