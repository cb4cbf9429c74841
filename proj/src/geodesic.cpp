#include "emconn/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "emconn/rk4.hpp"

namespace emconn {

namespace {

std::array<double, 8> pack(const GeodesicState& st)
{
    return {st.x[0], st.x[1], st.x[2], st.x[3], st.u[0], st.u[1], st.u[2], st.u[3]};
}

GeodesicState unpack(const std::array<double, 8>& y)
{
    GeodesicState st;
    for (int a = 0; a < 4; ++a) {
        st.x[a] = y[a];
        st.u[a] = y[a + 4];
    }
    return st;
}

bool finite_state(const std::array<double, 8>& y)
{
    return std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

StateDerivative geodesic_rhs(const GeodesicState& st, const FieldModel& model,
                             const ParticleParams& pp, Placement placement)
{
    const Connection g = build_connection(eval_field(model, st.x), pp, placement);
    StateDerivative d{};
    for (int mu = 0; mu < 4; ++mu) {
        d[mu] = st.u[mu];
        double acc = 0.0;
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                acc += g(mu, j, k).real() * st.u[j] * st.u[k];
            }
        }
        d[mu + 4] = -acc;
    }
    return d;
}

StateDerivative classical_rhs(const GeodesicState& st, const FieldModel& model,
                              const ParticleParams& pp)
{
    const FieldSample s = eval_field(model, st.x);
    const Vec3 acc = (s.e + cross(st.spatial_u(), s.b)) * pp.kappa();
    StateDerivative d{};
    for (int mu = 0; mu < 4; ++mu) {
        d[mu] = st.u[mu];
    }
    d[5] = acc.x;
    d[6] = acc.y;
    d[7] = acc.z;
    return d;
}

Trajectory integrate(Dynamics dynamics, const GeodesicState& st0, const FieldModel& model,
                     const ParticleParams& pp, double tau_end, double h, Placement placement)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("integration step must be positive");
    }
    if (!(tau_end > 0.0) || !std::isfinite(tau_end)) {
        throw std::invalid_argument("tau_end must be positive");
    }
    if (!(st0.u[0] > 0.0)) {
        throw std::invalid_argument("launch requires u0 > 0");
    }

    // an intermediate stage may overflow before the step completes
    struct NonFiniteStage {};
    auto rhs = [&](const std::array<double, 8>& y) {
        if (!finite_state(y)) {
            throw NonFiniteStage{};
        }
        const GeodesicState st = unpack(y);
        return dynamics == Dynamics::Geodesic ? geodesic_rhs(st, model, pp, placement)
                                              : classical_rhs(st, model, pp);
    };

    const double c = pp.c();
    const double full_steps = std::floor(tau_end / h);
    const double rest = tau_end - full_steps * h;
    const auto n_full = static_cast<std::size_t>(full_steps);
    const bool short_step = rest > 1e-12 * h;
    const std::size_t n_steps = n_full + (short_step ? 1 : 0);

    Trajectory traj;
    traj.step = h;
    traj.samples.reserve(n_steps + 1);
    traj.samples.push_back({0.0, st0, st0.u[0]});

    std::array<double, 8> y = pack(st0);
    for (std::size_t n = 1; n <= n_steps; ++n) {
        const double tau = n <= n_full ? static_cast<double>(n) * h : tau_end;
        const double dtau = tau - traj.samples.back().tau;
        try {
            y = rk4_step(y, c * dtau, rhs);
        } catch (const NonFiniteStage&) {
            throw IntegrationError("state became non-finite at tau = " + std::to_string(tau),
                                   std::move(traj));
        } catch (const SingularityError& err) {
            std::string what = std::string(err.what()) + " at tau = " +
                               std::to_string(traj.samples.back().tau);
            throw IntegrationError(what, std::move(traj));
        }
        if (!finite_state(y)) {
            throw IntegrationError("state became non-finite at tau = " + std::to_string(tau),
                                   std::move(traj));
        }
        if (!(y[4] > 0.0)) {
            throw IntegrationError("time reversal: u0 = " + std::to_string(y[4]) +
                                       " <= 0 at tau = " + std::to_string(tau),
                                   std::move(traj));
        }
        const GeodesicState st = unpack(y);
        traj.samples.push_back({n == n_steps ? tau_end : tau, st, st.u[0]});
    }
    return traj;
}

double default_step(const FieldSample& s, const ParticleParams& pp, double tau_end)
{
    double t_char = std::numeric_limits<double>::infinity();
    const double q = std::abs(pp.q());
    for (double f : {norm(s.e), norm(s.b)}) {
        if (f > 0.0 && q > 0.0) {
            t_char = std::min(t_char, pp.m() * pp.c() / (q * f));
        }
    }
    if (!std::isfinite(t_char)) {
        return tau_end / 1000.0;
    }
    return t_char / 1000.0;
}

ForceProbe force_probe(const Vec3& e, const Vec3& v, const ParticleParams& pp)
{
    const double kappa = pp.kappa();
    if (kappa == 0.0) {
        throw std::invalid_argument("force probe needs a nonzero charge");
    }
    GeodesicState st;
    st.u = {1.0, v.x / pp.c(), v.y / pp.c(), v.z / pp.c()};
    const StateDerivative d = geodesic_rhs(st, presets::uniform_e(e), pp);
    const Vec3 acc{d[5], d[6], d[7]};

    ForceProbe out;
    const double e_norm = norm(e);
    if (e_norm == 0.0) {
        return out;
    }
    const double tiny = 1e-14 * e_norm;
    const double speed = norm(v);
    if (speed == 0.0) {
        const Vec3 e_hat = e * (1.0 / e_norm);
        const double ratio = dot(acc, e_hat) / (kappa * e_norm);
        out.parallel_ratio = ratio;
        out.transverse_ratio = ratio;
        return out;
    }
    const Vec3 v_hat = v * (1.0 / speed);
    const double e_par = dot(e, v_hat);
    if (std::abs(e_par) > tiny) {
        out.parallel_ratio = dot(acc, v_hat) / (kappa * e_par);
    }
    const Vec3 e_perp = e - v_hat * e_par;
    const double e_perp_norm = norm(e_perp);
    if (e_perp_norm > tiny) {
        const Vec3 perp_hat = e_perp * (1.0 / e_perp_norm);
        out.transverse_ratio = dot(acc, perp_hat) / (kappa * e_perp_norm);
    }
    return out;
}

namespace {

// Cubic Hermite interpolation on [x0, x1] from values and slopes.
double hermite(double x, double x0, double x1, double f0, double f1, double d0, double d1)
{
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * f1 +
           (s3 - s2) * h * d1;
}

struct LabClock {
    double tau = 0.0;
    double dtau_dt = 1.0;
};

// tau(t) and dtau/dt(t) along one trajectory. t is monotone because u0 > 0.
class LabResampler {
public:
    LabResampler(const Trajectory& traj, const FieldModel& model, const ParticleParams& pp)
        : traj_(traj), c_(pp.c())
    {
        du0_dtau_.reserve(traj.samples.size());
        for (const auto& smp : traj.samples) {
            du0_dtau_.push_back(c_ * geodesic_rhs(smp.state, model, pp)[4]);
        }
    }

    double end_time() const { return traj_.samples.back().lab_time(c_); }

    LabClock at(double t) const
    {
        const auto& smp = traj_.samples;
        auto it = std::upper_bound(smp.begin(), smp.end(), t, [this](double v, const auto& s) {
            return v < s.lab_time(c_);
        });
        std::size_t hi = static_cast<std::size_t>(it - smp.begin());
        hi = std::clamp<std::size_t>(hi, 1, smp.size() - 1);
        const std::size_t lo = hi - 1;
        const auto& a = smp[lo];
        const auto& b = smp[hi];
        const double ta = a.lab_time(c_);
        const double tb = b.lab_time(c_);
        if (tb == ta) {
            return {a.tau, 1.0 / a.dt_dtau};
        }
        const double ra = 1.0 / a.dt_dtau;
        const double rb = 1.0 / b.dt_dtau;
        // d(1/u0)/dt = -(du0/dtau) / u0^3
        const double dra = -du0_dtau_[lo] * ra * ra * ra;
        const double drb = -du0_dtau_[hi] * rb * rb * rb;
        return {hermite(t, ta, tb, a.tau, b.tau, ra, rb), hermite(t, ta, tb, ra, rb, dra, drb)};
    }

private:
    const Trajectory& traj_;
    double c_;
    std::vector<double> du0_dtau_;
};

}  // namespace

DecayReport decay_experiment(const Vec3& e, double beta, const ParticleParams& pp, double tau_end,
                             double h, std::size_t samples)
{
    const auto tau0 = pp.tau0();
    if (!tau0) {
        throw std::invalid_argument("decay experiment needs a proper lifetime tau0");
    }
    if (!(std::abs(beta) < 1.0)) {
        throw std::invalid_argument("launch speed must satisfy |beta| < 1");
    }
    if (samples < 2) {
        throw std::invalid_argument("decay experiment needs at least two samples");
    }
    const FieldModel model = presets::uniform_e(e);
    const double e_norm = norm(e);
    const Vec3 dir = e_norm > 0.0 ? e * (1.0 / e_norm) : Vec3{1.0, 0.0, 0.0};

    auto launch = [&](double sign) {
        GeodesicState st;
        st.u = {1.0, sign * beta * dir.x, sign * beta * dir.y, sign * beta * dir.z};
        return integrate(Dynamics::Geodesic, st, model, pp, tau_end, h);
    };

    DecayReport rep;
    rep.plus = launch(+1.0);
    rep.minus = launch(-1.0);

    const LabResampler plus(rep.plus, model, pp);
    const LabResampler minus(rep.minus, model, pp);
    const double t_max = std::min(plus.end_time(), minus.end_time());

    rep.rows.reserve(samples);
    for (std::size_t n = 0; n < samples; ++n) {
        const double t =
            n + 1 == samples ? t_max : t_max * static_cast<double>(n) / static_cast<double>(samples - 1);
        const LabClock p = plus.at(t);
        const LabClock m = minus.at(t);
        DecayRow row;
        row.t = t;
        row.tau_plus = p.tau;
        row.tau_minus = m.tau;
        row.rate_plus = p.dtau_dt / *tau0;
        row.rate_minus = m.dtau_dt / *tau0;
        row.survival_plus = std::exp(-p.tau / *tau0);
        row.survival_minus = std::exp(-m.tau / *tau0);
        row.asymmetry = (row.rate_plus - row.rate_minus) / (row.rate_plus + row.rate_minus);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace emconn
