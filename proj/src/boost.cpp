#include "emconn/boost.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace emconn {

BoostSpec::BoostSpec(int axis, double beta) : axis_(axis), beta_(beta)
{
    if (axis < 1 || axis > 3) {
        throw std::invalid_argument("boost axis must be 1, 2 or 3");
    }
    if (!(std::abs(beta) < 1.0)) {
        throw std::invalid_argument("boost requires |beta| < 1");
    }
    gamma_ = 1.0 / std::sqrt(1.0 - beta * beta);
}

BoostMatrices boost_matrix(const BoostSpec& bs)
{
    BoostMatrices m;
    const int n = bs.axis();
    const double g = bs.gamma();
    const double gb = g * bs.beta();
    for (int a = 0; a < 4; ++a) {
        m.forward[a][a] = 1.0;
        m.inverse[a][a] = 1.0;
    }
    m.forward[0][0] = m.forward[n][n] = g;
    m.forward[0][n] = m.forward[n][0] = -gb;
    m.inverse[0][0] = m.inverse[n][n] = g;
    m.inverse[0][n] = m.inverse[n][0] = gb;
    return m;
}

Connection transform_connection(const Connection& c, const BoostSpec& bs)
{
    const BoostMatrices m = boost_matrix(bs);
    const Mat4& lf = m.forward;
    const Mat4& li = m.inverse;

    // contract one index at a time
    Connection s1;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            for (int k = 0; k < 4; ++k) {
                CScalar v = 0.0;
                for (int d = 0; d < 4; ++d) {
                    v += c(a, b, d) * li[d][k];
                }
                s1(a, b, k) = v;
            }
        }
    }
    Connection s2;
    for (int a = 0; a < 4; ++a) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                CScalar v = 0.0;
                for (int b = 0; b < 4; ++b) {
                    v += s1(a, b, k) * li[b][j];
                }
                s2(a, j, k) = v;
            }
        }
    }
    Connection out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                CScalar v = 0.0;
                for (int a = 0; a < 4; ++a) {
                    v += lf[i][a] * s2(a, j, k);
                }
                out(i, j, k) = v;
            }
        }
    }
    return out;
}

ObservableSet observables(const Connection& c, const ParticleParams& pp)
{
    const double kappa = pp.kappa();
    if (kappa == 0.0) {
        throw std::invalid_argument("observables need a nonzero charge");
    }
    ObservableSet o;
    for (int i = 1; i <= 3; ++i) {
        o.e_obs[i - 1] = -c(i, 0, 0).real() / kappa;
    }
    // B_x sits in (3, 0, 2) / (2, 3, 0); cyclic for y and z
    for (int i = 1; i <= 3; ++i) {
        const int p = i % 3 + 1;  // y for x, z for y, x for z
        const int n = p % 3 + 1;
        const CScalar avg = (c(n, 0, p) + c(n, p, 0) - (c(p, n, 0) + c(p, 0, n))) * 0.5;
        o.b_obs[i - 1] = avg.real() / kappa;
    }
    return o;
}

double BoostFieldReport::max_deviation() const
{
    double m = 0.0;
    for (const auto& r : rows) {
        m = std::max(m, r.deviation);
    }
    return m;
}

BoostFieldReport boost_field_check(const Vec3& e, const Vec3& b, const BoostSpec& bs,
                          const ParticleParams& pp)
{
    const Connection c = connection_from_fields(e, b, pp.kappa(), Placement::Full);
    const ObservableSet obs = observables(transform_connection(c, bs), pp);

    Vec3 axis;
    axis[bs.axis() - 1] = 1.0;
    const Vec3 nb = axis * bs.beta();
    const Vec3 e_first = e + cross(nb, b);
    const Vec3 b_first = b - cross(nb, e);

    // components along the boost are unchanged; transverse ones pick up gamma
    auto with_gamma = [&](const Vec3& initial, const Vec3& first) {
        Vec3 out = first * bs.gamma();
        out[bs.axis() - 1] = initial[bs.axis() - 1];
        return out;
    };
    const Vec3 e_gamma = with_gamma(e, e_first);
    const Vec3 b_gamma = with_gamma(b, b_first);

    BoostFieldReport rep;
    rep.beta = bs.beta();
    rep.gamma = bs.gamma();
    rep.bound = kBoostBoundConstant * bs.beta() * bs.beta() * std::max(norm(e), norm(b));
    static const char* const labels[6] = {"B_x", "B_y", "B_z", "E_x", "E_y", "E_z"};
    for (int n = 0; n < 6; ++n) {
        const bool is_b = n < 3;
        const int i = n % 3;
        BoostFieldRow& row = rep.rows[n];
        row.label = labels[n];
        row.initial = is_b ? b[i] : e[i];
        row.observed = is_b ? obs.b_obs[i] : obs.e_obs[i];
        row.expected = is_b ? b_first[i] : e_first[i];
        row.expected_gamma = is_b ? b_gamma[i] : e_gamma[i];
        row.deviation = std::abs(row.observed - row.expected);
    }
    return rep;
}

}  // namespace emconn
