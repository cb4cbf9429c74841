#include "emconn/connection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "emconn/levi_civita.hpp"

namespace emconn {

namespace {

enum Source { Ex, Ey, Ez, Bx, By, Bz };

// Gamma^i_jk = kappa * field[src] * (re + i * im * sqrt(5/6))
struct Entry {
    int i, j, k;
    Source src;
    double re;
    double im;
};

// Lorentz-force E-slots, shared by every placement.
constexpr Entry kLorentzE[] = {
    {1, 0, 0, Ex, -1, 0}, {2, 0, 0, Ey, -1, 0}, {3, 0, 0, Ez, -1, 0},
};

constexpr Entry kLorentzB[] = {
    {2, 3, 0, Bx, -1, 0}, {3, 1, 0, By, -1, 0}, {1, 2, 0, Bz, -1, 0},
    {3, 0, 2, Bx, +1, 0}, {1, 0, 3, By, +1, 0}, {2, 0, 1, Bz, +1, 0},
};

constexpr Entry kAlternativeB[] = {
    {2, 0, 3, Bx, -1, 0}, {3, 0, 1, By, -1, 0}, {1, 0, 2, Bz, -1, 0},
    {3, 2, 0, Bx, +1, 0}, {1, 3, 0, By, +1, 0}, {2, 1, 0, Bz, +1, 0},
};

// Components completing the connection beyond the Lorentz force.
// The z column is not the cyclic image of the x and y columns in its
// imaginary slots; it is kept exactly as tabulated.
constexpr Entry kCompletion[] = {
    {0, 3, 2, Bx, -0.5, 0}, {0, 1, 3, By, -0.5, 0}, {0, 2, 1, Bz, -0.5, 0},
    {0, 2, 3, Bx, +0.5, 0}, {0, 3, 1, By, +0.5, 0}, {0, 1, 2, Bz, +0.5, 0},

    {0, 0, 1, Ex, -1, 0},   {0, 0, 2, Ey, -1, 0},   {0, 0, 3, Ez, -1, 0},
    {0, 1, 0, Ex, -1, 0},   {0, 2, 0, Ey, -1, 0},   {0, 3, 0, Ez, -1, 0},

    {2, 2, 1, Ex, 0, +1},   {3, 3, 2, Ey, 0, +1},   {2, 2, 3, Ez, 0, +1},
    {2, 1, 2, Ex, 0, +1},   {3, 2, 3, Ey, 0, +1},   {2, 3, 2, Ez, 0, +1},
    {3, 3, 1, Ex, 0, -1},   {1, 1, 2, Ey, 0, -1},   {1, 1, 3, Ez, 0, -1},
    {3, 1, 3, Ex, 0, -1},   {1, 2, 1, Ey, 0, -1},   {1, 3, 1, Ez, 0, -1},
    {1, 2, 2, Ex, 1, +1},   {2, 3, 3, Ey, 1, +1},   {3, 2, 2, Ez, 1, +1},
    {1, 3, 3, Ex, 1, -1},   {2, 1, 1, Ey, 1, -1},   {3, 1, 1, Ez, 1, -1},
};

void apply(Connection& c, std::span<const Entry> entries, const double (&field)[6], double kappa,
           double s)
{
    for (const Entry& en : entries) {
        const double f = kappa * field[en.src];
        c(en.i, en.j, en.k) += CScalar(en.re * f, en.im * s * f);
    }
}

}  // namespace

std::string_view to_string(Placement p)
{
    switch (p) {
    case Placement::LorentzOnly:
        return "lorentz_only";
    case Placement::Full:
        return "full";
    case Placement::AlternativeFull:
        return "alternative_full";
    }
    return "unknown";
}

Placement parse_placement(std::string_view name)
{
    if (name == "lorentz_only") {
        return Placement::LorentzOnly;
    }
    if (name == "full") {
        return Placement::Full;
    }
    if (name == "alternative_full") {
        return Placement::AlternativeFull;
    }
    throw std::invalid_argument("unknown placement '" + std::string(name) +
                                "' (expected lorentz_only, full or alternative_full)");
}

double imaginary_coefficient()
{
    static const double value = std::sqrt(5.0 / 6.0);
    return value;
}

Rank3& Rank3::operator+=(const Rank3& o)
{
    for (std::size_t n = 0; n < v_.size(); ++n) {
        v_[n] += o.v_[n];
    }
    return *this;
}

Rank3& Rank3::operator*=(CScalar s)
{
    for (auto& x : v_) {
        x *= s;
    }
    return *this;
}

double Rank3::max_abs() const
{
    double m = 0.0;
    for (const auto& x : v_) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

Connection connection_from_fields(const Vec3& e, const Vec3& b, double kappa, Placement placement)
{
    const double field[6] = {e.x, e.y, e.z, b.x, b.y, b.z};
    const double s = imaginary_coefficient();
    Connection c;
    apply(c, kLorentzE, field, kappa, s);
    apply(c, placement == Placement::AlternativeFull ? std::span<const Entry>(kAlternativeB)
                                                     : std::span<const Entry>(kLorentzB),
          field, kappa, s);
    if (placement != Placement::LorentzOnly) {
        apply(c, kCompletion, field, kappa, s);
    }
    return c;
}

Connection build_connection(const FieldSample& s, const ParticleParams& pp, Placement placement)
{
    return connection_from_fields(s.e, s.b, pp.kappa(), placement);
}

ConnectionJet build_jet(const FieldSample& s, const ParticleParams& pp, Placement placement)
{
    ConnectionJet jet;
    const double kappa = pp.kappa();
    jet.g = connection_from_fields(s.e, s.b, kappa, placement);
    for (int a = 0; a < 4; ++a) {
        jet.dg[a] = connection_from_fields(s.de[a], s.db[a], kappa, placement);
    }
    return jet;
}

ConnectionJet build_jet(const FieldModel& model, const SpacetimePoint& p, const ParticleParams& pp,
                        Placement placement)
{
    return build_jet(eval_field(model, p), pp, placement);
}

Torsion torsion(const Connection& c)
{
    Torsion t;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                t(i, j, k) = c(i, j, k) - c(i, k, j);
            }
        }
    }
    return t;
}

namespace {

template <class Derivative>
CScalar epsilon_contract(Derivative&& dt)
{
    CScalar sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                for (int l = 0; l < 4; ++l) {
                    const int eps = levi_civita(i, j, k, l);
                    if (eps != 0) {
                        sum += static_cast<double>(eps) * dt(i, j, k, l);
                    }
                }
            }
        }
    }
    return sum;
}

}  // namespace

CScalar torsion_epsilon_sum(const ConnectionJet& jet)
{
    // Torsion is linear in the connection, so dT/dx^l = torsion(dGamma/dx^l).
    std::array<Torsion, 4> dt;
    for (int l = 0; l < 4; ++l) {
        dt[l] = torsion(jet.dg[l]);
    }
    return epsilon_contract([&](int i, int j, int k, int l) { return dt[l](i, j, k); });
}

CScalar torsion_epsilon_sum(const FieldModel& model, const SpacetimePoint& p,
                            const ParticleParams& pp, Placement placement)
{
    return torsion_epsilon_sum(build_jet(model, p, pp, placement));
}

TorsionSumDiagnostic torsion_epsilon_sum_diagnostic(const ConnectionJet& jet)
{
    const Torsion t = torsion(jet.g);
    std::array<Torsion, 4> dt;
    for (int l = 0; l < 4; ++l) {
        dt[l] = torsion(jet.dg[l]);
    }
    const Connection& g = jet.g;
    auto covariant = [&](int i, int j, int k, int l) {
        CScalar v = dt[l](i, j, k);
        for (int m = 0; m < 4; ++m) {
            v += g(i, l, m) * t(m, j, k) - g(m, l, j) * t(i, m, k) - g(m, l, k) * t(i, j, m);
        }
        return v;
    };
    return {epsilon_contract([&](int i, int j, int k, int l) { return dt[l](i, j, k); }),
            epsilon_contract(covariant)};
}

std::vector<TableRow> nonzero_rows(const Rank3& t)
{
    std::vector<TableRow> rows;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            for (int k = 0; k < 4; ++k) {
                if (t(i, j, k) != CScalar(0.0)) {
                    rows.push_back({i, j, k, t(i, j, k)});
                }
            }
        }
    }
    return rows;
}

std::vector<TableRow> torsion_rows(const Torsion& t)
{
    std::vector<TableRow> rows = nonzero_rows(t);
    std::erase_if(rows, [](const TableRow& r) { return r.j >= r.k; });
    return rows;
}

void write_table(std::ostream& os, const std::vector<TableRow>& rows)
{
    if (rows.empty()) {
        os << "# no nonzero components\n";
        return;
    }
    char buf[96];
    for (const TableRow& r : rows) {
        // +0.0 folds negative zero so "-0" never appears in a dump
        std::snprintf(buf, sizeof buf, "%d %d %d %.17g %.17g\n", r.i, r.j, r.k,
                      r.value.real() + 0.0, r.value.imag() + 0.0);
        os << buf;
    }
}

}  // namespace emconn
