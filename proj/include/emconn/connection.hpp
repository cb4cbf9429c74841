#ifndef EMCONN_CONNECTION_HPP
#define EMCONN_CONNECTION_HPP

#include <array>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "emconn/field.hpp"
#include "emconn/particle.hpp"
#include "emconn/types.hpp"

namespace emconn {

/// Which slots carry the field components.
///  LorentzOnly      the nine components readable from the classical Lorentz force
///  Full             the complete electromagnetic connection
///  AlternativeFull  Full with the six Lorentz B-slots moved to their (j,k)-transposed positions
enum class Placement { LorentzOnly, Full, AlternativeFull };

std::string_view to_string(Placement p);
/// Accepts lorentz_only, full, alternative_full. Throws std::invalid_argument otherwise.
Placement parse_placement(std::string_view name);

/// sqrt(5/6), the magnitude of the imaginary coefficients.
double imaginary_coefficient();

/// Dense array of 4x4x4 complex components, indexed (upper, lower, lower).
/// Used for the connection, its derivatives and its torsion.
class Rank3 {
public:
    CScalar& operator()(int i, int j, int k) { return v_[index(i, j, k)]; }
    const CScalar& operator()(int i, int j, int k) const { return v_[index(i, j, k)]; }

    Rank3& operator+=(const Rank3& o);
    Rank3& operator*=(CScalar s);
    friend Rank3 operator+(Rank3 a, const Rank3& b) { return a += b; }
    friend Rank3 operator*(Rank3 a, CScalar s) { return a *= s; }
    friend bool operator==(const Rank3&, const Rank3&) = default;

    /// Largest component modulus.
    double max_abs() const;

private:
    static constexpr std::size_t index(int i, int j, int k)
    {
        return static_cast<std::size_t>(16 * i + 4 * j + k);
    }
    std::array<CScalar, 64> v_{};
};

/// Gamma^i_jk at a point; units 1/length.
using Connection = Rank3;

/// T^i_jk = Gamma^i_jk - Gamma^i_kj.
using Torsion = Rank3;

/// Connection and its four coordinate derivatives dg[a] = dGamma/dx^a.
struct ConnectionJet {
    Connection g;
    std::array<Connection, 4> dg{};
};

/// Connection for field values (e, b) with coupling kappa = q/(m c^2).
/// Every component is linear in (e, b); the same routine maps field
/// derivatives to connection derivatives.
Connection connection_from_fields(const Vec3& e, const Vec3& b, double kappa, Placement placement);

Connection build_connection(const FieldSample& s, const ParticleParams& pp, Placement placement);

ConnectionJet build_jet(const FieldSample& s, const ParticleParams& pp, Placement placement);
ConnectionJet build_jet(const FieldModel& model, const SpacetimePoint& p, const ParticleParams& pp,
                        Placement placement);

Torsion torsion(const Connection& c);

/// Sum over all (i,j,k,l) of eps_ijkl dT^i_jk/dx^l. For the Full and
/// AlternativeFull placements this equals 2 kappa div B.
CScalar torsion_epsilon_sum(const ConnectionJet& jet);
CScalar torsion_epsilon_sum(const FieldModel& model, const SpacetimePoint& p,
                            const ParticleParams& pp, Placement placement = Placement::Full);

/// The same sum with the covariant derivative
///   T^i_jk;l = T^i_jk,l + G^i_lm T^m_jk - G^m_lj T^i_mk - G^m_lk T^i_jm
/// alongside the plain partial-derivative version, for comparison only.
struct TorsionSumDiagnostic {
    CScalar partial;
    CScalar covariant;
};

TorsionSumDiagnostic torsion_epsilon_sum_diagnostic(const ConnectionJet& jet);

struct TableRow {
    int i = 0;
    int j = 0;
    int k = 0;
    CScalar value;

    friend bool operator==(const TableRow&, const TableRow&) = default;
};

/// Nonzero components in (i, j, k) lexicographic order.
std::vector<TableRow> nonzero_rows(const Rank3& t);

/// Nonzero torsion components with j < k, as torsion is listed conventionally.
std::vector<TableRow> torsion_rows(const Torsion& t);

/// Table dump: one "i j k re im" line per row, numbers printed with %.17g,
/// or a "# no nonzero components" sentinel for an empty table.
void write_table(std::ostream& os, const std::vector<TableRow>& rows);

}  // namespace emconn

#endif
