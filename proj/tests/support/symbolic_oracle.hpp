// Test-only symbolic expansion of the curvature of the electromagnetic
// connection. Polynomials over the six field symbols and their 24 first
// derivatives; the connection is read from its own text transcription of the
// component table, independent of the library's tables.
#ifndef EMCONN_TESTS_SYMBOLIC_ORACLE_HPP
#define EMCONN_TESTS_SYMBOLIC_ORACLE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "emconn/field.hpp"

namespace oracle {

using Complex = std::complex<double>;

// Symbols 0..5 are Ex Ey Ez Bx By Bz; 6 + 6a + f is d(field f)/dx^a.
constexpr int kFieldSymbols = 6;
constexpr int kSymbols = 30;

constexpr int deriv_symbol(int field, int axis) { return kFieldSymbols + 6 * axis + field; }

inline int field_symbol(const std::string& name)
{
    static const char* names[6] = {"Ex", "Ey", "Ez", "Bx", "By", "Bz"};
    for (int f = 0; f < 6; ++f) {
        if (name == names[f]) {
            return f;
        }
    }
    throw std::invalid_argument("unknown field symbol " + name);
}

/// Sparse polynomial: sorted symbol multiset -> coefficient.
class Poly {
public:
    using Monomial = std::vector<int>;

    Poly() = default;
    static Poly constant(Complex c)
    {
        Poly p;
        p.add({}, c);
        return p;
    }
    static Poly symbol(int s, Complex c = 1.0)
    {
        Poly p;
        p.add({s}, c);
        return p;
    }

    void add(Monomial m, Complex c)
    {
        if (c == Complex(0.0)) {
            return;
        }
        std::sort(m.begin(), m.end());
        auto& slot = terms_[m];
        slot += c;
        if (slot == Complex(0.0)) {
            terms_.erase(m);
        }
    }

    Poly& operator+=(const Poly& o)
    {
        for (const auto& [m, c] : o.terms_) {
            add(m, c);
        }
        return *this;
    }
    Poly& operator-=(const Poly& o)
    {
        for (const auto& [m, c] : o.terms_) {
            add(m, -c);
        }
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b)
    {
        Poly out;
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = ma;
                m.insert(m.end(), mb.begin(), mb.end());
                out.add(std::move(m), ca * cb);
            }
        }
        return out;
    }
    friend Poly operator*(const Poly& a, Complex s)
    {
        Poly out;
        for (const auto& [m, c] : a.terms_) {
            out.add(m, c * s);
        }
        return out;
    }

    /// d/dx^axis by the product rule; only field symbols carry dependence.
    Poly derivative(int axis) const
    {
        Poly out;
        for (const auto& [m, c] : terms_) {
            for (std::size_t n = 0; n < m.size(); ++n) {
                if (m[n] >= kFieldSymbols) {
                    throw std::logic_error("second derivatives are not modelled");
                }
                Monomial dm = m;
                dm[n] = deriv_symbol(m[n], axis);
                out.add(std::move(dm), c);
            }
        }
        return out;
    }

    Complex evaluate(const std::array<double, kSymbols>& values) const
    {
        Complex sum = 0.0;
        for (const auto& [m, c] : terms_) {
            Complex term = c;
            for (int s : m) {
                term *= values[static_cast<std::size_t>(s)];
            }
            sum += term;
        }
        return sum;
    }

    /// Largest |coefficient| of the difference, after rounding noise cancels.
    double max_coefficient_difference(const Poly& o) const
    {
        const Poly d = *this - o;
        double m = 0.0;
        for (const auto& [mono, c] : d.terms_) {
            m = std::max(m, std::abs(c));
        }
        return m;
    }

    bool empty() const { return terms_.empty(); }
    const std::map<Monomial, Complex>& terms() const { return terms_; }

private:
    std::map<Monomial, Complex> terms_;
};

inline std::array<double, kSymbols> symbol_values(const emconn::FieldSample& s)
{
    std::array<double, kSymbols> v{};
    for (int i = 0; i < 3; ++i) {
        v[static_cast<std::size_t>(i)] = s.e[i];
        v[static_cast<std::size_t>(3 + i)] = s.b[i];
        for (int a = 0; a < 4; ++a) {
            v[static_cast<std::size_t>(deriv_symbol(i, a))] = s.de[a][i];
            v[static_cast<std::size_t>(deriv_symbol(3 + i, a))] = s.db[a][i];
        }
    }
    return v;
}

// Component table as printed, one "i j k coefficient field" entry per line.
// "s" denotes i*sqrt(5/6).
inline const char* const kFullTable = R"(
1 0 0 -1 Ex      2 0 0 -1 Ey      3 0 0 -1 Ez
2 3 0 -1 Bx      3 1 0 -1 By      1 2 0 -1 Bz
3 0 2 1 Bx       1 0 3 1 By       2 0 1 1 Bz
0 3 2 -1/2 Bx    0 1 3 -1/2 By    0 2 1 -1/2 Bz
0 2 3 1/2 Bx     0 3 1 1/2 By     0 1 2 1/2 Bz
0 0 1 -1 Ex      0 0 2 -1 Ey      0 0 3 -1 Ez
0 1 0 -1 Ex      0 2 0 -1 Ey      0 3 0 -1 Ez
2 2 1 s Ex       3 3 2 s Ey       2 2 3 s Ez
2 1 2 s Ex       3 2 3 s Ey       2 3 2 s Ez
3 3 1 -s Ex      1 1 2 -s Ey      1 1 3 -s Ez
3 1 3 -s Ex      1 2 1 -s Ey      1 3 1 -s Ez
1 2 2 1+s Ex     2 3 3 1+s Ey     3 2 2 1+s Ez
1 3 3 1-s Ex     2 1 1 1-s Ey     3 1 1 1-s Ez
)";

// The six B-slots of the alternative placement replace rows 2-3 above.
inline const char* const kAlternativeBRows = R"(
2 0 3 -1 Bx      3 0 1 -1 By      1 0 2 -1 Bz
3 2 0 1 Bx       1 3 0 1 By       2 1 0 1 Bz
)";

struct TableEntry {
    int i, j, k;
    Complex coefficient;
    int field;
};

inline Complex parse_coefficient(const std::string& tok)
{
    const Complex is(0.0, std::sqrt(5.0 / 6.0));
    if (tok == "1") return 1.0;
    if (tok == "-1") return -1.0;
    if (tok == "1/2") return 0.5;
    if (tok == "-1/2") return -0.5;
    if (tok == "s") return is;
    if (tok == "-s") return -is;
    if (tok == "1+s") return 1.0 + is;
    if (tok == "1-s") return 1.0 - is;
    throw std::invalid_argument("bad coefficient " + tok);
}

inline std::vector<TableEntry> parse_table(const char* text)
{
    std::istringstream in(text);
    std::vector<TableEntry> out;
    TableEntry e{};
    std::string coeff, field;
    while (in >> e.i >> e.j >> e.k >> coeff >> field) {
        e.coefficient = parse_coefficient(coeff);
        e.field = field_symbol(field);
        out.push_back(e);
    }
    return out;
}

enum class Variant { Full, AlternativeFull };

inline std::vector<TableEntry> table_entries(Variant v)
{
    std::vector<TableEntry> rows = parse_table(kFullTable);
    if (v == Variant::AlternativeFull) {
        std::vector<TableEntry> kept;
        for (const auto& r : rows) {
            const bool lorentz_b = r.field >= 3 && r.i != 0;
            if (!lorentz_b) {
                kept.push_back(r);
            }
        }
        for (const auto& r : parse_table(kAlternativeBRows)) {
            kept.push_back(r);
        }
        rows = kept;
    }
    return rows;
}

/// Symbolic connection, curvature and Ricci tensor for a fixed kappa.
class SymbolicCurvature {
public:
    explicit SymbolicCurvature(double kappa, Variant v = Variant::Full)
    {
        for (const auto& r : table_entries(v)) {
            gamma_slot(r.i, r.j, r.k) += Poly::symbol(r.field, r.coefficient * kappa);
        }
        for (int a = 0; a < 4; ++a) {
            for (int n = 0; n < 64; ++n) {
                dgamma_[a][n] = gamma_[n].derivative(a);
            }
        }
        // R^i_jkl = d_k G^i_lj - d_l G^i_kj + sum_m (G^m_lj G^i_km - G^m_kj G^i_lm)
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                for (int k = 0; k < 4; ++k) {
                    for (int l = 0; l < 4; ++l) {
                        Poly r = dgamma(k, i, l, j) - dgamma(l, i, k, j);
                        for (int m = 0; m < 4; ++m) {
                            r += gamma(m, l, j) * gamma(i, k, m) - gamma(m, k, j) * gamma(i, l, m);
                        }
                        riemann_[idx4(i, j, k, l)] = r;
                    }
                }
            }
        }
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                Poly sum;
                for (int k = 0; k < 4; ++k) {
                    sum += riemann(k, j, k, i);
                }
                ricci_[4 * i + j] = sum;
            }
        }
    }

    const Poly& gamma(int i, int j, int k) const { return gamma_[16 * i + 4 * j + k]; }
    const Poly& riemann(int i, int j, int k, int l) const { return riemann_[idx4(i, j, k, l)]; }
    const Poly& ricci(int i, int j) const { return ricci_[4 * i + j]; }

    Poly trace() const { return ricci(0, 0) + ricci(1, 1) + ricci(2, 2) + ricci(3, 3); }

private:
    Poly& gamma_slot(int i, int j, int k) { return gamma_[16 * i + 4 * j + k]; }
    const Poly& dgamma(int a, int i, int j, int k) const { return dgamma_[a][16 * i + 4 * j + k]; }
    static int idx4(int i, int j, int k, int l) { return 64 * i + 16 * j + 4 * k + l; }

    std::array<Poly, 64> gamma_{};
    std::array<std::array<Poly, 64>, 4> dgamma_{};
    std::array<Poly, 256> riemann_{};
    std::array<Poly, 16> ricci_{};
};

}  // namespace oracle

#endif
