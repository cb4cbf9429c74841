#ifndef EMCONN_TYPES_HPP
#define EMCONN_TYPES_HPP

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace emconn {

using CScalar = std::complex<double>;

/// Speed of light in cm/s (Gaussian units).
inline constexpr double kSpeedOfLight = 2.99792458e10;

inline constexpr double kPi = 3.14159265358979323846;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A field model was evaluated where it is not defined (e.g. a point charge at its own location).
class SingularityError : public Error {
public:
    using Error::Error;
};

/// Real 3-vector. Holds E and B in Gaussian units, or spatial velocities.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    constexpr Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
    friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
    friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
    friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
    friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

constexpr double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline bool is_finite(const Vec3& a)
{
    return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}

/// Point in (x0 = c t, x, y, z), all lengths.
struct SpacetimePoint {
    std::array<double, 4> x{};

    constexpr double operator[](int a) const { return x[static_cast<std::size_t>(a)]; }
    constexpr double& operator[](int a) { return x[static_cast<std::size_t>(a)]; }

    constexpr Vec3 spatial() const { return {x[1], x[2], x[3]}; }

    friend constexpr bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
};

inline bool is_finite(const SpacetimePoint& p)
{
    for (double v : p.x) {
        if (!std::isfinite(v)) {
            return false;
        }
    }
    return true;
}

/// Displaces one coordinate of a point.
constexpr SpacetimePoint shifted(SpacetimePoint p, int axis, double delta)
{
    p[axis] += delta;
    return p;
}

std::string to_string(const Vec3& v);
std::string to_string(const SpacetimePoint& p);

}  // namespace emconn

#endif
