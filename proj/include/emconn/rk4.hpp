#ifndef EMCONN_RK4_HPP
#define EMCONN_RK4_HPP

#include <array>
#include <cstddef>

namespace emconn {

/// One classical fourth-order Runge-Kutta step of y' = f(y) with step h.
template <std::size_t N, class F>
std::array<double, N> rk4_step(const std::array<double, N>& y, double h, F&& f)
{
    auto axpy = [](const std::array<double, N>& base, double a, const std::array<double, N>& k) {
        std::array<double, N> out;
        for (std::size_t n = 0; n < N; ++n) {
            out[n] = base[n] + a * k[n];
        }
        return out;
    };
    const std::array<double, N> k1 = f(y);
    const std::array<double, N> k2 = f(axpy(y, 0.5 * h, k1));
    const std::array<double, N> k3 = f(axpy(y, 0.5 * h, k2));
    const std::array<double, N> k4 = f(axpy(y, h, k3));
    std::array<double, N> out;
    for (std::size_t n = 0; n < N; ++n) {
        out[n] = y[n] + h / 6.0 * (k1[n] + 2.0 * (k2[n] + k3[n]) + k4[n]);
    }
    return out;
}

}  // namespace emconn

#endif
