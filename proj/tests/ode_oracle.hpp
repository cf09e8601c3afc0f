// Test-side reference integrator for the spatially homogeneous subsystem
//   u' = -rho u z,  v' = -(u+w) v,  w' = -w + u z,  z' = -z - u z + beta w.
// Fixed-step classical RK4; independent of every solver in the library.
#pragma once

#include <array>
#include <cmath>

namespace oracle {

using Vec4 = std::array<double, 4>;  // (u, v, w, z)

inline Vec4 rhs(const Vec4& y, double beta, double rho) {
    const double u = y[0], v = y[1], w = y[2], z = y[3];
    return {-rho * u * z, -(u + w) * v, -w + u * z, -z - u * z + beta * w};
}

inline Vec4 rk4_step(const Vec4& y, double h, double beta, double rho) {
    auto axpy = [](const Vec4& a, double s, const Vec4& b) {
        Vec4 r;
        for (int i = 0; i < 4; ++i) r[i] = a[i] + s * b[i];
        return r;
    };
    const Vec4 k1 = rhs(y, beta, rho);
    const Vec4 k2 = rhs(axpy(y, 0.5 * h, k1), beta, rho);
    const Vec4 k3 = rhs(axpy(y, 0.5 * h, k2), beta, rho);
    const Vec4 k4 = rhs(axpy(y, h, k3), beta, rho);
    Vec4 r;
    for (int i = 0; i < 4; ++i)
        r[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return r;
}

inline Vec4 integrate(Vec4 y, double t_end, double h, double beta, double rho) {
    double t = 0.0;
    while (t < t_end - 1e-14) {
        const double step = std::min(h, t_end - t);
        y = rk4_step(y, step, beta, rho);
        t += step;
    }
    return y;
}

}  // namespace oracle
