#include "hapto/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hapto {

namespace {

// Cash-Karp tableau
constexpr double B21 = 1.0 / 5.0;
constexpr double B31 = 3.0 / 40.0, B32 = 9.0 / 40.0;
constexpr double B41 = 3.0 / 10.0, B42 = -9.0 / 10.0, B43 = 6.0 / 5.0;
constexpr double B51 = -11.0 / 54.0, B52 = 5.0 / 2.0, B53 = -70.0 / 27.0, B54 = 35.0 / 27.0;
constexpr double B61 = 1631.0 / 55296.0, B62 = 175.0 / 512.0, B63 = 575.0 / 13824.0,
                 B64 = 44275.0 / 110592.0, B65 = 253.0 / 4096.0;
constexpr double C1 = 37.0 / 378.0, C3 = 250.0 / 621.0, C4 = 125.0 / 594.0, C6 = 512.0 / 1771.0;
constexpr double D1 = C1 - 2825.0 / 27648.0, D3 = C3 - 18575.0 / 48384.0,
                 D4 = C4 - 13525.0 / 55296.0, D5 = -277.0 / 14336.0, D6 = C6 - 0.25;

struct StepResult {
    double y;
    double err;
};

StepResult ck_step(const std::function<double(double, double)>& f, double t, double y, double h) {
    const double k1 = f(t, y);
    const double k2 = f(t + 0.2 * h, y + h * B21 * k1);
    const double k3 = f(t + 0.3 * h, y + h * (B31 * k1 + B32 * k2));
    const double k4 = f(t + 0.6 * h, y + h * (B41 * k1 + B42 * k2 + B43 * k3));
    const double k5 = f(t + h, y + h * (B51 * k1 + B52 * k2 + B53 * k3 + B54 * k4));
    const double k6 =
        f(t + 0.875 * h, y + h * (B61 * k1 + B62 * k2 + B63 * k3 + B64 * k4 + B65 * k5));
    StepResult r;
    r.y = y + h * (C1 * k1 + C3 * k3 + C4 * k4 + C6 * k6);
    r.err = std::abs(h * (D1 * k1 + D3 * k3 + D4 * k4 + D5 * k5 + D6 * k6));
    return r;
}

}  // namespace

double rk45_scalar(const std::function<double(double, double)>& f, double t0, double y0, double t1,
                   double rel_tol, double abs_tol) {
    if (t1 < t0) throw std::invalid_argument("rk45_scalar: t1 < t0");
    if (t1 == t0) return y0;

    double t = t0, y = y0;
    double h = std::min(1e-3 * std::max(1.0, t1 - t0), t1 - t0);
    const long max_steps = 50'000'000;
    for (long n = 0; n < max_steps; ++n) {
        if (t >= t1) return y;
        h = std::min(h, t1 - t);
        const StepResult r = ck_step(f, t, y, h);
        const double scale = abs_tol + rel_tol * std::max(std::abs(y), std::abs(r.y));
        if (r.err <= scale) {
            t += h;
            y = r.y;
            const double grow = (r.err > 0.0) ? 0.9 * std::pow(scale / r.err, 0.2) : 5.0;
            h *= std::clamp(grow, 0.2, 5.0);
        } else {
            h *= std::max(0.1, 0.9 * std::pow(scale / r.err, 0.25));
        }
        if (h < 1e-15 * std::max(1.0, std::abs(t)))
            throw std::runtime_error("rk45_scalar: step size underflow");
    }
    throw std::runtime_error("rk45_scalar: step limit exceeded");
}

std::vector<double> rk45_scalar_samples(const std::function<double(double, double)>& f, double t0,
                                        double y0, const std::vector<double>& times,
                                        double rel_tol, double abs_tol) {
    std::vector<double> out;
    out.reserve(times.size());
    double t = t0, y = y0;
    for (double target : times) {
        if (target < t)
            throw std::invalid_argument("rk45_scalar_samples: times must be nondecreasing");
        if (target > t) {
            y = rk45_scalar(f, t, y, target, rel_tol, abs_tol);
            t = target;
        }
        out.push_back(y);
    }
    return out;
}

}  // namespace hapto
