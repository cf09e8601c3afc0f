#include "hapto/phi.hpp"

#include <cmath>
#include <stdexcept>

#include "hapto/ode.hpp"
#include "hapto/quadrature.hpp"

namespace hapto {

namespace {

void validate(double gamma, double A, double eps) {
    // A = 0 is the degenerate envelope (w0 = z0 = 0); the formulas still hold
    if (!(gamma > 0.0) || !(A >= 0.0)) throw std::domain_error("phi: gamma must be > 0, A >= 0");
    if (!(eps > 0.0)) throw std::domain_error("phi: eps must be > 0");
}

}  // namespace

double phi_closed(double t, double gamma, double A, double eps) {
    validate(gamma, A, eps);
    if (t < 0.0) throw std::domain_error("phi_closed: t must be >= 0");

    // int_0^t e^{-gamma s/2} ds = (2/gamma)(1 - e^{-gamma t/2})
    // int_s^t e^{-gamma sig/2} dsig = (2/gamma)(e^{-gamma s/2} - e^{-gamma t/2})
    const double decay_t = std::exp(-0.5 * gamma * t);
    const double k = 2.0 * A * eps / gamma;
    const double term1 = std::exp(-k * (1.0 - decay_t)) / (gamma + eps);

    auto integrand = [&](double s) {
        const double decay_s = std::exp(-0.5 * gamma * s);
        return std::exp(-k * (decay_s - decay_t)) * decay_s;
    };
    const double outer = adaptive_simpson(integrand, 0.0, t, 1e-12);
    const double recip = term1 - eps * std::exp(eps) * outer;
    if (!(recip > 0.0)) throw std::domain_error("phi_closed: envelope breakdown (1/phi <= 0)");
    return 1.0 / recip;
}

double phi_ode(double t, double gamma, double A, double eps, double rel_tol) {
    validate(gamma, A, eps);
    auto rhs = [=](double s, double y) {
        const double decay = std::exp(-0.5 * gamma * s);
        return eps * std::exp(eps) * decay * y * y + A * eps * decay * y;
    };
    return rk45_scalar(rhs, 0.0, gamma + eps, t, rel_tol, 1e-13);
}

std::vector<double> phi_ode_samples(std::span<const double> times, double gamma, double A,
                                    double eps, double rel_tol) {
    validate(gamma, A, eps);
    auto rhs = [=](double s, double y) {
        const double decay = std::exp(-0.5 * gamma * s);
        return eps * std::exp(eps) * decay * y * y + A * eps * decay * y;
    };
    return rk45_scalar_samples(rhs, 0.0, gamma + eps,
                               std::vector<double>(times.begin(), times.end()), rel_tol, 1e-13);
}

bool phi_bound_check(double gamma, double A, double eps, std::span<const double> t_samples) {
    validate(gamma, A, eps);
    const double c1 = 16.0 * gamma + 72.0 * A + 1.0;
    const double bound = gamma + c1 * eps;

    auto ok = [&](double t) { return phi_closed(t, gamma, A, eps) <= bound; };

    for (double t : t_samples)
        if (!ok(t)) return false;

    // log-spaced sweep up to the tail point where e^{-gamma t/2} ~ 1e-18;
    // phi is nondecreasing, so the tail value is the supremum
    const double t_tail = 84.0 / gamma;
    const double t_lo = 1e-3;
    const int n = 200;
    for (int i = 0; i <= n; ++i) {
        const double t = t_lo * std::pow(t_tail / t_lo, static_cast<double>(i) / n);
        if (!ok(t)) return false;
    }
    return ok(0.0) && ok(t_tail);
}

}  // namespace hapto
