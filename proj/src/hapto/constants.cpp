#include "hapto/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hapto {

namespace {

// largest e with pred true on (0, e], assuming pred(lo_probe) is true.
// Scan guards against non-monotone dips, then bisection sharpens the edge.
template <typename Pred>
double scan_bisect(Pred&& pred, double upper, int scan_points, double rel_tol) {
    double lo = 0.0, hi = 0.0;
    for (int k = 1; k <= scan_points; ++k) {
        const double e = upper * static_cast<double>(k) / scan_points;
        if (!pred(e)) {
            hi = e;
            break;
        }
        lo = e;
    }
    if (hi == 0.0) return upper;  // admissible everywhere
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (pred(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

std::pair<double, double> k1_delta(double beta, double gamma) {
    if (!(beta > 0.0)) throw std::domain_error("k1_delta: beta must be > 0");
    if (!(gamma > 0.0)) throw std::domain_error("k1_delta: gamma must be > 0");
    if (beta > 1.0 && !(gamma < 1.0 / (beta - 1.0)))
        throw std::domain_error("k1_delta: gamma must satisfy gamma < 1/(beta-1)");

    const double K1 = 0.5 * (gamma + (gamma + 1.0) / beta);
    // (K1 - gamma)/K1 == 1 - gamma/K1, written so the reference case
    // (beta, gamma) = (2, 1/2) evaluates without intermediate rounding
    const double delta =
        0.5 * std::min({(K1 - gamma) / K1, gamma + 1.0 - beta * K1, 1.0});
    return {K1, delta};
}

double eps_star(double beta, double gamma) {
    const auto [K1, delta] = k1_delta(beta, gamma);
    const double K2 = std::max(1.0, 1.0 / K1);
    const double c1 = 2.0 * K2 / delta + 1.0;

    auto admissible = [&](double e) {
        const double lhs = (gamma - e) * std::exp(-c1 * e);
        return lhs >= gamma - (c1 * gamma + 2.0) * e && lhs >= 0.5 * gamma;
    };
    return scan_bisect(admissible, gamma, 200000, 1e-10);
}

double eps_2star(double gamma, double A) {
    if (!(gamma > 0.0) || !(A > 0.0))
        throw std::domain_error("eps_2star: gamma and A must be > 0");
    const double c1 = 16.0 * gamma + 72.0 * A + 1.0;
    const double ln2 = std::log(2.0);
    return std::min({ln2, gamma / c1, gamma * ln2 / (2.0 * A)});
}

double eps_3star(double beta, double gamma, double M) {
    if (!(M > 0.0)) throw std::domain_error("eps_3star: M must be > 0");
    const auto [K1, delta] = k1_delta(beta, gamma);
    const double K2 = std::max(1.0, 1.0 / K1);
    const double c1 = 16.0 * gamma + 72.0 * K1 * K2 * M + 1.0;
    const double c2 = (2.0 * K2 / delta) * gamma + gamma + 2.0;

    auto admissible = [&](double e) {
        return (gamma + c1 * e) * std::exp(e) <= K1 * (1.0 - delta) &&
               beta * K1 <= gamma + 1.0 - c2 * e - delta;
    };
    // at e -> 0 the conjunction reduces to the strict K1 bracketing, so a
    // positive threshold must exist
    if (!admissible(1e-12))
        throw std::logic_error("eps_3star: no admissible eps1 despite strict K1 bracketing");
    const double eps1 = scan_bisect(admissible, 1.0, 200000, 1e-12);
    return std::min({eps1, eps_star(beta, gamma), eps_2star(gamma, K1 * K2 * M)});
}

StabilityConstants compute_constants(double beta, double gamma, double M) {
    StabilityConstants k;
    k.beta = beta;
    k.gamma = gamma;
    k.M = M;
    const auto [K1, delta] = k1_delta(beta, gamma);
    k.K1 = K1;
    k.delta = delta;
    k.K2 = std::max(1.0, 1.0 / K1);
    k.c2 = (2.0 * k.K2 / delta) * gamma + gamma + 2.0;
    k.eps_star = eps_star(beta, gamma);
    k.eps_2star = eps_2star(gamma, K1 * k.K2 * M);
    k.eps_3star = eps_3star(beta, gamma, M);
    return k;
}

double u_pointwise_floor(double a0_min, double eps, const StabilityConstants& k) {
    if (!(a0_min > 0.0)) throw std::domain_error("u_pointwise_floor: a0_min must be > 0");
    return a0_min * std::exp(-2.0 * k.K2 * eps / k.delta);
}

}  // namespace hapto
