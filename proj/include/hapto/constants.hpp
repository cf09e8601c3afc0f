#pragma once

#include <utility>

namespace hapto {

/// The constructive constant chain behind the basin-of-attraction result:
///   K1 = (gamma + (gamma+1)/beta)/2,
///   delta = min{1 - gamma/K1, gamma + 1 - beta K1, 1}/2,
///   K2 = max{1, 1/K1},   c2 = (2 K2/delta) gamma + gamma + 2,
/// and the three smallness thresholds eps_star, eps_2star(gamma, K1 K2 M),
/// eps_3star. Valid for beta > 0 and 0 < gamma < 1/(beta-1)_+.
struct StabilityConstants {
    double beta = 0.0;
    double gamma = 0.0;
    double M = 0.0;
    double K1 = 0.0;
    double delta = 0.0;
    double K2 = 0.0;
    double c2 = 0.0;
    double eps_star = 0.0;
    double eps_2star = 0.0;  // evaluated at A = K1 K2 M
    double eps_3star = 0.0;
};

/// (K1, delta) with both strict inequalities
///   gamma/(1-delta) < K1 < (gamma+1-delta)/beta
/// holding with positive margin. Throws std::domain_error when gamma lies
/// outside (0, 1/(beta-1)_+) or beta <= 0.
std::pair<double, double> k1_delta(double beta, double gamma);

/// Largest eps_hat <= gamma such that for every eps in (0, eps_hat]:
///   (gamma-eps) e^{-c1 eps} >= gamma - (c1 gamma + 2) eps   and
///   (gamma-eps) e^{-c1 eps} >= gamma/2,      c1 = 2 K2/delta + 1.
/// Scan plus bisection, relative tolerance 1e-10.
double eps_star(double beta, double gamma);

/// min{ln 2, gamma/c1, gamma ln 2/(2A)} with c1 = 16 gamma + 72 A + 1.
double eps_2star(double gamma, double A);

/// min{eps1, eps_star, eps_2star(gamma, K1 K2 M)} where eps1 is the largest
/// value in (0,1) with
///   (gamma + c1 eps1) e^{eps1}/(1-delta) <= K1 <= (gamma+1-c2 eps1-delta)/beta.
double eps_3star(double beta, double gamma, double M);

StabilityConstants compute_constants(double beta, double gamma, double M);

/// Pointwise floor for u from the initial minimum of a = u e^{-v}:
/// a0_min * exp(-2 K2 eps / delta).
double u_pointwise_floor(double a0_min, double eps, const StabilityConstants& k);

}  // namespace hapto
