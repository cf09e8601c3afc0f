#pragma once

#include <span>
#include <vector>

namespace hapto {

/// phi(t) from the closed-form representation of the Bernoulli problem
///   phi' = eps e^eps e^{-gamma t/2} phi^2 + A eps e^{-gamma t/2} phi,
///   phi(0) = gamma + eps.
/// The inner exponential integrals are evaluated analytically, the outer
/// s-integral by adaptive Simpson quadrature to 1e-12 absolute. Throws
/// std::domain_error if the reciprocal becomes nonpositive (envelope
/// breakdown; only possible for eps beyond its threshold).
double phi_closed(double t, double gamma, double A, double eps);

/// Same phi by adaptive RK45 integration of the ODE. Independent route used
/// as the oracle counterpart of phi_closed.
double phi_ode(double t, double gamma, double A, double eps, double rel_tol = 1e-10);

/// One integration sweep returning phi at each requested time (nondecreasing).
std::vector<double> phi_ode_samples(std::span<const double> times, double gamma, double A,
                                    double eps, double rel_tol = 1e-10);

/// True iff phi(t) <= gamma + (16 gamma + 72 A + 1) eps on a dense log-spaced
/// grid, at the supplied samples, and at the monotone-tail limit point.
bool phi_bound_check(double gamma, double A, double eps, std::span<const double> t_samples);

}  // namespace hapto
