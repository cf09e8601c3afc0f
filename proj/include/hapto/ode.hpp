#pragma once

#include <functional>
#include <vector>

namespace hapto {

/// Adaptive Cash-Karp RK45 for a scalar ODE y' = f(t, y).
/// Integrates from t0 to t1 (t1 >= t0) with embedded error control.
double rk45_scalar(const std::function<double(double, double)>& f, double t0, double y0,
                   double t1, double rel_tol = 1e-10, double abs_tol = 1e-13);

/// Integrates the same ODE once and returns y at each requested time.
/// Times must be nondecreasing, the first >= t0.
std::vector<double> rk45_scalar_samples(const std::function<double(double, double)>& f, double t0,
                                        double y0, const std::vector<double>& times,
                                        double rel_tol = 1e-10, double abs_tol = 1e-13);

}  // namespace hapto
