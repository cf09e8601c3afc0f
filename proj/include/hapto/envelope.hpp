#pragma once

#include <cmath>

#include "hapto/constants.hpp"

namespace hapto {

/// Supersolution triple dominating (a, w, z) inside the basin:
///   a <= phi(t),  w <= A e^{-delta t},  z <= B e^{-delta t},
/// with B = max{||z0||_inf, ||w0||_inf / K1} and A = K1 B.
struct Envelope {
    double eps = 0.0;
    double A = 0.0;
    double B = 0.0;
    double gamma = 0.0;
    double delta = 0.0;
    double K1 = 0.0;
    double K2 = 0.0;
    double c1_env = 0.0;      // 16 gamma + 72 A + 1
    bool degenerate = false;  // a norm was zero (w0 or z0 identically zero)

    double w_envelope(double t) const { return A * std::exp(-delta * t); }
    double z_envelope(double t) const { return B * std::exp(-delta * t); }
    /// phi(t); delegates to phi_closed.
    double a_envelope(double t) const;
};

/// Builds the triple from the initial sup norms. Validates the smallness
/// hypotheses: eps < eps_3star and both norms < min{eps/rho, M} (the min is
/// M when rho = 0). Zero norms are accepted but flagged degenerate.
Envelope build_envelope(const StabilityConstants& k, double w0_norm, double z0_norm, double eps,
                        double rho);

}  // namespace hapto
