#pragma once

#include <string>
#include <vector>

#include "hapto/constants.hpp"
#include "hapto/envelope.hpp"
#include "hapto/stepper.hpp"

namespace hapto {

/// One evaluated inequality at one recorded time. `bound` is the raw theory
/// bound (no slack); `margin` includes the discretization slack and is
/// nonnegative iff the check passes:
///   upper bounds: margin = bound + slack - observed
///   lower bounds: margin = observed - bound + slack
struct BoundSample {
    double t = 0.0;
    std::string bound_id;
    double observed = 0.0;
    double bound = 0.0;
    double margin = 0.0;
};

struct BoundReport {
    /// Largest recorded time such that no inequality is violated at or
    /// before it (prefix semantics; 0 when the first record already fails).
    double horizon_verified = 0.0;
    std::vector<BoundSample> samples;
    std::vector<BoundSample> violations;

    bool clean() const { return violations.empty(); }
    const BoundSample* first_violation() const {
        return violations.empty() ? nullptr : &violations.front();
    }
};

struct VerifySettings {
    double c_tol = 10.0;  // slack = c_tol * (dx^2 + dt)
    double dx = 0.0;
    double dt = 0.0;
    double a0_min = 0.0;  // min over cells of u0 e^{-v0}; 0 disables the floor check
};

/// Evaluates, at every recorded time, the six proved inequalities
///   u >= gamma - c2 eps                      (u_lower)
///   v <= eps e^{-gamma t/2}                  (v_decay)
///   w <= K1 K2 min{eps/rho, M} e^{-delta t}  (w_envelope)
///   z <= K2 min{eps/rho, M} e^{-delta t}     (z_envelope)
///   rho ||z|| < 2 K2 eps e^{-delta t}        (s_condition)
///   sup a <= phi(t)                          (a_comparison)
/// plus, when a0_min > 0, the auxiliary floor u >= a0_min e^{-2 K2 eps/delta}
/// (u_floor), each with additive slack c_tol*(dx^2 + dt). min{eps/rho, M} is
/// read as M when rho = 0. Violations are data, not errors.
BoundReport verify_bounds(const std::vector<DiagRow>& rows, const StabilityConstants& k,
                          const Envelope& env, double rho, const VerifySettings& vs);

}  // namespace hapto
