#include "hapto/envelope.hpp"

#include <algorithm>
#include <stdexcept>

#include "hapto/phi.hpp"

namespace hapto {

double Envelope::a_envelope(double t) const { return phi_closed(t, gamma, A, eps); }

Envelope build_envelope(const StabilityConstants& k, double w0_norm, double z0_norm, double eps,
                        double rho) {
    if (w0_norm < 0.0 || z0_norm < 0.0)
        throw std::invalid_argument("build_envelope: norms must be nonnegative");
    if (!(eps < k.eps_3star))
        throw std::domain_error("build_envelope: eps must be strictly below eps_3star");
    const double cap = (rho > 0.0) ? std::min(eps / rho, k.M) : k.M;
    if (!(w0_norm < cap) || !(z0_norm < cap))
        throw std::domain_error("build_envelope: initial norms violate the smallness hypotheses");

    Envelope env;
    env.eps = eps;
    env.gamma = k.gamma;
    env.delta = k.delta;
    env.K1 = k.K1;
    env.K2 = k.K2;
    env.B = std::max(z0_norm, w0_norm / k.K1);
    env.A = k.K1 * env.B;
    env.c1_env = 16.0 * k.gamma + 72.0 * env.A + 1.0;
    env.degenerate = (w0_norm == 0.0 || z0_norm == 0.0);
    return env;
}

}  // namespace hapto
