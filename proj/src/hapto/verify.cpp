#include "hapto/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hapto/phi.hpp"

namespace hapto {

BoundReport verify_bounds(const std::vector<DiagRow>& rows, const StabilityConstants& k,
                          const Envelope& env, double rho, const VerifySettings& vs) {
    BoundReport rep;
    const double slack = vs.c_tol * (vs.dx * vs.dx + vs.dt);
    const double cap = (rho > 0.0) ? std::min(env.eps / rho, k.M) : k.M;
    const double u_floor =
        (vs.a0_min > 0.0) ? u_pointwise_floor(vs.a0_min, env.eps, k) : 0.0;

    bool prefix_clean = true;
    for (const DiagRow& r : rows) {
        const double decay_d = std::exp(-k.delta * r.t);
        const double phi_t = phi_closed(r.t, env.gamma, env.A, env.eps);

        BoundSample checks[7];
        int n = 0;
        auto upper = [&](const char* id, double observed, double bound) {
            checks[n++] = {r.t, id, observed, bound, bound + slack - observed};
        };
        auto lower = [&](const char* id, double observed, double bound) {
            checks[n++] = {r.t, id, observed, bound, observed - bound + slack};
        };

        lower("u_lower", r.min_u, k.gamma - k.c2 * env.eps);
        upper("v_decay", r.sup_v, env.eps * std::exp(-0.5 * k.gamma * r.t));
        upper("w_envelope", r.sup_w, k.K1 * k.K2 * cap * decay_d);
        upper("z_envelope", r.sup_z, k.K2 * cap * decay_d);
        upper("s_condition", rho * r.sup_z, 2.0 * k.K2 * env.eps * decay_d);
        upper("a_comparison", r.sup_a, phi_t);
        if (u_floor > 0.0) lower("u_floor", r.min_u, u_floor);

        bool row_clean = true;
        for (int i = 0; i < n; ++i) {
            rep.samples.push_back(checks[i]);
            if (checks[i].margin < 0.0) {
                rep.violations.push_back(checks[i]);
                row_clean = false;
            }
        }
        if (row_clean && prefix_clean)
            rep.horizon_verified = r.t;
        else
            prefix_clean = false;
    }
    return rep;
}

}  // namespace hapto
