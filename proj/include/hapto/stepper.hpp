#pragma once

#include <string>
#include <vector>

#include "hapto/model.hpp"

namespace hapto {

/// One diagnostics record. The CSV serialization (io.hpp) emits exactly the
/// columns t, min_u, max_u, sup_u, sup_v, sup_w, sup_z, int_u, int_z,
/// gradv4, sup_a in that order; the remaining fields are in-memory extras.
struct DiagRow {
    double t = 0.0;
    double min_u = 0.0, max_u = 0.0, sup_u = 0.0;
    double min_v = 0.0, max_v = 0.0, sup_v = 0.0;
    double min_w = 0.0, max_w = 0.0, sup_w = 0.0;
    double min_z = 0.0, max_z = 0.0, sup_z = 0.0;
    double int_u = 0.0;
    double int_z = 0.0;
    double gradv4 = 0.0;
    double sup_a = 0.0;  // sup of a = u e^{-v}
};

DiagRow diagnostics(const State& state);

/// Advances one IMEX step:
///   dt = min(dt_max, cfl*min(dx,dy)/max|face velocity of v|, t_end - t)
///   1. v: pointwise-exact decay  v <- v exp(-(u+w) dt)
///   2. u: explicit upwind taxis + reaction, implicit diffusion
///   3. w: implicit diffusion+decay, explicit source u^n z^n
///   4. z: implicit diffusion+decay+absorption (frozen u^n), source beta w^{n+1}
/// Throws SolverError on linear-solver non-convergence or a non-finite state.
State step(const State& state, const ModelParams& params, const StepControl& ctl);

struct Trajectory {
    std::vector<DiagRow> rows;
    std::vector<State> frames;  // filled only when keep_frames was set
    State final_state;
    bool aborted = false;
    std::string abort_reason;

    double end_time() const { return rows.empty() ? 0.0 : rows.back().t; }
};

/// Repeated stepping until ctl.t_end with records every ctl.output_every
/// time units (dt is clamped so records land exactly on the boundaries).
/// Deterministic for fixed inputs. On a numerical abort the partial
/// trajectory is returned with aborted set.
Trajectory run(const State& initial, const ModelParams& params, const StepControl& ctl,
               bool keep_frames = false);

/// Discrete defect of d/dt int u = -rho int u z over one step:
/// |int u_after - int u_before + dt rho int(u_before z_before)|.
double mass_balance_residual(const State& before, const State& after, const ModelParams& params,
                             double dt);

}  // namespace hapto
