#include "hapto/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hapto/linsolve.hpp"
#include "hapto/operators.hpp"

namespace hapto {

namespace {

// splitmix64, used only to turn the seed into mode signs
unsigned long long mix(unsigned long long& s) {
    s += 0x9e3779b97f4a7c15ull;
    unsigned long long z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

void check_finite(const State& s) {
    if (!s.u.all_finite() || !s.v.all_finite() || !s.w.all_finite() || !s.z.all_finite())
        throw SolverError("non-finite state at t=" + std::to_string(s.t));
}

}  // namespace

State initial_state(const Grid& grid, const InitSpec& spec) {
    if (spec.amp_u < 0 || spec.amp_v < 0 || spec.amp_w < 0 || spec.amp_z < 0)
        throw std::invalid_argument("initial_state: amplitudes must be nonnegative");
    if (spec.gamma < 0) throw std::invalid_argument("initial_state: gamma must be nonnegative");

    State s;
    s.t = 0.0;
    if (spec.homogeneous) {
        s.u = Field(grid, spec.gamma);
        s.v = Field(grid, spec.amp_v);
        s.w = Field(grid, spec.amp_w);
        s.z = Field(grid, spec.amp_z);
        return s;
    }

    unsigned long long rng = spec.seed;
    const double sign_u = (mix(rng) & 1ull) ? -1.0 : 1.0;
    const double sign_w = (mix(rng) & 1ull) ? -1.0 : 1.0;

    s.u = Field(grid);
    s.v = Field(grid);
    s.w = Field(grid);
    s.z = Field(grid);
    const double pi = std::numbers::pi;
    for (int j = 0; j < grid.ny; ++j) {
        const double y = grid.y_center(j);
        const double cy = (grid.dim == 2) ? std::cos(pi * spec.mode_ky * y / grid.ly) : 1.0;
        const double by = (grid.dim == 2) ? 0.5 * (1.0 + std::cos(pi * y / grid.ly)) : 1.0;
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x_center(i);
            const double cx = std::cos(pi * spec.mode_kx * x / grid.lx);
            const double bx = 0.5 * (1.0 + std::cos(pi * x / grid.lx));
            const double bwx = 0.5 * (1.0 + sign_w * std::cos(pi * x / grid.lx));
            s.u.at(i, j) = spec.gamma + spec.amp_u * sign_u * cx * cy;
            s.v.at(i, j) = spec.amp_v * bx * by;
            s.w.at(i, j) = spec.amp_w * bwx * by;
            s.z.at(i, j) = spec.amp_z * bx * by;
        }
    }
    if (field_norms(s.u).min < 0.0)
        throw std::invalid_argument("initial_state: amplitude makes u0 negative");
    return s;
}

DiagRow diagnostics(const State& s) {
    DiagRow r;
    r.t = s.t;
    const FieldNorms nu = field_norms(s.u);
    const FieldNorms nv = field_norms(s.v);
    const FieldNorms nw = field_norms(s.w);
    const FieldNorms nz = field_norms(s.z);
    r.min_u = nu.min; r.max_u = nu.max; r.sup_u = nu.sup;
    r.min_v = nv.min; r.max_v = nv.max; r.sup_v = nv.sup;
    r.min_w = nw.min; r.max_w = nw.max; r.sup_w = nw.sup;
    r.min_z = nz.min; r.max_z = nz.max; r.sup_z = nz.sup;
    r.int_u = integrate(s.u);
    r.int_z = integrate(s.z);
    r.gradv4 = grad_quartic_norm(s.v);
    double sup_a = 0.0;
    for (int k = 0; k < s.u.size(); ++k)
        sup_a = std::max(sup_a, std::abs(s.u[k] * std::exp(-s.v[k])));
    r.sup_a = sup_a;
    return r;
}

State step(const State& s, const ModelParams& p, const StepControl& ctl) {
    p.validate();
    ctl.validate();
    const Grid& g = s.grid();

    const double remaining = ctl.t_end - s.t;
    if (!(remaining > 0.0)) throw std::invalid_argument("step: t is already at or past t_end");

    double dt = std::min(ctl.dt_max, remaining);
    const double vmax = max_face_speed(s.v);
    if (vmax > 0.0) {
        const double h = (g.dim == 2) ? std::min(g.dx, g.dy) : g.dx;
        dt = std::min(dt, ctl.cfl * h / vmax);
    }

    State out;
    out.t = s.t + dt;

    // 1. ECM: pointwise linear ODE with frozen u^n + w^n, exact exponential
    Field v_new(g);
    for (int k = 0; k < g.cells(); ++k)
        v_new[k] = s.v[k] * std::exp(-(s.u[k] + s.w[k]) * dt);

    // 2. uninfected cells: explicit taxis (against updated v) and reaction,
    //    then implicit diffusion (I - dt Lap) u = u*
    Field adv = haptotaxis_divergence(s.u, v_new);
    Field ustar(g);
    for (int k = 0; k < g.cells(); ++k)
        ustar[k] = s.u[k] + dt * (adv[k] - p.rho * s.u[k] * s.z[k]);
    out.u = solve_helmholtz(ustar, 1.0, dt, ctl.lin_tol);

    // 3. infected cells: ((1+dt) I - dt d_w Lap) w = w^n + dt u^n z^n
    Field wrhs(g);
    for (int k = 0; k < g.cells(); ++k) wrhs[k] = s.w[k] + dt * s.u[k] * s.z[k];
    out.w = solve_helmholtz(wrhs, 1.0 + dt, dt * p.d_w, ctl.lin_tol);

    // 4. virions: ((1 + dt(1+u^n)) I - dt d_z Lap) z = z^n + dt beta w^{n+1}
    Field zc(g), zrhs(g);
    for (int k = 0; k < g.cells(); ++k) {
        zc[k] = 1.0 + dt * (1.0 + s.u[k]);
        zrhs[k] = s.z[k] + dt * p.beta * out.w[k];
    }
    out.z = solve_helmholtz(zrhs, zc, dt * p.d_z, ctl.lin_tol);

    out.v = std::move(v_new);
    check_finite(out);
    return out;
}

Trajectory run(const State& initial, const ModelParams& p, const StepControl& ctl,
               bool keep_frames) {
    p.validate();
    ctl.validate();

    Trajectory traj;
    State state = initial;
    check_finite(state);
    traj.rows.push_back(diagnostics(state));
    if (keep_frames) traj.frames.push_back(state);

    const double t_end = ctl.t_end;
    const double every = (ctl.output_every > 0.0) ? ctl.output_every : t_end;
    const double snap_tol = 1e-12 * std::max(1.0, std::abs(t_end));

    double t_next = std::min(initial.t + every, t_end);
    while (state.t < t_end - snap_tol) {
        StepControl seg = ctl;
        seg.t_end = t_next;  // records land exactly on the output boundaries
        try {
            state = step(state, p, seg);
        } catch (const SolverError& e) {
            traj.aborted = true;
            traj.abort_reason = e.what();
            break;
        }
        if (state.t >= t_next - snap_tol) {
            state.t = t_next;
            traj.rows.push_back(diagnostics(state));
            if (keep_frames) traj.frames.push_back(state);
            t_next = std::min(t_next + every, t_end);
        }
    }
    traj.final_state = state;
    return traj;
}

double mass_balance_residual(const State& before, const State& after, const ModelParams& p,
                             double dt) {
    Field uz(before.grid());
    for (int k = 0; k < uz.size(); ++k) uz[k] = before.u[k] * before.z[k];
    return std::abs(integrate(after.u) - integrate(before.u) + dt * p.rho * integrate(uz));
}

}  // namespace hapto
