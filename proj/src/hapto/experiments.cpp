#include "hapto/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hapto/linsolve.hpp"
#include "hapto/operators.hpp"

namespace hapto {

namespace {

double nan_rate() { return std::numeric_limits<double>::quiet_NaN(); }

double mean(const Field& f) { return integrate(f) / f.grid().domain_measure(); }

double try_fit(const std::vector<DiagRow>& rows, double DiagRow::* col, double t1, double t2) {
    std::vector<double> ts, vs;
    ts.reserve(rows.size());
    vs.reserve(rows.size());
    for (const DiagRow& r : rows) {
        ts.push_back(r.t);
        vs.push_back(r.*col);
    }
    try {
        return fit_decay(ts, vs, t1, t2);
    } catch (const std::domain_error&) {
        return nan_rate();
    }
}

bool strictly_increasing(std::span<const double> v) {
    if (v.size() < 2) return false;
    for (size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

GrowthReport growth_probe_impl(const ExperimentConfig& cfg) {
    InitSpec spec;
    spec.homogeneous = true;
    spec.gamma = cfg.u0_level;
    spec.amp_v = cfg.v0_level;
    spec.amp_w = cfg.w0_level;
    spec.amp_z = cfg.z0_level;

    const State s0 = initial_state(cfg.make_grid(), spec);
    Trajectory traj = run(s0, cfg.params, cfg.ctl, /*keep_frames=*/true);

    GrowthReport rep;
    for (const State& s : traj.frames) {
        rep.times.push_back(s.t);
        rep.int_w.push_back(integrate(s.w));
        rep.int_z.push_back(integrate(s.z));
    }

    // final half of the run
    const double t_half = 0.5 * traj.end_time();
    size_t start = 0;
    while (start < rep.times.size() && rep.times[start] < t_half) ++start;
    if (start > 0) --start;  // include the sample straddling the midpoint
    rep.w_increasing = strictly_increasing(
        std::span<const double>(rep.int_w).subspan(start));
    rep.z_increasing = strictly_increasing(
        std::span<const double>(rep.int_z).subspan(start));
    rep.growth_indicator = rep.w_increasing && rep.z_increasing;
    rep.trajectory = std::move(traj);
    return rep;
}

}  // namespace

double fit_decay(std::span<const double> times, std::span<const double> values, double t1,
                 double t2) {
    if (times.size() != values.size())
        throw std::invalid_argument("fit_decay: length mismatch");
    double st = 0, sy = 0, stt = 0, sty = 0;
    int n = 0;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t1 || times[i] > t2) continue;
        if (!(values[i] > 0.0))
            throw std::domain_error("fit_decay: nonpositive value in window");
        const double y = std::log(values[i]);
        st += times[i];
        sy += y;
        stt += times[i] * times[i];
        sty += times[i] * y;
        ++n;
    }
    if (n < 10) throw std::domain_error("fit_decay: window has fewer than 10 points");
    const double det = n * stt - st * st;
    if (!(std::abs(det) > 0.0)) throw std::domain_error("fit_decay: degenerate window");
    return -(n * sty - st * sy) / det;
}

std::optional<double> predict_u_infty(const Field& u0, double rho) {
    if (rho > 0.0) return std::nullopt;
    return mean(u0);
}

InitSpec stability_init_spec(const ExperimentConfig& cfg, const StabilityConstants& k,
                             double eps) {
    const double wz_cap = (cfg.params.rho > 0.0) ? std::min(eps / cfg.params.rho, k.M) : k.M;
    InitSpec spec;
    spec.gamma = cfg.gamma;
    spec.amp_u = cfg.amp_u_frac * eps;
    spec.amp_v = cfg.amp_v_frac * eps;
    spec.amp_w = cfg.amp_w_frac * wz_cap;
    spec.amp_z = cfg.amp_z_frac * wz_cap;
    spec.mode_kx = cfg.mode_kx;
    spec.mode_ky = cfg.mode_ky;
    spec.seed = cfg.seed;
    return spec;
}

ConvergenceReport run_stability(const ExperimentConfig& cfg) {
    if (!(cfg.eps_fraction > 0.0 && cfg.eps_fraction < 1.0))
        throw std::invalid_argument("run_stability: eps_fraction must be in (0,1)");

    ConvergenceReport rep;
    rep.constants = compute_constants(cfg.params.beta, cfg.gamma, cfg.M);
    rep.eps = cfg.eps_fraction * rep.constants.eps_3star;

    const Grid grid = cfg.make_grid();
    const State s0 = initial_state(grid, stability_init_spec(cfg, rep.constants, rep.eps));

    rep.mean_u0 = mean(s0.u);
    rep.u_infty_predicted = predict_u_infty(s0.u, cfg.params.rho);
    double a0_min = std::numeric_limits<double>::infinity();
    for (int k = 0; k < s0.u.size(); ++k)
        a0_min = std::min(a0_min, s0.u[k] * std::exp(-s0.v[k]));
    rep.a0_min = a0_min;

    rep.envelope = build_envelope(rep.constants, field_norms(s0.w).sup, field_norms(s0.z).sup,
                                  rep.eps, cfg.params.rho);

    rep.trajectory = run(s0, cfg.params, cfg.ctl, cfg.keep_frames);

    VerifySettings vs;
    vs.c_tol = cfg.c_tol;
    vs.dx = (grid.dim == 2) ? std::max(grid.dx, grid.dy) : grid.dx;
    vs.dt = cfg.ctl.dt_max;
    vs.a0_min = rep.a0_min;
    rep.bound_report =
        verify_bounds(rep.trajectory.rows, rep.constants, rep.envelope, cfg.params.rho, vs);

    const Field& u_final = rep.trajectory.final_state.u;
    rep.u_infty_est = mean(u_final);
    const auto& rows = rep.trajectory.rows;
    if (rows.size() >= 2) {
        const double measure = grid.domain_measure();
        rep.u_infty_drift =
            std::abs(rows.back().int_u - rows[rows.size() - 2].int_u) / measure;
    }

    const double t_end = rep.trajectory.end_time();
    const double t1 = (1.0 - cfg.fit_window_frac) * t_end;
    rep.rate_v = try_fit(rows, &DiagRow::sup_v, t1, t_end);
    rep.rate_w = try_fit(rows, &DiagRow::sup_w, t1, t_end);
    rep.rate_z = try_fit(rows, &DiagRow::sup_z, t1, t_end);
    return rep;
}

GrowthReport run_blowup_probe(const ExperimentConfig& cfg) {
    if (!(cfg.params.beta > 1.0))
        throw std::domain_error("run_blowup_probe: requires beta > 1");
    if (cfg.params.rho != 0.0) throw std::domain_error("run_blowup_probe: requires rho = 0");
    if (cfg.v0_level != 0.0) throw std::domain_error("run_blowup_probe: requires v0 = 0");
    if (!(cfg.u0_level > 1.0 / (cfg.params.beta - 1.0)))
        throw std::domain_error("run_blowup_probe: requires mean u0 > 1/(beta-1)");
    return growth_probe_impl(cfg);
}

GrowthReport run_growth_probe_unchecked(const ExperimentConfig& cfg) {
    return growth_probe_impl(cfg);
}

RefinementResult refinement_study(const ExperimentConfig& cfg, const std::vector<int>& nx_levels) {
    if (nx_levels.size() < 3)
        throw std::invalid_argument("refinement_study: needs at least 3 levels");
    for (size_t i = 1; i < nx_levels.size(); ++i)
        if (!(nx_levels[i] > nx_levels[i - 1]))
            throw std::invalid_argument("refinement_study: resolutions must strictly increase");

    // one solution per level, dt_max scaled with (dx/dx0)^2
    std::vector<Field> finals;
    const double dx0 = cfg.lx / nx_levels.front();
    for (int nx : nx_levels) {
        ExperimentConfig level = cfg;
        level.nx = nx;
        if (cfg.dim == 2) level.ny = std::max(4, (cfg.ny * nx) / cfg.nx);
        const double dx = cfg.lx / nx;
        level.ctl.dt_max = cfg.ctl.dt_max * (dx / dx0) * (dx / dx0);

        const State s0 = initial_state(level.make_grid(), cfg.raw_init_spec());
        Trajectory traj = run(s0, level.params, level.ctl, false);
        if (traj.aborted) throw SolverError("refinement_study: level aborted: " + traj.abort_reason);
        finals.push_back(traj.final_state.u);
    }

    // restrict the finer field to the coarser grid by cell averaging
    auto restrict_to = [](const Field& fine, const Grid& coarse) {
        const Grid& gf = fine.grid();
        if (gf.nx % coarse.nx != 0 || (coarse.dim == 2 && gf.ny % coarse.ny != 0))
            throw std::invalid_argument("refinement_study: levels must nest (integer ratio)");
        const int rx = gf.nx / coarse.nx;
        const int ry = (coarse.dim == 2) ? gf.ny / coarse.ny : 1;
        Field out(coarse);
        for (int j = 0; j < coarse.ny; ++j)
            for (int i = 0; i < coarse.nx; ++i) {
                double acc = 0.0;
                for (int jj = 0; jj < ry; ++jj)
                    for (int ii = 0; ii < rx; ++ii)
                        acc += fine.at(i * rx + ii, (coarse.dim == 2) ? j * ry + jj : 0);
                out.at(i, j) = acc / (rx * ry);
            }
        return out;
    };

    RefinementResult res;
    res.nx_levels = nx_levels;
    for (size_t k = 0; k + 1 < finals.size(); ++k) {
        const Grid& gc = finals[k].grid();
        const Field fine_on_coarse = restrict_to(finals[k + 1], gc);
        double err = 0.0;
        for (int c = 0; c < finals[k].size(); ++c)
            err = std::max(err, std::abs(fine_on_coarse[c] - finals[k][c]));
        res.errors.push_back(err);
    }
    for (size_t k = 0; k + 1 < res.errors.size(); ++k)
        res.orders.push_back(std::log2(res.errors[k] / res.errors[k + 1]));
    return res;
}

RefinementResult refinement_study(const ExperimentConfig& cfg, int levels) {
    std::vector<int> nx_levels;
    for (int k = 0; k < levels; ++k) nx_levels.push_back(cfg.nx << k);
    return refinement_study(cfg, nx_levels);
}

}  // namespace hapto
