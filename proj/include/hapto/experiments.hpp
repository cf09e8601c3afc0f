#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hapto/model.hpp"
#include "hapto/stepper.hpp"
#include "hapto/verify.hpp"

namespace hapto {

/// Everything an end-to-end study needs: model, theory inputs, grid,
/// stepping, initial-data construction, and post-processing knobs.
struct ExperimentConfig {
    ModelParams params;
    double gamma = 0.5;
    double M = 1.0;
    double eps_fraction = 0.8;  // fraction of eps_3star used as eps

    // initial amplitudes as fractions of the admissible thresholds
    double amp_u_frac = 0.9;
    double amp_v_frac = 0.9;
    double amp_w_frac = 0.9;
    double amp_z_frac = 0.9;
    int mode_kx = 1;
    int mode_ky = 1;
    unsigned long seed = 0;

    // raw initial data: absolute cosine amplitudes around the gamma level, or
    // homogeneous levels; used by raw runs, the growth probes (always
    // homogeneous) and refinement_study
    bool homogeneous_init = false;
    double amp_u = 0.0;
    double amp_v = 0.0;
    double amp_w = 0.0;
    double amp_z = 0.0;
    double u0_level = 2.0;
    double v0_level = 0.0;
    double w0_level = 0.01;
    double z0_level = 0.01;

    int dim = 1;
    int nx = 256;
    int ny = 64;
    double lx = 1.0;
    double ly = 1.0;

    StepControl ctl;
    double c_tol = 10.0;            // verify_bounds slack multiplier
    double fit_window_frac = 0.5;   // decay fits use the last fraction of the run
    bool keep_frames = false;

    Grid make_grid() const {
        return dim == 1 ? Grid::interval(nx, lx) : Grid::rectangle(nx, ny, lx, ly);
    }

    /// InitSpec from the raw fields (raw runs and refinement levels).
    InitSpec raw_init_spec() const {
        InitSpec spec;
        spec.homogeneous = homogeneous_init;
        if (homogeneous_init) {
            spec.gamma = u0_level;
            spec.amp_v = v0_level;
            spec.amp_w = w0_level;
            spec.amp_z = z0_level;
        } else {
            spec.gamma = gamma;
            spec.amp_u = amp_u;
            spec.amp_v = amp_v;
            spec.amp_w = amp_w;
            spec.amp_z = amp_z;
        }
        spec.mode_kx = mode_kx;
        spec.mode_ky = mode_ky;
        spec.seed = seed;
        return spec;
    }
};

struct ConvergenceReport {
    double u_infty_est = 0.0;                // spatial mean of u at the final frame
    std::optional<double> u_infty_predicted; // mean of u0 (rho = 0 only)
    double u_infty_drift = 0.0;              // |mean u(last) - mean u(prev)| error bar
    double rate_v = 0.0;                     // fitted decay rates; NaN when the fit
    double rate_w = 0.0;                     // is undefined on the window
    double rate_z = 0.0;
    double eps = 0.0;
    double mean_u0 = 0.0;
    double a0_min = 0.0;
    StabilityConstants constants;
    Envelope envelope;
    BoundReport bound_report;
    Trajectory trajectory;
};

/// Basin-of-attraction study: builds initial data strictly inside the
/// hypotheses at eps = eps_fraction * eps_3star, integrates to t_end, checks
/// every proved bound, and fits the observed decay rates. Reporting tool;
/// asserts nothing itself.
ConvergenceReport run_stability(const ExperimentConfig& cfg);

/// The initial-data spec run_stability uses: cosine amplitudes at the
/// configured fractions of the admissible thresholds (amp_u, amp_v below
/// eps; amp_w, amp_z below min{eps/rho, M}).
InitSpec stability_init_spec(const ExperimentConfig& cfg, const StabilityConstants& k, double eps);

/// Least-squares slope of log(value) vs t over [t1, t2], negated:
/// value ~ C e^{-rate t}. Requires >= 10 points with positive values inside
/// the window; throws std::domain_error otherwise.
double fit_decay(std::span<const double> times, std::span<const double> values, double t1,
                 double t2);

/// mean(u0) when rho = 0; nullopt otherwise (no closed-form limit exists).
std::optional<double> predict_u_infty(const Field& u0, double rho);

struct GrowthReport {
    std::vector<double> times;
    std::vector<double> int_w;
    std::vector<double> int_z;
    bool w_increasing = false;     // strictly, on the final half of the run
    bool z_increasing = false;
    bool growth_indicator = false; // both increasing; qualitative only
    Trajectory trajectory;
};

/// Supercritical growth probe (qualitative): homogeneous data with v0 = 0,
/// rho = 0. Requires beta > 1 and mean u0 > 1/(beta-1); use the same entry
/// point with beta or level lowered for the control runs via probe_controls.
GrowthReport run_blowup_probe(const ExperimentConfig& cfg);

/// Same integration and growth bookkeeping without the supercritical
/// preconditions (control runs of the dichotomy).
GrowthReport run_growth_probe_unchecked(const ExperimentConfig& cfg);

struct RefinementResult {
    std::vector<int> nx_levels;
    std::vector<double> errors;  // ||u_fine restricted - u_coarse|| between levels
    std::vector<double> orders;  // log2(errors[k]/errors[k+1])
};

/// Richardson convergence study: reruns the configured experiment with dx
/// halved per level (dt_max scaled by (dx/dx0)^2, CFL cap still active) and
/// estimates the observed order of u at t_end. Resolutions must be strictly
/// increasing and levels >= 3.
RefinementResult refinement_study(const ExperimentConfig& cfg, const std::vector<int>& nx_levels);
RefinementResult refinement_study(const ExperimentConfig& cfg, int levels);

}  // namespace hapto
