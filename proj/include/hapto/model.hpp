#pragma once

#include "hapto/grid.hpp"

namespace hapto {

/// Parameters of the four-component virotherapy system: virus replication
/// rate beta, infection-loss coefficient rho, diffusivities of infected
/// cells (d_w) and virions (d_z).
struct ModelParams {
    double beta = 2.0;
    double rho = 0.0;
    double d_w = 1.0;
    double d_z = 1.0;

    void validate() const {
        if (!(beta > 0.0)) throw std::invalid_argument("ModelParams: beta must be > 0");
        if (!(rho >= 0.0)) throw std::invalid_argument("ModelParams: rho must be >= 0");
        if (!(d_w > 0.0) || !(d_z > 0.0))
            throw std::invalid_argument("ModelParams: diffusivities must be > 0");
    }
};

/// Time-stamped solution quadruple: uninfected cells u, ECM v, infected
/// cells w, virions z, all on one grid.
struct State {
    double t = 0.0;
    Field u, v, w, z;

    const Grid& grid() const { return u.grid(); }
};

struct StepControl {
    double dt_max = 0.01;
    double cfl = 0.9;          // advective Courant factor in (0,1]
    double lin_tol = 1e-10;    // linear-solver residual tolerance
    double t_end = 100.0;
    double output_every = 0.5;

    void validate() const {
        if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("StepControl: cfl in (0,1]");
        if (!(lin_tol <= 1e-8) || !(lin_tol > 0.0))
            throw std::invalid_argument("StepControl: lin_tol must be in (0, 1e-8]");
        if (!(dt_max > 0.0)) throw std::invalid_argument("StepControl: dt_max must be > 0");
        if (!(t_end >= 0.0)) throw std::invalid_argument("StepControl: t_end must be >= 0");
    }
};

/// Neumann-compatible initial profiles. Cosine profile:
///   u0 = gamma + amp_u * s * cos(pi kx x/lx) [* cos(pi ky y/ly)]
///   v0 = amp_v * bump,  w0 = amp_w * bump_w,  z0 = amp_z * bump
/// with bump = (1+cos(pi x/lx))/2 [* (1+cos(pi y/ly))/2] and the sign s and
/// the w-bump orientation drawn from the seed. Every mode has vanishing
/// normal derivative at the boundary by construction. Homogeneous profile:
/// constant fields at levels (gamma, amp_v, amp_w, amp_z).
struct InitSpec {
    double gamma = 0.5;
    double amp_u = 0.0;
    double amp_v = 0.0;
    double amp_w = 0.0;
    double amp_z = 0.0;
    int mode_kx = 1;
    int mode_ky = 1;
    unsigned long seed = 0;
    bool homogeneous = false;
};

State initial_state(const Grid& grid, const InitSpec& spec);

}  // namespace hapto
