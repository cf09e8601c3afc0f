#pragma once

#include <stdexcept>
#include <string>

#include "hapto/experiments.hpp"

namespace hapto {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Flat typed run configuration, parsed from `key = value` text (one pair per
/// line, '#' comments). Unknown keys and duplicates are rejected; missing
/// keys take the defaults below. serialize_config emits every key, floats at
/// 17 significant digits, and parse(serialize(c)) == c.
struct RunConfig {
    std::string mode = "stability";  // stability | raw | blowup
    int dim = 1;
    int nx = 256;
    int ny = 64;
    double lx = 1.0;
    double ly = 1.0;

    double beta = 2.0;
    double rho = 0.0;
    double d_w = 1.0;
    double d_z = 1.0;

    double gamma = 0.5;
    double M = 1.0;
    double eps_fraction = 0.8;
    double amp_u_frac = 0.9;
    double amp_v_frac = 0.9;
    double amp_w_frac = 0.9;
    double amp_z_frac = 0.9;
    int mode_kx = 1;
    int mode_ky = 1;
    unsigned long seed = 0;

    std::string init_profile = "cosine";  // cosine | homogeneous (raw/blowup)
    double amp_u = 0.0;
    double amp_v = 0.0;
    double amp_w = 0.0;
    double amp_z = 0.0;
    double u0_level = 2.0;
    double v0_level = 0.0;
    double w0_level = 0.01;
    double z0_level = 0.01;

    double dt_max = 0.01;
    double cfl = 0.9;
    double lin_tol = 1e-10;
    double t_end = 100.0;
    double output_every = 0.5;

    double c_tol = 10.0;
    double fit_window_frac = 0.5;
    bool snapshots = false;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

/// Sets one key from its textual value (used by cmd_sweep). Throws
/// ConfigError for unknown keys or unparseable values.
void config_set(RunConfig& cfg, const std::string& key, const std::string& value);

ExperimentConfig to_experiment(const RunConfig& cfg);

}  // namespace hapto
