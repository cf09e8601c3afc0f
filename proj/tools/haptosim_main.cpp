// haptosim command-line surface: constants, phi, simulate, verify, sweep.
// Exit codes: 0 ok, 1 malformed config or missing inputs, 2 hypothesis
// violation, 3 numerical abort (partial outputs preserved), 4 bound
// verification failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hapto/config.hpp"
#include "hapto/constants.hpp"
#include "hapto/experiments.hpp"
#include "hapto/io.hpp"
#include "hapto/linsolve.hpp"
#include "hapto/operators.hpp"
#include "hapto/phi.hpp"

namespace fs = std::filesystem;
using namespace hapto;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUnverified = 4;

// summary files are key=value, insertion-ordered
struct Summary {
    std::vector<std::pair<std::string, std::string>> kv;
    void add(const std::string& k, const std::string& v) { kv.emplace_back(k, v); }
    void add(const std::string& k, double v) { kv.emplace_back(k, g17(v)); }
    std::optional<std::string> get(const std::string& k) const {
        for (const auto& [key, value] : kv)
            if (key == k) return value;
        return std::nullopt;
    }
    void write(const fs::path& p) const {
        std::ofstream os(p);
        for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
    }
};

void write_bounds_csv(const fs::path& p, const BoundReport& rep) {
    std::ofstream os(p);
    os << "t,bound_id,observed,bound,margin\n";
    for (const BoundSample& s : rep.samples)
        os << g17(s.t) << ',' << s.bound_id << ',' << g17(s.observed) << ',' << g17(s.bound)
           << ',' << g17(s.margin) << "\n";
}

void write_snapshots(const fs::path& dir, const Trajectory& traj) {
    int frame = 0;
    for (const State& s : traj.frames) {
        const std::pair<const char*, const Field*> fields[] = {
            {"u", &s.u}, {"v", &s.v}, {"w", &s.w}, {"z", &s.z}};
        for (const auto& [name, f] : fields) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%s_%04d.dat", name, frame);
            std::ofstream os(dir / buf);
            write_field_snapshot(os, *f, s.t, name);
        }
        ++frame;
    }
}

void write_growth_csv(const fs::path& p, const GrowthReport& rep) {
    std::ofstream os(p);
    os << "t,int_w,int_z\n";
    for (size_t i = 0; i < rep.times.size(); ++i)
        os << g17(rep.times[i]) << ',' << g17(rep.int_w[i]) << ',' << g17(rep.int_z[i]) << "\n";
}

std::string read_text_file(const fs::path& p) {
    std::ifstream is(p);
    if (!is) throw ConfigError("cannot open " + p.string());
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// one simulate job; returns the process exit code and fills the summary
int simulate_job(const RunConfig& cfg, const fs::path& out_dir, Summary& summary) {
    fs::create_directories(out_dir);
    {
        std::ofstream os(out_dir / "config.echo");
        os << serialize_config(cfg);
    }
    const ExperimentConfig ecfg = to_experiment(cfg);
    summary.add("mode", cfg.mode);

    auto finish_trajectory = [&](const Trajectory& traj) {
        std::ofstream os(out_dir / "diagnostics.csv");
        write_diagnostics_csv(os, traj.rows);
        if (cfg.snapshots) write_snapshots(out_dir, traj);
        summary.add("t_end_recorded", traj.end_time());
        summary.add("aborted", traj.aborted ? "1" : "0");
        if (traj.aborted) summary.add("abort_reason", traj.abort_reason);
    };

    if (cfg.mode == "stability") {
        ExperimentConfig run_cfg = ecfg;
        run_cfg.keep_frames = cfg.snapshots;
        const ConvergenceReport rep = run_stability(run_cfg);
        finish_trajectory(rep.trajectory);
        write_bounds_csv(out_dir / "bounds.csv", rep.bound_report);
        summary.add("eps", rep.eps);
        summary.add("K1", rep.constants.K1);
        summary.add("delta", rep.constants.delta);
        summary.add("K2", rep.constants.K2);
        summary.add("c2", rep.constants.c2);
        summary.add("eps_star", rep.constants.eps_star);
        summary.add("eps_2star", rep.constants.eps_2star);
        summary.add("eps_3star", rep.constants.eps_3star);
        summary.add("A", rep.envelope.A);
        summary.add("B", rep.envelope.B);
        summary.add("a0_min", rep.a0_min);
        summary.add("mean_u0", rep.mean_u0);
        summary.add("u_infty_est", rep.u_infty_est);
        if (rep.u_infty_predicted) summary.add("u_infty_predicted", *rep.u_infty_predicted);
        summary.add("u_infty_drift", rep.u_infty_drift);
        summary.add("rate_v", rep.rate_v);
        summary.add("rate_w", rep.rate_w);
        summary.add("rate_z", rep.rate_z);
        summary.add("horizon_verified", rep.bound_report.horizon_verified);
        summary.write(out_dir / "summary.txt");
        return rep.trajectory.aborted ? kExitNumerical : kExitOk;
    }

    if (cfg.mode == "blowup") {
        const GrowthReport rep = run_blowup_probe(ecfg);
        finish_trajectory(rep.trajectory);
        write_growth_csv(out_dir / "growth.csv", rep);
        summary.add("mean_u0", ecfg.u0_level);
        summary.add("growth_indicator", rep.growth_indicator ? "1" : "0");
        summary.add("w_increasing", rep.w_increasing ? "1" : "0");
        summary.add("z_increasing", rep.z_increasing ? "1" : "0");
        if (!rep.int_w.empty()) {
            summary.add("int_w_final", rep.int_w.back());
            summary.add("int_z_final", rep.int_z.back());
        }
        summary.write(out_dir / "summary.txt");
        return rep.trajectory.aborted ? kExitNumerical : kExitOk;
    }

    // raw run: no theory attached
    const State s0 = initial_state(ecfg.make_grid(), ecfg.raw_init_spec());
    const Trajectory traj = run(s0, ecfg.params, ecfg.ctl, cfg.snapshots);
    finish_trajectory(traj);
    summary.add("mean_u0", integrate(s0.u) / s0.grid().domain_measure());
    summary.add("u_infty_est",
                integrate(traj.final_state.u) / s0.grid().domain_measure());
    summary.write(out_dir / "summary.txt");
    return traj.aborted ? kExitNumerical : kExitOk;
}

int cmd_constants(double beta, double gamma, double M) {
    const StabilityConstants k = compute_constants(beta, gamma, M);
    std::cout << "K1=" << g17(k.K1) << "\n"
              << "delta=" << g17(k.delta) << "\n"
              << "K2=" << g17(k.K2) << "\n"
              << "c2=" << g17(k.c2) << "\n"
              << "eps_star=" << g17(k.eps_star) << "\n"
              << "eps_2star=" << g17(k.eps_2star) << "\n"
              << "eps_3star=" << g17(k.eps_3star) << "\n";
    return kExitOk;
}

int cmd_phi(double gamma, double A, double eps, double t_end, int n_samples,
            const std::string& out) {
    const double threshold = eps_2star(gamma, A);
    if (!(eps < threshold)) {
        std::cerr << "phi: eps=" << g17(eps) << " is not below eps_2star(gamma,A)="
                  << g17(threshold) << "\n";
        return kExitHypothesis;
    }
    if (n_samples < 2) {
        std::cerr << "phi: need at least 2 samples\n";
        return kExitBadInput;
    }
    std::vector<double> ts(static_cast<size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) ts[static_cast<size_t>(i)] = t_end * i / (n_samples - 1);
    const std::vector<double> ode = phi_ode_samples(ts, gamma, A, eps);
    const double bound = gamma + (16.0 * gamma + 72.0 * A + 1.0) * eps;

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out.empty()) {
        file.open(out);
        if (!file) {
            std::cerr << "phi: cannot open " << out << "\n";
            return kExitBadInput;
        }
        os = &file;
    }
    *os << "t,phi_closed,phi_ode,bound\n";
    for (int i = 0; i < n_samples; ++i) {
        const double t = ts[static_cast<size_t>(i)];
        *os << g17(t) << ',' << g17(phi_closed(t, gamma, A, eps)) << ','
            << g17(ode[static_cast<size_t>(i)]) << ',' << g17(bound) << "\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir) {
    RunConfig cfg;
    try {
        cfg = parse_config(read_text_file(config_path));
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    }
    Summary summary;
    try {
        return simulate_job(cfg, out_dir, summary);
    } catch (const SolverError& e) {
        std::cerr << "numerical abort: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::domain_error& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitBadInput;
    }
}

int cmd_verify(const std::string& run_dir_arg) {
    const fs::path run_dir(run_dir_arg);
    RunConfig cfg;
    std::vector<DiagRow> rows;
    try {
        cfg = parse_config(read_text_file(run_dir / "config.echo"));
        std::ifstream is(run_dir / "diagnostics.csv");
        if (!is) throw ConfigError("cannot open diagnostics.csv");
        rows = read_diagnostics_csv(is);
        if (rows.empty()) throw ConfigError("diagnostics.csv has no rows");
    } catch (const std::exception& e) {
        std::cerr << "verify: " << e.what() << "\n";
        return kExitBadInput;
    }

    try {
        const ExperimentConfig ecfg = to_experiment(cfg);
        const StabilityConstants k = compute_constants(cfg.beta, cfg.gamma, cfg.M);
        const double eps = cfg.eps_fraction * k.eps_3star;

        // rebuild the initial data to recover the envelope inputs
        InitSpec spec;
        if (cfg.mode == "stability")
            spec = stability_init_spec(ecfg, k, eps);
        else
            spec = ecfg.raw_init_spec();
        const State s0 = initial_state(ecfg.make_grid(), spec);

        const Envelope env = build_envelope(k, field_norms(s0.w).sup, field_norms(s0.z).sup, eps,
                                            cfg.rho);
        double a0_min = s0.u[0] * std::exp(-s0.v[0]);
        for (int c = 1; c < s0.u.size(); ++c)
            a0_min = std::min(a0_min, s0.u[c] * std::exp(-s0.v[c]));

        VerifySettings vs;
        vs.c_tol = cfg.c_tol;
        const Grid grid = ecfg.make_grid();
        vs.dx = (grid.dim == 2) ? std::max(grid.dx, grid.dy) : grid.dx;
        vs.dt = cfg.dt_max;
        vs.a0_min = a0_min;

        const BoundReport rep = verify_bounds(rows, k, env, cfg.rho, vs);
        write_bounds_csv(run_dir / "bounds.csv", rep);

        const double tol = 1e-12 * std::max(1.0, cfg.t_end);
        const bool complete = rep.horizon_verified >= cfg.t_end - tol;
        std::cout << "horizon_verified=" << g17(rep.horizon_verified) << "\n";
        if (const BoundSample* v = rep.first_violation()) {
            std::cout << "first_violation_t=" << g17(v->t) << "\n"
                      << "first_violation_bound=" << v->bound_id << "\n"
                      << "first_violation_margin=" << g17(v->margin) << "\n";
        }
        return complete ? kExitOk : kExitUnverified;
    } catch (const std::domain_error& e) {
        std::cerr << "verify: hypothesis violation: " << e.what() << "\n";
        return kExitHypothesis;
    }
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::vector<std::string>& values, const std::string& out_dir) {
    RunConfig base;
    try {
        base = parse_config(read_text_file(config_path));
        if (!values.empty()) {  // axis must name a settable key
            RunConfig probe = base;
            config_set(probe, axis, values.front());
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return kExitBadInput;
    }

    fs::create_directories(out_dir);
    std::ofstream table(fs::path(out_dir) / "sweep_summary.csv");
    table << axis
          << ",status,u_infty_est,rate_v,rate_w,rate_z,horizon_verified,growth_indicator\n";

    for (const std::string& value : values) {
        RunConfig cfg = base;
        std::string status = "ok";
        Summary summary;
        try {
            config_set(cfg, axis, value);
            const fs::path job_dir = fs::path(out_dir) / (axis + "_" + value);
            const int rc = simulate_job(cfg, job_dir, summary);
            if (rc != kExitOk) status = "exit" + std::to_string(rc);
        } catch (const std::exception& e) {
            status = "error";
            std::cerr << "sweep " << axis << "=" << value << ": " << e.what() << "\n";
        }
        auto cell = [&](const char* key) { return summary.get(key).value_or(""); };
        table << value << ',' << status << ',' << cell("u_infty_est") << ',' << cell("rate_v")
              << ',' << cell("rate_w") << ',' << cell("rate_z") << ','
              << cell("horizon_verified") << ',' << cell("growth_indicator") << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"haptotaxis virotherapy simulator and bound-verification harness"};
    app.require_subcommand(1);

    double beta = 2.0, gamma = 0.5, M = 1.0;
    auto* constants = app.add_subcommand("constants", "print the stability constant chain");
    constants->add_option("--beta", beta, "virus replication rate")->required();
    constants->add_option("--gamma", gamma, "target homogeneous level")->required();
    constants->add_option("--M", M, "cap for the initial w,z sup norms")->capture_default_str();

    double A = 1.0, eps = 1e-3, t_end = 50.0;
    int n_samples = 101;
    std::string out_file;
    auto* phi = app.add_subcommand("phi", "tabulate the Bernoulli envelope phi");
    phi->add_option("--gamma", gamma, "decay parameter")->required();
    phi->add_option("--A", A, "linear forcing amplitude")->required();
    phi->add_option("--eps", eps, "perturbation scale")->required();
    phi->add_option("--t-end", t_end, "final time")->capture_default_str();
    phi->add_option("--samples", n_samples, "number of rows")->capture_default_str();
    phi->add_option("--out", out_file, "output CSV (default stdout)");

    std::string config_path, out_dir = "run";
    auto* simulate = app.add_subcommand("simulate", "run one experiment from a config file");
    simulate->add_option("--config", config_path, "key=value config file")->required();
    simulate->add_option("--out", out_dir, "output directory")->capture_default_str();

    std::string run_dir;
    auto* verify = app.add_subcommand("verify", "re-check the proved bounds for a run directory");
    verify->add_option("--run", run_dir, "run directory produced by simulate")->required();

    std::string axis, values_csv;
    auto* sweep = app.add_subcommand("sweep", "run one job per value of a config key");
    sweep->add_option("--config", config_path, "base config file")->required();
    sweep->add_option("--axis", axis, "config key to sweep")->required();
    sweep->add_option("--values", values_csv, "comma-separated values")->required();
    sweep->add_option("--out", out_dir, "output directory")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (constants->parsed()) return cmd_constants(beta, gamma, M);
        if (phi->parsed()) return cmd_phi(gamma, A, eps, t_end, n_samples, out_file);
        if (simulate->parsed()) return cmd_simulate(config_path, out_dir);
        if (verify->parsed()) return cmd_verify(run_dir);
        if (sweep->parsed()) {
            std::vector<std::string> values;
            std::stringstream ss(values_csv);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) values.push_back(item);
            return cmd_sweep(config_path, axis, values, out_dir);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "hypothesis violation: " << e.what() << "\n";
        return kExitHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return kExitBadInput;
}
