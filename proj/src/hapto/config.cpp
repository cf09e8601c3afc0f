#include "hapto/config.hpp"

#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

#include "hapto/io.hpp"

namespace hapto {

namespace {

struct KeyEntry {
    const char* name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

double parse_double(const std::string& name, const std::string& s) {
    size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + name + "': " + s);
    }
    if (used != s.size()) throw ConfigError("config: trailing junk in value for '" + name + "'");
    return v;
}

long parse_long(const std::string& name, const std::string& s) {
    size_t used = 0;
    long v;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + name + "': " + s);
    }
    if (used != s.size()) throw ConfigError("config: trailing junk in value for '" + name + "'");
    return v;
}

bool parse_bool(const std::string& name, const std::string& s) {
    if (s == "0" || s == "false") return false;
    if (s == "1" || s == "true") return true;
    throw ConfigError("config: bad boolean value for '" + name + "': " + s);
}

#define DOUBLE_KEY(field)                                                        \
    KeyEntry{#field, [](RunConfig& c, const std::string& s) { c.field = parse_double(#field, s); }, \
             [](const RunConfig& c) { return g17(c.field); }}
#define INT_KEY(field)                                                           \
    KeyEntry{#field,                                                             \
             [](RunConfig& c, const std::string& s) {                            \
                 c.field = static_cast<int>(parse_long(#field, s));              \
             },                                                                  \
             [](const RunConfig& c) { return std::to_string(c.field); }}

const std::vector<KeyEntry>& key_table() {
    static const std::vector<KeyEntry> table = {
        KeyEntry{"mode",
                 [](RunConfig& c, const std::string& s) {
                     if (s != "stability" && s != "raw" && s != "blowup")
                         throw ConfigError("config: mode must be stability|raw|blowup");
                     c.mode = s;
                 },
                 [](const RunConfig& c) { return c.mode; }},
        INT_KEY(dim),
        INT_KEY(nx),
        INT_KEY(ny),
        DOUBLE_KEY(lx),
        DOUBLE_KEY(ly),
        DOUBLE_KEY(beta),
        DOUBLE_KEY(rho),
        DOUBLE_KEY(d_w),
        DOUBLE_KEY(d_z),
        DOUBLE_KEY(gamma),
        DOUBLE_KEY(M),
        DOUBLE_KEY(eps_fraction),
        DOUBLE_KEY(amp_u_frac),
        DOUBLE_KEY(amp_v_frac),
        DOUBLE_KEY(amp_w_frac),
        DOUBLE_KEY(amp_z_frac),
        INT_KEY(mode_kx),
        INT_KEY(mode_ky),
        KeyEntry{"seed",
                 [](RunConfig& c, const std::string& s) {
                     c.seed = static_cast<unsigned long>(parse_long("seed", s));
                 },
                 [](const RunConfig& c) { return std::to_string(c.seed); }},
        KeyEntry{"init_profile",
                 [](RunConfig& c, const std::string& s) {
                     if (s != "cosine" && s != "homogeneous")
                         throw ConfigError("config: init_profile must be cosine|homogeneous");
                     c.init_profile = s;
                 },
                 [](const RunConfig& c) { return c.init_profile; }},
        DOUBLE_KEY(amp_u),
        DOUBLE_KEY(amp_v),
        DOUBLE_KEY(amp_w),
        DOUBLE_KEY(amp_z),
        DOUBLE_KEY(u0_level),
        DOUBLE_KEY(v0_level),
        DOUBLE_KEY(w0_level),
        DOUBLE_KEY(z0_level),
        DOUBLE_KEY(dt_max),
        DOUBLE_KEY(cfl),
        DOUBLE_KEY(lin_tol),
        DOUBLE_KEY(t_end),
        DOUBLE_KEY(output_every),
        DOUBLE_KEY(c_tol),
        DOUBLE_KEY(fit_window_frac),
        KeyEntry{"snapshots",
                 [](RunConfig& c, const std::string& s) { c.snapshots = parse_bool("snapshots", s); },
                 [](const RunConfig& c) { return std::string(c.snapshots ? "1" : "0"); }},
    };
    return table;
}

#undef DOUBLE_KEY
#undef INT_KEY

std::string trim(const std::string& s) {
    const size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key +
                              "'");
        config_set(cfg, key, value);
    }
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    std::string out;
    for (const KeyEntry& k : key_table()) {
        out += k.name;
        out += " = ";
        out += k.get(cfg);
        out += "\n";
    }
    return out;
}

void config_set(RunConfig& cfg, const std::string& key, const std::string& value) {
    for (const KeyEntry& k : key_table()) {
        if (key == k.name) {
            k.set(cfg, value);
            return;
        }
    }
    throw ConfigError("config: unknown key '" + key + "'");
}

ExperimentConfig to_experiment(const RunConfig& c) {
    ExperimentConfig e;
    e.params.beta = c.beta;
    e.params.rho = c.rho;
    e.params.d_w = c.d_w;
    e.params.d_z = c.d_z;
    e.gamma = c.gamma;
    e.M = c.M;
    e.eps_fraction = c.eps_fraction;
    e.amp_u_frac = c.amp_u_frac;
    e.amp_v_frac = c.amp_v_frac;
    e.amp_w_frac = c.amp_w_frac;
    e.amp_z_frac = c.amp_z_frac;
    e.mode_kx = c.mode_kx;
    e.mode_ky = c.mode_ky;
    e.seed = c.seed;
    e.homogeneous_init = (c.init_profile == "homogeneous");
    e.amp_u = c.amp_u;
    e.amp_v = c.amp_v;
    e.amp_w = c.amp_w;
    e.amp_z = c.amp_z;
    e.u0_level = c.u0_level;
    e.v0_level = c.v0_level;
    e.w0_level = c.w0_level;
    e.z0_level = c.z0_level;
    e.dim = c.dim;
    e.nx = c.nx;
    e.ny = c.ny;
    e.lx = c.lx;
    e.ly = c.ly;
    e.ctl.dt_max = c.dt_max;
    e.ctl.cfl = c.cfl;
    e.ctl.lin_tol = c.lin_tol;
    e.ctl.t_end = c.t_end;
    e.ctl.output_every = c.output_every;
    e.c_tol = c.c_tol;
    e.fit_window_frac = c.fit_window_frac;
    return e;
}

}  // namespace hapto
