#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hapto/config.hpp"
#include "hapto/io.hpp"

using namespace hapto;

TEST_CASE("config round-trip is the identity on the typed config") {
    RunConfig cfg;
    CHECK(parse_config(serialize_config(cfg)) == cfg);

    cfg.mode = "blowup";
    cfg.dim = 2;
    cfg.nx = 48;
    cfg.ny = 12;
    cfg.lx = 2.5;
    cfg.beta = 0.3;
    cfg.rho = 1.0 / 3.0;
    cfg.gamma = 0.123456789012345678;
    cfg.seed = 42;
    cfg.init_profile = "homogeneous";
    cfg.lin_tol = 1e-9;
    cfg.snapshots = true;
    cfg.eps_fraction = 0.55;
    CHECK(parse_config(serialize_config(cfg)) == cfg);
}

TEST_CASE("config parser rejects what it should") {
    CHECK_THROWS_AS(parse_config("no_such_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("nx = 32\nnx = 64\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("beta = not_a_number\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("beta 2.0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("mode = nonsense\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("snapshots = maybe\n"), ConfigError);

    // comments, blank lines and spacing are tolerated
    const RunConfig cfg = parse_config("# comment\n\n  nx =  128   # trailing\n\tbeta=4\n");
    CHECK(cfg.nx == 128);
    CHECK(cfg.beta == 4.0);

    RunConfig c2;
    CHECK_THROWS_AS(config_set(c2, "bogus", "1"), ConfigError);
    config_set(c2, "eps_fraction", "0.25");
    CHECK(c2.eps_fraction == 0.25);
}

TEST_CASE("g17 emission is lossless") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1e3, 1e3);
    for (int k = 0; k < 200; ++k) {
        const double x = dist(rng);
        CHECK(std::stod(g17(x)) == x);
    }
    for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -0.0}) CHECK(std::stod(g17(x)) == x);
}

TEST_CASE("field snapshot round-trip") {
    const Grid g = Grid::rectangle(8, 6, 1.5, 2.5);
    Field f(g);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int k = 0; k < f.size(); ++k) f[k] = dist(rng);

    std::stringstream ss;
    write_field_snapshot(ss, f, 1.25, "u");
    double t = 0.0;
    std::string name;
    const Field back = read_field_snapshot(ss, &t, &name);
    CHECK(t == 1.25);
    CHECK(name == "u");
    CHECK(back.grid().same_layout(g));
    for (int k = 0; k < f.size(); ++k) CHECK(back[k] == f[k]);
}

TEST_CASE("diagnostics csv round-trip and corruption detection") {
    std::vector<DiagRow> rows(3);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double t = 0.0;
    for (DiagRow& r : rows) {
        r.t = t;
        t += 0.5;
        r.min_u = dist(rng);
        r.max_u = dist(rng);
        r.sup_u = dist(rng);
        r.sup_v = dist(rng);
        r.sup_w = dist(rng);
        r.sup_z = dist(rng);
        r.int_u = dist(rng);
        r.int_z = dist(rng);
        r.gradv4 = dist(rng);
        r.sup_a = dist(rng);
    }
    std::stringstream ss;
    write_diagnostics_csv(ss, rows);
    const std::vector<DiagRow> back = read_diagnostics_csv(ss);
    REQUIRE(back.size() == rows.size());
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].t == rows[i].t);
        CHECK(back[i].min_u == rows[i].min_u);
        CHECK(back[i].sup_v == rows[i].sup_v);
        CHECK(back[i].sup_a == rows[i].sup_a);
        CHECK(back[i].gradv4 == rows[i].gradv4);
    }

    std::stringstream truncated;
    write_diagnostics_csv(truncated, rows);
    std::string text = truncated.str();
    text.resize(text.size() - 20);  // cut into the last row
    std::stringstream bad(text);
    CHECK_THROWS_AS(read_diagnostics_csv(bad), std::runtime_error);

    std::stringstream wrong_header("a,b,c\n1,2,3\n");
    CHECK_THROWS_AS(read_diagnostics_csv(wrong_header), std::runtime_error);
}
