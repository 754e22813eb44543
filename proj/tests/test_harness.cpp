#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "drf/harness.hpp"
#include "drf/report.hpp"

using namespace drf;

namespace {

std::string write_tmp(const std::string& name, const std::string& body) {
    std::string path = "/tmp/drf_harness_" + name;
    std::ofstream os(path, std::ios::binary);
    os << body;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("minimal config gets defaults") {
    std::string path = write_tmp("min.conf",
                                 "# comment\n"
                                 "m = 2\n"
                                 "k = 1\n"
                                 "checks = lemma-phi-bounds\n");
    RunConfig cfg = load_config(path);
    CHECK(cfg.m == 2);
    CHECK(cfg.k == 1);
    CHECK(cfg.t_grid_n == 32);
    CHECK(cfg.profile == "power_tail");
    REQUIRE(cfg.checks.size() == 1);
    CHECK(cfg.checks[0] == "lemma-phi-bounds");
    std::remove(path.c_str());
}

TEST_CASE("unknown keys are named in the error") {
    std::string path = write_tmp("unk.conf", "m = 2\nk = 1\nalpha_jacobi = 1\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("alpha_jacobi"),
                         std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("parse errors carry the line number") {
    std::string path = write_tmp("badnum.conf", "m = 2\nk = abc\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("line 2"),
                         std::runtime_error);
    std::string path2 = write_tmp("noeq.conf", "m = 2\njunk line\n");
    CHECK_THROWS_WITH_AS(load_config(path2), doctest::Contains("line 2"),
                         std::runtime_error);
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("space validation errors surface with config context") {
    std::string path = write_tmp("oddm.conf", "m = 3\nk = 1\n");
    CHECK_THROWS_WITH_AS(load_config(path), doctest::Contains("m=3"),
                         std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("unknown checks and profiles are rejected") {
    std::string p1 = write_tmp("badchk.conf", "m = 2\nk = 1\nchecks = thm-unknown\n");
    CHECK_THROWS_WITH_AS(load_config(p1), doctest::Contains("thm-unknown"),
                         std::runtime_error);
    std::string p2 = write_tmp("badprof.conf", "m = 2\nk = 1\nprofile = wavelet\n");
    CHECK_THROWS(load_config(p2));
    std::string p3 = write_tmp("nofile.conf", "m = 2\nk = 1\nprofile = file:/nonexistent\n");
    CHECK_THROWS(load_config(p3));
    std::remove(p1.c_str());
    std::remove(p2.c_str());
    std::remove(p3.c_str());
}

TEST_CASE("registry is the fixed seven-name set") {
    const auto& reg = check_registry();
    REQUIRE(reg.size() == 7);
    CHECK(reg[0] == "lemma-phi-bounds");
    CHECK(reg[1] == "thm-forward");
    CHECK(reg[2] == "lem-dyadic");
    CHECK(reg[3] == "thm-converse");
    CHECK(reg[4] == "cor-lipcor");
    CHECK(reg[5] == "thm-besov");
    CHECK(reg[6] == "thm-holder");
}

TEST_CASE("modulus and profile builders follow the config") {
    RunConfig cfg;
    cfg.modulus_kind = ModulusKind::power_log;
    cfg.modulus_alpha = 0.6;
    cfg.modulus_gamma = 1.0;
    cfg.modulus_k = 2.0;
    cfg.modulus_delta0 = 0.3;
    Modulus w = build_modulus(cfg);
    CHECK(w.order_k == 2.0);
    CHECK(w.delta0 == 0.3);
    CHECK(w(0.1) > 0);

    DRParams p = derive_params(2, 1);
    cfg.profile = "log_damped";
    SpectralFunction fh = build_profile(cfg, p);
    CHECK(fh.value(10.0) > 0);
    CHECK(fh.value(2.0) < fh.value(3.0) + 1.0);  // defined everywhere
}

TEST_CASE("empty check list runs, warns, and exits 0") {
    RunConfig cfg;
    cfg.checks = {};
    cfg.output_dir = "/tmp/drf_harness_empty";
    CHECK(run_checks(cfg) == 0);
}

TEST_CASE("failed converse hypothesis yields exit status 3") {
    RunConfig cfg;
    cfg.checks = {"thm-converse"};
    cfg.modulus_kind = ModulusKind::power;
    cfg.modulus_alpha = 2.0;
    cfg.modulus_k = 2.0;
    cfg.output_dir = "/tmp/drf_harness_inc";
    CHECK(run_checks(cfg) == 3);
}

TEST_CASE("single passing check yields exit status 0 and deterministic bytes") {
    RunConfig cfg;
    cfg.checks = {"lemma-phi-bounds", "thm-forward"};
    cfg.output_dir = "/tmp/drf_harness_d1";
    REQUIRE(run_checks(cfg) == 0);
    cfg.output_dir = "/tmp/drf_harness_d2";
    cfg.jobs = 2;  // worker pool must not affect the bytes
    REQUIRE(run_checks(cfg) == 0);
    for (const char* f :
         {"lemma-phi-bounds.csv", "thm-forward.csv", "summary.txt", "summary.csv"}) {
        std::string a = slurp(std::string("/tmp/drf_harness_d1/") + f);
        std::string b = slurp(std::string("/tmp/drf_harness_d2/") + f);
        REQUIRE(!a.empty());
        CHECK(a == b);
    }
    // Plot data contract: fixed header and one row per grid point.
    std::istringstream is(slurp("/tmp/drf_harness_d1/thm-forward.csv"));
    std::string header;
    std::getline(is, header);
    CHECK(header == "grid,lhs,rhs,ratio");
    int rows = 0;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 32);
}

TEST_CASE("full-precision formatting round-trips doubles") {
    for (double x : {1.0, -0.1234567890123456, 3.0e-300, 7.25e18}) {
        CHECK(std::stod(format_full(x)) == x);
    }
}
