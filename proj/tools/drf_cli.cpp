// drfourier: radial Fourier analysis on harmonic NA spaces.
//
// Subcommands:
//   params     derive and print the structural constants of a space
//   phi        evaluate the elementary spherical function
//   transform  spherical transform of a built-in radial profile (CSV)
//   check      run the configured theorem audits
//
// The default output directory is taken from DRF_OUT_DIR when --out is absent.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "drf/harness.hpp"
#include "drf/jacobi.hpp"
#include "drf/spherical.hpp"
#include "drf/transform.hpp"

namespace {

std::string default_out_dir() {
    const char* env = std::getenv("DRF_OUT_DIR");
    return env && *env ? env : ".";
}

int cmd_params(int m, int k, bool calibrated) {
    drf::DRParams p = drf::derive_params(m, k);
    if (calibrated) drf::calibrate(p);
    std::cout << "m = " << p.m << "\n"
              << "k = " << p.k << "\n"
              << "Q = " << drf::format_full(p.Q) << "\n"
              << "rho = " << drf::format_full(p.rho) << "\n"
              << "d = " << p.d << "\n"
              << "jacobi_alpha = " << drf::format_full(p.jacobi_alpha) << "\n"
              << "jacobi_beta = " << drf::format_full(p.jacobi_beta) << "\n"
              << "index_residual_chosen = "
              << drf::format_full(p.index_audit.residual_chosen) << "\n"
              << "index_residual_rejected = "
              << drf::format_full(p.index_audit.residual_paper) << "\n";
    if (calibrated) {
        std::cout << "plancherel_const = " << drf::format_full(p.plancherel_const) << "\n";
        if (p.poisson_const > 0)
            std::cout << "poisson_const = " << drf::format_full(p.poisson_const) << "\n";
    }
    return 0;
}

int cmd_phi(int m, int k, double lam, double t) {
    drf::DRParams p = drf::derive_params(m, k);
    drf::PhiEval e = drf::spherical_phi_eval(p, lam, t);
    std::cout << "phi = " << drf::format_full(e.value) << "\n"
              << "est_error = " << drf::format_full(e.est_error) << "\n"
              << "method = " << (e.method == drf::PhiMethod::series ? "series" : "ode")
              << "\n"
              << "density = " << drf::format_full(drf::plancherel_density(p, lam)) << "\n";
    return 0;
}

int cmd_transform(int m, int k, double t_max, double lambda_max, double width,
                  const std::string& out_dir) {
    drf::DRParams p = drf::derive_params(m, k);
    drf::calibrate(p);
    drf::RadialFunction f = drf::make_radial(
        p, [width](double t) { return std::exp(-t * t / (width * width)); }, t_max,
        drf::Smoothness::gaussian_like);
    drf::SpectralFunction fhat =
        drf::spherical_transform(p, f, drf::default_spectral_grid(lambda_max));
    std::string path = out_dir + "/transform.csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot open " << path << "\n";
        return 4;
    }
    os << "lambda,fhat\n";
    for (std::size_t i = 0; i < fhat.grid.size(); ++i)
        os << drf::format_full(fhat.grid.nodes()[i]) << ','
           << drf::format_full(fhat.values[i]) << '\n';
    if (!os.flush()) {
        std::cerr << "error: write failed for " << path << "\n";
        return 4;
    }
    std::cout << "wrote " << path << " (" << fhat.grid.size() << " rows)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial Fourier toolkit for harmonic NA spaces"};
    app.require_subcommand(1);
    // Let global flags (--config, --out, ...) appear after the subcommand too.
    app.fallthrough();

    std::string config_path;
    std::string out_dir = default_out_dir();
    int jobs = 1;
    double tol_scale = 1.0;
    app.add_option("--config", config_path, "run configuration file");
    app.add_option("--out", out_dir, "output directory (default $DRF_OUT_DIR or .)");
    app.add_option("--jobs", jobs, "worker pool size for checks");
    app.add_option("--tol-scale", tol_scale, "multiplier on pass/fail tolerances");

    int m = 2, k = 1;
    auto* sp = app.add_subcommand("params", "derive structural constants");
    sp->add_option("--m", m, "dim of v (even)");
    sp->add_option("--k", k, "center dimension");
    bool calibrated = false;
    sp->add_flag("--calibrate", calibrated, "include calibration constants");

    double lam = 1.0, t = 1.0;
    auto* sphi = app.add_subcommand("phi", "evaluate the spherical function");
    sphi->add_option("--m", m, "dim of v (even)");
    sphi->add_option("--k", k, "center dimension");
    sphi->add_option("--lambda", lam, "spectral parameter");
    sphi->add_option("--t", t, "radius");

    double t_max = 12.0, lambda_max = 40.0, width = 1.0;
    auto* str = app.add_subcommand("transform", "spherical transform of a Gaussian");
    str->add_option("--m", m, "dim of v (even)");
    str->add_option("--k", k, "center dimension");
    str->add_option("--t-max", t_max, "radial support");
    str->add_option("--lambda-max", lambda_max, "spectral sampling cap");
    str->add_option("--width", width, "Gaussian width");

    auto* sch = app.add_subcommand("check", "run configured theorem audits");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sp->parsed()) return cmd_params(m, k, calibrated);
        if (sphi->parsed()) return cmd_phi(m, k, lam, t);
        if (str->parsed()) return cmd_transform(m, k, t_max, lambda_max, width, out_dir);
        if (sch->parsed()) {
            if (config_path.empty()) {
                std::cerr << "error: check requires --config\n";
                return 4;
            }
            drf::RunConfig cfg = drf::load_config(config_path);
            if (!out_dir.empty()) cfg.output_dir = out_dir;
            if (jobs > 0) cfg.jobs = jobs;
            if (tol_scale != 1.0) cfg.tol_scale = tol_scale;
            return drf::run_checks(cfg);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
