#pragma once

#include <string>
#include <vector>

#include "drf/checks.hpp"
#include "drf/moduli.hpp"

namespace drf {

// Declarative run description, loaded from a key=value text file.
struct RunConfig {
    int m = 2;
    int k = 1;

    double t_max = 12.0;
    double lambda_max = 40.0;
    int t_grid_n = 32;
    double t_grid_lo = 1e-3;
    double t_grid_hi = 1e-1;

    // "power_tail", "log_damped", or "file:PATH" (radial profile, transformed).
    std::string profile = "power_tail";
    double profile_alpha = 0.5;
    double profile_gamma = 0.0;
    double profile_lambda_max = 1e3;

    ModulusKind modulus_kind = ModulusKind::power;
    double modulus_alpha = 0.5;
    double modulus_gamma = 0.0;
    double modulus_k = 1.0;
    double modulus_delta0 = 0.5;
    std::string modulus_tail = "constant";  // constant | bounded_below

    std::vector<std::string> checks;
    double tol_scale = 1.0;
    std::string output_dir;
    long seed = 0;  // reserved for grid jitter; 0 = deterministic off
    int jobs = 1;
};

// Fixed set of check names accepted in configs.
const std::vector<std::string>& check_registry();

// Throws on parse errors (with line number), unknown keys, or invalid values.
RunConfig load_config(const std::string& path);

// Runs the selected checks, writes one CSV per check plus summary.txt and
// summary.csv into cfg.output_dir.  Returns 0 if all pass, 2 if any fail,
// 3 if any inconclusive and none fail, 4 on I/O failure.
int run_checks(const RunConfig& cfg);

Modulus build_modulus(const RunConfig& cfg);
SpectralFunction build_profile(const RunConfig& cfg, const DRParams& p);

}  // namespace drf
