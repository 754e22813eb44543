#pragma once

#include <span>
#include <vector>

#include "drf/moduli.hpp"
#include "drf/report.hpp"
#include "drf/transform.hpp"

namespace drf {

enum class TailWeight { flat, power_dminus1, plancherel };

// Multiplier applied to every pinned pass/fail tolerance (the CLI's
// --tol-scale).  Default 1; affects verdicts only, never computed values.
void set_tolerance_scale(double s);
double tolerance_scale();

// int_s^infty |fhat|^2 w(lambda) dlambda; the modeled tail beyond the sampled
// range is integrated analytically against the matched density power law.
double tail_energy(const DRParams& p, const SpectralFunction& fhat, double s,
                   TailWeight w);

// Log-spaced "sufficiently small t" grid.
std::vector<double> default_check_t_grid(int n = 32, double lo = 1e-3, double hi = 1e-1);

// Empirical constants the theorem chains trace through.
struct CheckContext {
    double c1_lower = 0;       // inf |1 - phi_lambda(t)| over lambda t >= 1
    double density_upper = 0;  // sup_{lambda >= 1} lambda^{d-1} / density(lambda)
};
CheckContext make_check_context(const DRParams& p);

// Spectral test profiles: |fhat| = lambda^{-(alpha + d/2)} (ln lambda)^{gamma}
// above the join point, zero below.
SpectralFunction power_tail_profile(const DRParams& p, double alpha, double gamma,
                                    double lambda_max = 1e3);
// Borderline profile for the Besov audit: extra (ln lambda)^{-1} damping.
SpectralFunction log_damped_profile(const DRParams& p, double alpha,
                                    double lambda_max = 1e3);

CheckReport forward_titchmarsh(const DRParams& p, const SpectralFunction& fhat,
                               const Modulus& w, std::span<const double> t_grid,
                               const CheckContext& ctx);

CheckReport dyadic_shell_equiv(const DRParams& p, const SpectralFunction& fhat,
                               const Modulus& w, std::span<const double> t_grid);

CheckReport converse_hypotheses(const Modulus& w);

CheckReport converse_titchmarsh(const DRParams& p, const SpectralFunction& fhat,
                                const Modulus& w, std::span<const double> t_grid,
                                const CheckContext& ctx);

CheckReport lipcor_two_sided(const DRParams& p, double alpha, double gamma,
                             std::span<const double> t_grid, const CheckContext& ctx);

CheckReport besov_check(const DRParams& p, const SpectralFunction& fhat, double alpha);

struct HolderParams {
    double alpha = 0.5;  // in (0, 1]
    double p = 2.0;      // in (1, 2]
    double p_prime = 2.0;
    double q = 2.0;  // in [p, p']
    double gamma_q = 0.0;
    double beta_exp = 2.0;

    static HolderParams for_p2(double alpha, double beta_exp);
    double threshold(const DRParams& dr) const;  // d p' / (d + alpha p')
    void validate() const;
};

// Integrability audit of F = |fhat| in L^beta(|c|^{-2} dlambda) for a ladder
// of beta values; restricted to p = 2.
CheckReport holder_integrability(const DRParams& p, const SpectralFunction& fhat,
                                 const HolderParams& hp,
                                 std::span<const double> betas);

}  // namespace drf
