#pragma once

#include <complex>
#include <span>
#include <vector>

namespace drf {

// Log-gamma for complex argument (Lanczos; argument shifted until Re z is
// large enough).  Principal branch.
std::complex<double> lgamma_complex(std::complex<double> z);

enum class PhiMethod { series, ode_continuation };

struct PhiEval {
    double value = 0;
    double est_error = 0;
    PhiMethod method = PhiMethod::series;
};

struct JacobiOptions {
    // Series is used when r <= series_radius and |lam| * tanh(r) stays below
    // the cancellation guard; otherwise the ODE continuation takes over.
    double series_radius = 1.0;
    double cancellation_guard = 15.0;
    double ode_rel_tol = 1e-12;
    double ode_abs_tol = 1e-14;
};

// Jacobi function phi_lam^{(alpha,beta)}(r): the even eigenfunction of the
// Jacobi operator
//   L = d^2/dr^2 + ((2a+1) coth r + (2b+1) tanh r) d/dr
// with L phi = -(lam^2 + rho_J^2) phi, rho_J = alpha + beta + 1, phi(0) = 1.
PhiEval jacobi_phi_eval(double alpha, double beta, double lam, double r,
                        const JacobiOptions& opt = {});
double jacobi_phi(double alpha, double beta, double lam, double r,
                  const JacobiOptions& opt = {});

// Force one evaluation route (overlap-window cross checks).
PhiEval jacobi_phi_series(double alpha, double beta, double lam, double r);
PhiEval jacobi_phi_ode(double alpha, double beta, double lam, double r,
                       const JacobiOptions& opt = {});

// phi at a sorted list of radii for fixed lam, sharing one outward ODE sweep.
std::vector<double> jacobi_phi_multi(double alpha, double beta, double lam,
                                     std::span<const double> r_sorted,
                                     const JacobiOptions& opt = {});

// |c(mu)|^{-2} for the Jacobi c-function
//   c(mu) = 2^{rho - i mu} Gamma(alpha+1) Gamma(i mu)
//           / ( Gamma((rho + i mu)/2) Gamma((alpha - beta + 1 + i mu)/2) ),
// evaluated in log space.  mu > 0.
double jacobi_c_inv_sq(double alpha, double beta, double mu);

}  // namespace drf
