#pragma once

#include <span>
#include <vector>

#include "drf/dr_params.hpp"
#include "drf/jacobi.hpp"
#include "drf/report.hpp"

namespace drf {

// Elementary spherical function phi_lambda(t) = phi_{2 lambda}^{alpha,beta}(t/2).
double spherical_phi(const DRParams& p, double lam, double t,
                     const JacobiOptions& opt = {});
PhiEval spherical_phi_eval(const DRParams& p, double lam, double t,
                           const JacobiOptions& opt = {});

// phi_lambda at a sorted list of radii t, one outward sweep per lambda.
std::vector<double> spherical_phi_multi(const DRParams& p, double lam,
                                        std::span<const double> t_sorted,
                                        const JacobiOptions& opt = {});

// Plancherel density |c(lambda)|^{-2}: the Jacobi c-function at spectral
// variable 2*lambda, times the calibrated Parseval constant (1 if the params
// have not been calibrated yet).  A small floor keeps lambda away from the
// gamma pole at 0.
double plancherel_density(const DRParams& p, double lam);

// Pointwise audit of the three phi_lambda bounds: |phi| <= 1, the quadratic
// bound on 1 - phi, and the positive lower bound of |1 - phi| on lambda*t >= 1.
CheckReport phi_bounds_audit(const DRParams& p, std::span<const double> lambda_grid,
                             std::span<const double> t_grid, double slack = 1e-10);

// Empirical infimum of |1 - phi_lambda(t)| over {lambda t >= 1} within
// [grid refinement near lambda*t = 1 included].  Throws below 1e-6.
double lower_bound_constant(const DRParams& p, double lambda_max, double t_max,
                            int grid_points = 48);

}  // namespace drf
