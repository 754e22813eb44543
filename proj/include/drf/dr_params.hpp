#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace drf {

struct NPoint {
    std::vector<double> X;  // length m
    std::vector<double> Z;  // length k
};

struct IndexAudit {
    double alpha_paper_literal = 0;  // (m+k+1)/2
    double alpha_chosen = 0;
    double beta = 0;
    double residual_paper = 0;   // worst scaled eigen-residual per candidate
    double residual_chosen = 0;
};

// Structural constants of the harmonic NA space S = N x A with dim v = m
// (even) and center dimension k (the paper writes l for k in places; we keep
// a single field).  Immutable after derive_params + calibration.
struct DRParams {
    int m = 0;
    int k = 0;
    double Q = 0;    // homogeneous dimension m/2 + k
    double rho = 0;  // Q/2
    int d = 0;       // dim S = m + k + 1
    double jacobi_alpha = 0;
    double jacobi_beta = 0;
    IndexAudit index_audit{};

    // Calibrated once per space: Poisson unit-mass constant and the Parseval
    // constant in front of |c(lambda)|^{-2}.  Zero means not yet calibrated.
    double poisson_const = 0;
    double plancherel_const = 0;
};

DRParams derive_params(int m, int k);

// Picks the Jacobi index pair numerically: beta = (k-1)/2 always; alpha is
// chosen between the two candidates (m+k+1)/2 and (m+k-1)/2 by the
// eigenfunction-residual audit.  Throws if neither candidate passes.
std::pair<double, double> resolve_jacobi_indices(int m, int k, IndexAudit* audit = nullptr);

// Worst residual of rad Delta_S phi + (lam^2 + Q^2/4) phi over the given
// (lam, t) grid, with rad Delta_S discretized by 5-point central differences,
// scaled by 1/(1 + lam^2).  Evaluates phi with the supplied index pair.
double eigen_residual(int m, int k, double alpha, double beta,
                      std::span<const double> lams, std::span<const double> ts,
                      double h = 0.02);

double poisson_kernel(const DRParams& p, double t, const NPoint& n, double C);

// C with int_N P_1 = 1, by 2-d quadrature over (|X|, |Z|) with sphere-area
// weights.  Requires m + k <= 6.
double poisson_normalization_constant(const DRParams& p, double rel_tol = 1e-8);

// Radial volume density A(t) = (2 sinh(t/2))^{m+k} (2 cosh(t/2))^{k}; the
// weight whose logarithmic derivative is the drift coefficient of rad Delta_S.
double volume_density(const DRParams& p, double t);
double volume_density_log_derivative(const DRParams& p, double t);

}  // namespace drf
