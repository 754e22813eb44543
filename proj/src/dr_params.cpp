#include "drf/dr_params.hpp"

#include <cmath>
#include <stdexcept>

#include "drf/jacobi.hpp"
#include "drf/quadrature.hpp"

namespace drf {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sphere_area(int n) {
    // Surface area of the unit sphere in R^n.
    return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return s;
}

}  // namespace

DRParams derive_params(int m, int k) {
    if (m < 2) throw std::invalid_argument("derive_params: m must be >= 2 (got " +
                                           std::to_string(m) + ")");
    if (m % 2 != 0)
        throw std::invalid_argument("derive_params: m must be even (got " +
                                    std::to_string(m) + "); dim(v) of an H-type algebra is even");
    if (k < 1) throw std::invalid_argument("derive_params: k must be >= 1 (got " +
                                           std::to_string(k) + ")");
    DRParams p;
    p.m = m;
    p.k = k;
    p.Q = 0.5 * m + k;
    p.rho = 0.5 * p.Q;
    p.d = m + k + 1;
    auto [a, b] = resolve_jacobi_indices(m, k, &p.index_audit);
    p.jacobi_alpha = a;
    p.jacobi_beta = b;
    return p;
}

double eigen_residual(int m, int k, double alpha, double beta,
                      std::span<const double> lams, std::span<const double> ts,
                      double h) {
    const double Q = 0.5 * m + k;
    double worst = 0;
    for (double lam : lams) {
        for (double t : ts) {
            double f[5];
            for (int j = -2; j <= 2; ++j)
                f[j + 2] = jacobi_phi(alpha, beta, 2.0 * lam, 0.5 * (t + j * h));
            double d2 = (-f[4] + 16 * f[3] - 30 * f[2] + 16 * f[1] - f[0]) / (12 * h * h);
            double d1 = (-f[4] + 8 * f[3] - 8 * f[1] + f[0]) / (12 * h);
            double drift = 0.5 * (m + k) / std::tanh(0.5 * t) + 0.5 * k * std::tanh(0.5 * t);
            double res = d2 + drift * d1 + (lam * lam + 0.25 * Q * Q) * f[2];
            worst = std::max(worst, std::abs(res) / (1.0 + lam * lam));
        }
    }
    return worst;
}

std::pair<double, double> resolve_jacobi_indices(int m, int k, IndexAudit* audit) {
    const double beta = 0.5 * (k - 1);
    const double a_paper = 0.5 * (m + k + 1);
    const double a_eigen = 0.5 * (m + k - 1);
    const double lams[] = {0.5, 1.0, 2.0};
    const double ts[] = {0.5, 1.0, 1.5, 2.0};
    const double tol = 1e-4;

    double res_paper = eigen_residual(m, k, a_paper, beta, lams, ts);
    double res_eigen = a_eigen > beta ? eigen_residual(m, k, a_eigen, beta, lams, ts)
                                      : res_paper + 1.0;

    double chosen, res_chosen;
    if (res_eigen <= tol) {
        chosen = a_eigen;
        res_chosen = res_eigen;
    } else if (res_paper <= tol) {
        chosen = a_paper;
        res_chosen = res_paper;
    } else {
        throw std::runtime_error(
            "resolve_jacobi_indices: neither index candidate passes the eigen-residual audit");
    }
    if (audit) {
        audit->alpha_paper_literal = a_paper;
        audit->alpha_chosen = chosen;
        audit->beta = beta;
        audit->residual_paper = res_paper;
        audit->residual_chosen = res_chosen;
    }
    return {chosen, beta};
}

double poisson_kernel(const DRParams& p, double t, const NPoint& n, double C) {
    if (int(n.X.size()) != p.m || int(n.Z.size()) != p.k)
        throw std::invalid_argument("poisson_kernel: NPoint dimensions do not match params");
    const double a = std::exp(t);
    const double bx = a + 0.25 * norm2(n.X);
    return C * std::pow(a, p.Q) * std::pow(bx * bx + norm2(n.Z), -p.Q);
}

double poisson_normalization_constant(const DRParams& p, double rel_tol) {
    if (p.m + p.k > 6)
        throw std::invalid_argument(
            "poisson_normalization_constant: m + k <= 6 required for desk-scale quadrature");
    const double Q = p.Q;
    const int m = p.m, k = p.k;
    auto inner = [&](double u) {
        const double bx = 1.0 + 0.25 * u * u;
        auto g = [&](double v) {
            return std::pow(v, k - 1) * std::pow(bx * bx + v * v, -Q);
        };
        AdaptiveResult r = integrate_to_infinity(g, 0.0, 0.1 * rel_tol, 4.0 * bx);
        return std::pow(u, m - 1) * r.value;
    };
    AdaptiveResult outer = integrate_to_infinity(inner, 0.0, rel_tol, 8.0);
    if (!outer.converged)
        throw std::runtime_error(
            "poisson_normalization_constant: quadrature did not converge, abs_err=" +
            std::to_string(outer.abs_err));
    const double mass = sphere_area(m) * sphere_area(k) * outer.value;
    return 1.0 / mass;
}

double volume_density(const DRParams& p, double t) {
    if (t < 0) throw std::invalid_argument("volume_density: t must be nonnegative");
    return std::pow(2.0 * std::sinh(0.5 * t), p.m + p.k) *
           std::pow(2.0 * std::cosh(0.5 * t), p.k);
}

double volume_density_log_derivative(const DRParams& p, double t) {
    return 0.5 * (p.m + p.k) / std::tanh(0.5 * t) + 0.5 * p.k * std::tanh(0.5 * t);
}

}  // namespace drf
