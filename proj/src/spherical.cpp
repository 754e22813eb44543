#include "drf/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drf {

double spherical_phi(const DRParams& p, double lam, double t, const JacobiOptions& opt) {
    return jacobi_phi(p.jacobi_alpha, p.jacobi_beta, 2.0 * lam, 0.5 * t, opt);
}

PhiEval spherical_phi_eval(const DRParams& p, double lam, double t,
                           const JacobiOptions& opt) {
    return jacobi_phi_eval(p.jacobi_alpha, p.jacobi_beta, 2.0 * lam, 0.5 * t, opt);
}

std::vector<double> spherical_phi_multi(const DRParams& p, double lam,
                                        std::span<const double> t_sorted,
                                        const JacobiOptions& opt) {
    std::vector<double> r(t_sorted.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = 0.5 * t_sorted[i];
    return jacobi_phi_multi(p.jacobi_alpha, p.jacobi_beta, 2.0 * lam, r, opt);
}

double plancherel_density(const DRParams& p, double lam) {
    const double lam_floor = 1e-8;
    double mu = 2.0 * std::max(lam, lam_floor);
    double c = p.plancherel_const > 0 ? p.plancherel_const : 1.0;
    return c * jacobi_c_inv_sq(p.jacobi_alpha, p.jacobi_beta, mu);
}

CheckReport phi_bounds_audit(const DRParams& p, std::span<const double> lambda_grid,
                             std::span<const double> t_grid, double slack) {
    CheckReport rep;
    rep.check_name = "lemma-phi-bounds";
    rep.params = p;
    rep.tolerances["slack"] = slack;

    std::vector<double> ts(t_grid.begin(), t_grid.end());
    std::sort(ts.begin(), ts.end());

    double worst_b1 = -1e300;  // |phi| - 1
    double worst_b2 = -1e300;  // |1-phi| - (t^2/2)(4 lam^2 + Q^2/4)
    double inf_b3 = 1e300;     // |1-phi| over lam*t >= 1

    for (double lam : lambda_grid) {
        std::vector<double> phi = spherical_phi_multi(p, lam, ts);
        double row_max_abs = 0;
        for (std::size_t j = 0; j < ts.size(); ++j) {
            const double t = ts[j], v = phi[j];
            row_max_abs = std::max(row_max_abs, std::abs(v));
            worst_b1 = std::max(worst_b1, std::abs(v) - 1.0);
            double quad = 0.5 * t * t * (4.0 * lam * lam + 0.25 * p.Q * p.Q);
            worst_b2 = std::max(worst_b2, std::abs(1.0 - v) - quad);
            if (lam * t >= 1.0) inf_b3 = std::min(inf_b3, std::abs(1.0 - v));
        }
        rep.push_row(lam, row_max_abs, 1.0);
    }
    rep.finalize_ratios();

    rep.hypotheses.push_back({"phi-bounded-by-one", worst_b1 <= slack, worst_b1});
    rep.hypotheses.push_back({"quadratic-bound", worst_b2 <= slack, worst_b2});
    rep.hypotheses.push_back({"lower-bound-positive", inf_b3 > 0 && inf_b3 < 1e300, inf_b3});
    rep.stats["worst_slack_bullet1"] = worst_b1;
    rep.stats["worst_slack_bullet2"] = worst_b2;
    rep.stats["lower_bound_constant"] = inf_b3;
    rep.verdict = rep.hypotheses_ok() ? Verdict::pass : Verdict::fail;
    return rep;
}

double lower_bound_constant(const DRParams& p, double lambda_max, double t_max,
                            int grid_points) {
    if (!(lambda_max >= 1 && t_max >= 1))
        throw std::invalid_argument("lower_bound_constant: lambda_max, t_max >= 1 required");
    double inf = 1e300;
    const double lam_lo = 1.0 / t_max;
    for (int i = 0; i < grid_points; ++i) {
        double lam = lam_lo * std::pow(lambda_max / lam_lo, double(i) / (grid_points - 1));
        std::vector<double> ts;
        // Refinement near the corner lam*t = 1, then a log sweep up to t_max.
        for (int j = 0; j <= 8; ++j) {
            double t = (1.0 + j / 8.0) / lam;
            if (t <= t_max) ts.push_back(t);
        }
        double t0 = std::min(2.0 / lam, t_max);
        for (int j = 0; j < grid_points; ++j)
            ts.push_back(t0 * std::pow(t_max / t0, double(j) / (grid_points - 1)));
        std::sort(ts.begin(), ts.end());
        std::vector<double> phi = spherical_phi_multi(p, lam, ts);
        for (std::size_t j = 0; j < ts.size(); ++j)
            if (lam * ts[j] >= 1.0) inf = std::min(inf, std::abs(1.0 - phi[j]));
    }
    if (!(inf > 1e-6))
        throw std::runtime_error(
            "lower_bound_constant: empirical infimum below 1e-6; evaluation bug suspected");
    return inf;
}

}  // namespace drf
