#pragma once

#include <functional>
#include <string>

namespace drf {

enum class ModulusKind { power, power_log, power_loglog };
enum class ModulusTail { constant_extension, bounded_below, custom };

// kth-order modulus of continuity: continuous, core(0) = 0, almost increasing,
// core(t)/t^k almost decreasing on [0, delta0].  order_k is a real number and
// is unrelated to the center dimension in DRParams.
struct Modulus {
    double order_k = 1;
    double delta0 = 0.5;
    std::function<double(double)> core;  // on [0, delta0]
    ModulusTail tail = ModulusTail::constant_extension;
    double tail_lower_bound = 0;              // for bounded_below
    std::function<double(double)> tail_fn;    // for custom
    std::string label;

    double operator()(double t) const;
};

Modulus standard_modulus(ModulusKind kind, double alpha, double gamma, double k,
                         double delta0);

struct MonotonicityConstants {
    double c_incr = 1;  // smallest C with w(t) <= C w(s) for t <= s
    double c_decr = 1;  // same for w(t)/t^k almost decreasing
};

// Empirical constants over all pairs of a log-spaced grid in (0, delta0].
MonotonicityConstants monotonicity_audit(const Modulus& w, int grid_points = 400,
                                         double t_min = 1e-6);

struct ZygmundResult {
    bool member = false;
    double constant = 0;          // empirical sup on the base grid
    double refined_constant = 0;  // after one grid-refinement halving
};

// Z^0: sup_t (int_0^t w(s)/s ds) / w(t); member iff stable under refinement.
ZygmundResult zygmund_z0(const Modulus& w, double t_min = 1e-4);
// Z_k: sup_t t^k (int_t^{delta0} w(s) s^{-1-k} ds) / w(t).
ZygmundResult zygmund_zk(const Modulus& w, double t_min = 1e-4);

struct MOIndex {
    double value = 0;
    double error = 0;
};

// Lower Matuszewska-Orlicz index, extrapolated over h in {1/2, 1/4, 1/8}.
MOIndex mo_lower_index(const Modulus& w);

// Almost-increasing constant of w(t)/t^mu on (0, delta0].
double almost_increasing_constant(const Modulus& w, double mu, int grid_points = 400,
                                  double t_min = 1e-8);

struct DyadicSum {
    double sum = 0;    // sum_i w(t/2^i)^2 to convergence
    double bound = 0;  // C_incr^2 w(t)^2 / (1 - 4^{-mu})
    int terms = 0;
};

// Requires mu < m(w); throws if the partial sum fails to converge.
DyadicSum dyadic_sum_bound(const Modulus& w, double t, double mu);

}  // namespace drf
