#include "drf/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "drf/quadrature.hpp"

namespace drf {

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}

// Ratio of the Zygmund integral to its target at every point of a deep log
// grid, then sup restricted to t >= t_lo for a ladder of levels t_lo =
// base * 2^{-j}.  Members show geometrically decaying sup increments per
// halving; log-divergent integrals show constant increments.
struct SupLadder {
    std::vector<double> sup;  // per level, nondecreasing
};

ZygmundResult decide_from_ladder(const SupLadder& lad) {
    ZygmundResult r;
    const auto& s = lad.sup;
    double deepest = s.back();
    std::vector<double> d;
    for (std::size_t j = 1; j < s.size(); ++j) d.push_back(s[j] - s[j - 1]);
    // Geometric-ratio estimate over the last few nonzero increments.
    double last = d.back();
    if (last <= 1e-9 * std::max(deepest, 1e-12)) {
        r.member = deepest < 1e6;
        r.constant = deepest;
        r.refined_constant = deepest;
        return r;
    }
    std::vector<double> ratios;
    for (std::size_t j = d.size() - 1; j > 0 && ratios.size() < 6; --j) {
        if (d[j - 1] > 0 && d[j] > 0) ratios.push_back(d[j] / d[j - 1]);
    }
    double rho = 0;
    for (double q : ratios) rho += q;
    rho = ratios.empty() ? 1.0 : rho / ratios.size();
    if (rho < 0.99 && deepest < 1e6) {
        r.member = true;
        r.constant = deepest + last * rho / (1.0 - rho);  // geometric extrapolation
        r.refined_constant = deepest;
    } else {
        r.member = false;
        r.constant = deepest;
        r.refined_constant = deepest;
    }
    return r;
}

SupLadder z0_ladder(const Modulus& w, double t_base, int levels) {
    const double t_deep = t_base * std::pow(0.5, levels);
    const double t0 = 1e-6 * t_deep;
    MOIndex mo = mo_lower_index(w);
    // Below t0 the modulus is locally ~ s^{m(w)}, so int_0^{t0} w/s ds is
    // approximately w(t0)/m(w); exact for pure powers, and the head carries a
    // (t0/t)^{m} share of any ratio, so the approximation error is negligible.
    double head = w(t0) / std::max(mo.value, 1e-3);
    int n = 10 * levels + 64;
    std::vector<double> ts = log_grid(t_deep, w.delta0, n);
    std::vector<double> ratio(n);
    double acc = head, prev = t0;
    for (int i = 0; i < n; ++i) {
        acc += integrate_adaptive([&w](double s) { return w(s) / s; }, prev, ts[i], 1e-10)
                   .value;
        prev = ts[i];
        ratio[i] = acc / w(ts[i]);
    }
    SupLadder lad;
    for (int j = 0; j <= levels; ++j) {
        double lo = t_base * std::pow(0.5, j);
        double sup = 0;
        for (int i = 0; i < n; ++i)
            if (ts[i] >= lo * (1 - 1e-12)) sup = std::max(sup, ratio[i]);
        lad.sup.push_back(sup);
    }
    return lad;
}

SupLadder zk_ladder(const Modulus& w, double t_base, int levels) {
    const double k = w.order_k;
    const double t_deep = t_base * std::pow(0.5, levels);
    int n = 10 * levels + 64;
    std::vector<double> ts = log_grid(t_deep, w.delta0 * (1.0 - 1e-12), n);
    std::vector<double> ratio(n);
    double acc = 0, prev = w.delta0;
    for (int i = n - 1; i >= 0; --i) {
        acc += integrate_adaptive(
                   [&w, k](double s) { return w(s) * std::pow(s, -1.0 - k); }, ts[i], prev,
                   1e-10)
                   .value;
        prev = ts[i];
        ratio[i] = std::pow(ts[i], k) * acc / w(ts[i]);
    }
    SupLadder lad;
    for (int j = 0; j <= levels; ++j) {
        double lo = t_base * std::pow(0.5, j);
        double sup = 0;
        for (int i = 0; i < n; ++i)
            if (ts[i] >= lo * (1 - 1e-12)) sup = std::max(sup, ratio[i]);
        lad.sup.push_back(sup);
    }
    return lad;
}

}  // namespace

double Modulus::operator()(double t) const {
    if (t < 0) throw std::invalid_argument("Modulus: negative argument");
    if (t <= delta0) return core(t);
    switch (tail) {
        case ModulusTail::constant_extension:
        case ModulusTail::bounded_below:
            return core(delta0);
        case ModulusTail::custom:
            return tail_fn(t);
    }
    return core(delta0);
}

Modulus standard_modulus(ModulusKind kind, double alpha, double gamma, double k,
                         double delta0) {
    if (!(alpha > 0 && alpha <= k))
        throw std::invalid_argument(
            "standard_modulus: alpha must lie in (0, k] for a kth-order modulus");
    if (!(delta0 > 0 && delta0 < 1))
        throw std::invalid_argument("standard_modulus: delta0 must lie in (0, 1)");
    if (kind == ModulusKind::power_loglog && delta0 >= std::exp(-std::exp(1.0)))
        throw std::invalid_argument(
            "standard_modulus: power_loglog needs delta0 < e^{-e} so ln ln(1/t) > 0");
    Modulus w;
    w.order_k = k;
    w.delta0 = delta0;
    switch (kind) {
        case ModulusKind::power:
            w.core = [alpha](double t) { return std::pow(t, alpha); };
            w.label = "t^a";
            break;
        case ModulusKind::power_log:
            w.core = [alpha, gamma](double t) {
                return t == 0 ? 0.0 : std::pow(t, alpha) * std::pow(std::log(1.0 / t), gamma);
            };
            w.label = "t^a (ln 1/t)^g";
            break;
        case ModulusKind::power_loglog:
            w.core = [alpha, gamma](double t) {
                return t == 0 ? 0.0
                              : std::pow(t, alpha) *
                                    std::pow(std::log(std::log(1.0 / t)), gamma);
            };
            w.label = "t^a (ln ln 1/t)^g";
            break;
    }
    return w;
}

MonotonicityConstants monotonicity_audit(const Modulus& w, int grid_points, double t_min) {
    std::vector<double> ts = log_grid(t_min, w.delta0, grid_points);
    MonotonicityConstants out;
    double prefix_max_w = 0, prefix_min_g = 1e300;
    for (double t : ts) {
        double wv = w(t);
        double g = wv / std::pow(t, w.order_k);
        prefix_max_w = std::max(prefix_max_w, wv);
        out.c_incr = std::max(out.c_incr, prefix_max_w / wv);
        out.c_decr = std::max(out.c_decr, g / prefix_min_g);
        prefix_min_g = std::min(prefix_min_g, g);
    }
    return out;
}

ZygmundResult zygmund_z0(const Modulus& w, double t_min) {
    return decide_from_ladder(z0_ladder(w, t_min, 20));
}

ZygmundResult zygmund_zk(const Modulus& w, double t_min) {
    return decide_from_ladder(zk_ladder(w, t_min, 20));
}

MOIndex mo_lower_index(const Modulus& w) {
    const double hs[3] = {0.5, 0.25, 0.125};
    double log_inf[3];
    // Slowly varying factors bias the h-slope by O(1 / ln(1/t)); push the
    // probe grid deep so the bias is below the reported error bar.
    std::vector<double> ts = log_grid(1e-60, 0.99 * w.delta0, 160);
    for (int j = 0; j < 3; ++j) {
        double inf = 1e300;
        for (double t : ts) inf = std::min(inf, w(hs[j] * t) / w(t));
        log_inf[j] = std::log(inf);
    }
    const double l2 = std::log(2.0);
    double slope12 = (log_inf[0] - log_inf[1]) / l2;
    double slope23 = (log_inf[1] - log_inf[2]) / l2;
    MOIndex out;
    out.value = slope23;
    out.error = std::abs(slope23 - slope12) + 1e-6;
    if (!std::isfinite(out.value))
        throw std::runtime_error("mo_lower_index: extrapolation did not stabilize");
    return out;
}

double almost_increasing_constant(const Modulus& w, double mu, int grid_points,
                                  double t_min) {
    std::vector<double> ts = log_grid(t_min, w.delta0, grid_points);
    double c = 1.0, prefix_max = 0;
    for (double t : ts) {
        double g = w(t) / std::pow(t, mu);
        prefix_max = std::max(prefix_max, g);
        c = std::max(c, prefix_max / g);
    }
    return c;
}

DyadicSum dyadic_sum_bound(const Modulus& w, double t, double mu) {
    MOIndex mo = mo_lower_index(w);
    if (!(mu > 0 && mu < mo.value))
        throw std::invalid_argument("dyadic_sum_bound: need 0 < mu < m(w) = " +
                                    std::to_string(mo.value));
    DyadicSum out;
    double x = t;
    for (int i = 0; i < 20000; ++i) {
        double term = w(x) * w(x);
        out.sum += term;
        ++out.terms;
        x *= 0.5;
        if (term < 1e-10 * out.sum && i > 2) break;
        if (i == 19999)
            throw std::runtime_error("dyadic_sum_bound: partial sum failed to converge");
    }
    double c = almost_increasing_constant(w, mu);
    out.bound = c * c * w(t) * w(t) / (1.0 - std::pow(2.0, -2.0 * mu));
    return out;
}

}  // namespace drf
