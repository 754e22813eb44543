#include "drf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace drf {

namespace {

// Newton iteration on the Legendre polynomial P_n; standard construction.
void build_gl(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

struct GLCache {
    std::mutex mu;
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> table;
    // map nodes stay put under insertion, so returned references outlive the lock
    const std::pair<std::vector<double>, std::vector<double>>& get(int n) {
        std::lock_guard<std::mutex> lock(mu);
        auto it = table.find(n);
        if (it == table.end()) {
            std::pair<std::vector<double>, std::vector<double>> nw;
            build_gl(n, nw.first, nw.second);
            it = table.emplace(n, std::move(nw)).first;
        }
        return it->second;
    }
};

GLCache& cache() {
    static GLCache c;
    return c;
}

double panel_gl(const std::function<double(double)>& f, double a, double b, int order) {
    const auto& [x, w] = cache().get(order);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0;
    for (int i = 0; i < order; ++i) s += w[i] * f(c + h * x[i]);
    return s * h;
}

void adapt_rec(const std::function<double(double)>& f, double a, double b,
               double tol_abs, int depth, int max_depth, long& budget,
               AdaptiveResult& out) {
    double coarse = panel_gl(f, a, b, 12);
    double fine = panel_gl(f, a, 0.5 * (a + b), 12) + panel_gl(f, 0.5 * (a + b), b, 12);
    double err = std::abs(fine - coarse);
    --budget;
    // A noisy or non-finite integrand must fail cleanly, not recurse forever.
    if (err < tol_abs || depth >= max_depth || budget <= 0 || !std::isfinite(err)) {
        out.value += fine;
        out.abs_err += err;
        if (err >= tol_abs || !std::isfinite(err)) out.converged = false;
        return;
    }
    adapt_rec(f, a, 0.5 * (a + b), 0.5 * tol_abs, depth + 1, max_depth, budget, out);
    adapt_rec(f, 0.5 * (a + b), b, 0.5 * tol_abs, depth + 1, max_depth, budget, out);
}

}  // namespace

const std::vector<double>& gl_nodes(int order) { return cache().get(order).first; }
const std::vector<double>& gl_weights(int order) { return cache().get(order).second; }

QuadGrid::QuadGrid(std::vector<Panel> panels, int order) : panels_(std::move(panels)) {
    if (order < 2) throw std::invalid_argument("QuadGrid: order must be >= 2");
    const auto& x = gl_nodes(order);
    const auto& w = gl_weights(order);
    for (const Panel& p : panels_) {
        if (!(p.b > p.a)) throw std::invalid_argument("QuadGrid: empty panel");
        const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
        for (int i = 0; i < order; ++i) {
            nodes_.push_back(c + h * x[i]);
            weights_.push_back(h * w[i]);
        }
    }
}

QuadGrid QuadGrid::uniform(double a, double b, int n_panels, int order) {
    std::vector<Panel> ps;
    for (int i = 0; i < n_panels; ++i)
        ps.push_back({a + (b - a) * i / n_panels, a + (b - a) * (i + 1) / n_panels});
    return QuadGrid(std::move(ps), order);
}

QuadGrid QuadGrid::logspaced(double a, double b, int n_panels, int order) {
    if (!(a > 0 && b > a)) throw std::invalid_argument("QuadGrid::logspaced: need 0 < a < b");
    std::vector<Panel> ps;
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n_panels; ++i)
        ps.push_back({std::exp(la + (lb - la) * i / n_panels),
                      std::exp(la + (lb - la) * (i + 1) / n_panels)});
    return QuadGrid(std::move(ps), order);
}

QuadGrid QuadGrid::refined_origin(double b, int n_refine, int n_body, int order) {
    // Dyadic panels [b 2^{-j-1}, b 2^{-j}] near 0, then uniform panels on the
    // remaining [b/2, b] body scaled so the first body panel starts at b/2.
    std::vector<Panel> ps;
    double edge = b * std::pow(0.5, n_refine);
    ps.push_back({0.0, edge});
    for (int j = n_refine - 1; j >= 1; --j) {
        double hi = b * std::pow(0.5, j);
        ps.push_back({edge, hi});
        edge = hi;
    }
    for (int i = 0; i < n_body; ++i)
        ps.push_back({edge + (b - edge) * i / n_body, edge + (b - edge) * (i + 1) / n_body});
    return QuadGrid(std::move(ps), order);
}

double QuadGrid::integrate(const std::function<double(double)>& f) const {
    double s = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) s += weights_[i] * f(nodes_[i]);
    return s;
}

double QuadGrid::integrate_values(std::span<const double> v) const {
    if (v.size() != nodes_.size())
        throw std::invalid_argument("QuadGrid::integrate_values: size mismatch");
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * v[i];
    return s;
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol, int max_depth) {
    double scale = std::abs(panel_gl(f, a, b, 12));
    if (scale == 0) scale = 1e-300;
    AdaptiveResult out;
    out.converged = true;
    long budget = 200000;
    adapt_rec(f, a, b, rel_tol * scale, 0, max_depth, budget, out);
    double ref = std::max(std::abs(out.value), scale);
    if (out.abs_err > 10 * rel_tol * ref) out.converged = false;
    return out;
}

AdaptiveResult integrate_to_infinity(const std::function<double(double)>& f,
                                     double a, double rel_tol, double initial_cut) {
    double cut = initial_cut > a ? initial_cut : std::max(2.0 * std::abs(a), a + 1.0);
    AdaptiveResult acc = integrate_adaptive(f, a, cut, rel_tol);
    for (int iter = 0; iter < 60; ++iter) {
        AdaptiveResult inc = integrate_adaptive(f, cut, 2.0 * cut, rel_tol);
        acc.value += inc.value;
        acc.abs_err += inc.abs_err;
        cut *= 2.0;
        if (std::abs(inc.value) < rel_tol * std::abs(acc.value)) {
            AdaptiveResult inc2 = integrate_adaptive(f, cut, 2.0 * cut, rel_tol);
            if (std::abs(inc2.value) < rel_tol * std::abs(acc.value)) {
                acc.value += inc2.value;
                acc.converged = acc.converged && inc.converged;
                return acc;
            }
            acc.value += inc2.value;
            cut *= 2.0;
        }
    }
    acc.converged = false;
    return acc;
}

}  // namespace drf
