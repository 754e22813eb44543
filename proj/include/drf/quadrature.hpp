#pragma once

#include <functional>
#include <span>
#include <vector>

namespace drf {

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
const std::vector<double>& gl_nodes(int order);
const std::vector<double>& gl_weights(int order);

struct Panel {
    double a;
    double b;
};

// Composite Gauss-Legendre rule over a fixed list of panels.  The node set is
// the primary data: transforms sample integrands exactly at these nodes, so
// integrals of sampled functions reduce to weighted sums.
class QuadGrid {
public:
    QuadGrid() = default;
    QuadGrid(std::vector<Panel> panels, int order);

    static QuadGrid uniform(double a, double b, int n_panels, int order);
    // Log-spaced panels over [a, b], a > 0.
    static QuadGrid logspaced(double a, double b, int n_panels, int order);
    // [0, b] with panels geometrically refined toward 0.
    static QuadGrid refined_origin(double b, int n_refine, int n_body, int order);

    const std::vector<Panel>& panels() const { return panels_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return nodes_.size(); }

    double integrate(const std::function<double(double)>& f) const;
    double integrate_values(std::span<const double> v) const;

private:
    std::vector<Panel> panels_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

struct AdaptiveResult {
    double value = 0;
    double abs_err = 0;
    bool converged = false;
};

// Adaptive panel-bisection integration; error estimated by comparing two
// Gauss orders on each panel.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f,
                                  double a, double b, double rel_tol,
                                  int max_depth = 30);

// Integral over [a, infinity): doubles the cutoff until the increment drops
// below rel_tol of the accumulated value.
AdaptiveResult integrate_to_infinity(const std::function<double(double)>& f,
                                     double a, double rel_tol,
                                     double initial_cut = 0.0);

}  // namespace drf
