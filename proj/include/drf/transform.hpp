#pragma once

#include <functional>
#include <optional>
#include <string>

#include "drf/dr_params.hpp"
#include "drf/quadrature.hpp"
#include "drf/spherical.hpp"

namespace drf {

enum class Smoothness { smooth, compactly_supported, gaussian_like };

// |fhat(lambda)| ~ amplitude * lambda^{-gamma_tail} * (ln lambda)^{-log_power}
// beyond lambda_ref.
struct TailModel {
    double amplitude = 0;
    double gamma_tail = 0;
    double log_power = 0;
    double lambda_ref = 1;
    double value(double lam) const;
};

// Radial profile on [0, t_max] with its quadrature grid.  Values are cached at
// the grid nodes; `value` falls back to the profile callable off-grid.
struct RadialFunction {
    std::function<double(double)> profile;
    double t_max = 0;
    Smoothness hint = Smoothness::smooth;
    QuadGrid grid;
    std::vector<double> values;
    double value(double t) const;
};

struct SpectralFunction {
    std::function<double(double)> profile;
    double lambda_max = 0;
    std::optional<TailModel> tail;
    QuadGrid grid;
    std::vector<double> values;
    double value(double lam) const;  // tail model beyond lambda_max
};

QuadGrid default_radial_grid(double t_max);
QuadGrid default_spectral_grid(double lambda_max);

// Validating constructors: the radial one checks the weighted L2 mass is
// finite, the spectral one checks the last-decade samples fit the declared
// tail model within 10%.
RadialFunction make_radial(const DRParams& p, std::function<double(double)> profile,
                           double t_max, Smoothness hint, QuadGrid grid = {});
SpectralFunction make_spectral(std::function<double(double)> profile, double lambda_max,
                               std::optional<TailModel> tail, QuadGrid grid = {});

// fhat(lambda) = int_0^{t_max} f(t) phi_lambda(t) A(t) dt at the grid nodes.
SpectralFunction spherical_transform(const DRParams& p, const RadialFunction& f,
                                     const QuadGrid& lambda_grid,
                                     std::optional<TailModel> tail = std::nullopt);

// f(t) = int g(lambda) phi_lambda(t) |c(lambda)|^{-2} dlambda over the sampled
// spectral grid.  Requires calibration; with a tail model, gamma_tail > d/2.
RadialFunction inverse_transform(const DRParams& p, const SpectralFunction& g,
                                 const QuadGrid& t_grid);

double lp_norm(const DRParams& p, const RadialFunction& f, double p_exp);

// M_t f via the multiplier phi_lambda(t) on the transform side.
RadialFunction spherical_mean(const DRParams& p, const RadialFunction& f, double t,
                              const QuadGrid* lambda_grid = nullptr);

// ||M_t f - f||_2 via the spectral route; the modeled tail enters as a
// bracket: |1-phi|^2 in [c1_sq, 4] beyond the sampled range (point estimate
// uses 1, the large-lambda*t mean of |1-phi|^2).
struct DeviationResult {
    double value = 0;
    double lower = 0;
    double upper = 0;
};
DeviationResult lip_deviation(const DRParams& p, const SpectralFunction& fhat, double t,
                              double c1_sq = 0.0);

// Direct-space route: ||M_t f - f||_p.
double lip_deviation_direct(const DRParams& p, const RadialFunction& f, double t,
                            double p_exp);

// int |fhat|^2 |c|^{-2} dlambda including the modeled tail.
double spectral_energy(const DRParams& p, const SpectralFunction& fhat);

// Sets poisson_const and plancherel_const (Parseval on a reference Gaussian).
void calibrate(DRParams& p);

// Plain-text two-column profile records with a metadata header line.
void write_radial(const std::string& path, const DRParams& p, const RadialFunction& f);
RadialFunction read_radial(const std::string& path, const DRParams& p);

}  // namespace drf
