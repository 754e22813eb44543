#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "drf/dr_params.hpp"
#include "drf/quadrature.hpp"

using namespace drf;

TEST_CASE("structural constants for the two reference spaces") {
    DRParams p = derive_params(2, 1);
    CHECK(p.Q == 2.0);
    CHECK(p.rho == 1.0);
    CHECK(p.d == 4);
    CHECK(p.jacobi_alpha == 1.0);
    CHECK(p.jacobi_beta == 0.0);

    DRParams q = derive_params(4, 3);
    CHECK(q.Q == 5.0);
    CHECK(q.rho == 2.5);
    CHECK(q.d == 8);
    CHECK(q.jacobi_alpha == 3.0);
    CHECK(q.jacobi_beta == 1.0);
}

TEST_CASE("invalid dimensions are rejected") {
    CHECK_THROWS(derive_params(3, 1));  // odd m
    CHECK_THROWS(derive_params(2, 0));
    CHECK_THROWS(derive_params(0, 1));
}

TEST_CASE("index invariants hold for a family of spaces") {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {4, 1}, {4, 3}, {6, 2}}) {
        DRParams p = derive_params(m, k);
        CHECK(p.jacobi_alpha + p.jacobi_beta + 1.0 == doctest::Approx(p.Q).epsilon(1e-15));
        CHECK(p.jacobi_alpha > p.jacobi_beta);
        CHECK(p.jacobi_beta > -0.5);
        CHECK(p.jacobi_beta == doctest::Approx((k - 1) / 2.0));
    }
}

TEST_CASE("index disambiguation audit separates the two candidates sharply") {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{2, 1}, {4, 3}}) {
        DRParams p = derive_params(m, k);
        CHECK(p.index_audit.alpha_chosen == doctest::Approx((m + k - 1) / 2.0));
        CHECK(p.index_audit.alpha_paper_literal == doctest::Approx((m + k + 1) / 2.0));
        CHECK(p.index_audit.residual_chosen < 1e-4);
        CHECK(p.index_audit.residual_paper > 1e3 * p.index_audit.residual_chosen);
    }
}

TEST_CASE("poisson kernel pointwise properties") {
    DRParams p = derive_params(2, 1);
    NPoint origin{{0.0, 0.0}, {0.0}};
    CHECK(poisson_kernel(p, 0.0, origin, 3.5) == doctest::Approx(3.5).epsilon(1e-15));
    // Monotone decreasing in |X| at fixed t, |Z|.
    NPoint near{{0.5, 0.0}, {0.7}};
    NPoint far{{2.0, 0.0}, {0.7}};
    double C = 1.0;
    CHECK(poisson_kernel(p, 0.3, far, C) <= poisson_kernel(p, 0.3, near, C));
    CHECK(poisson_kernel(p, 0.3, far, C) > 0);
}

TEST_CASE("calibrated poisson kernel has unit mass for two dilation values") {
    DRParams p = derive_params(2, 1);
    double C = poisson_normalization_constant(p);
    CHECK(C > 0);
    // Reduce the N-integral to (|X|, |Z|): dX = 2 pi x dx on R^2, dZ = 2 dz on R.
    auto mass = [&](double t) {
        AdaptiveResult r = integrate_to_infinity(
            [&](double x) {
                AdaptiveResult inner = integrate_to_infinity(
                    [&](double z) {
                        NPoint n{{x, 0.0}, {z}};
                        return 2.0 * poisson_kernel(p, t, n, C);
                    },
                    0.0, 1e-9);
                return 2.0 * std::acos(-1.0) * x * inner.value;
            },
            0.0, 1e-9);
        return r.value;
    };
    CHECK(mass(0.0) == doctest::Approx(1.0).epsilon(1e-5));
    CHECK(mass(0.5) == doctest::Approx(1.0).epsilon(1e-5));
    // With the calibrated constant the kernel is bounded by 1 at t = 0.
    for (double x : {0.0, 0.5, 1.0, 3.0})
        for (double z : {0.0, 0.5, 2.0}) {
            NPoint n{{x, 0.0}, {z}};
            CHECK(poisson_kernel(p, 0.0, n, C) <= 1.0);
        }
}

TEST_CASE("volume density vanishing order and exponential growth rate") {
    DRParams p = derive_params(2, 1);
    CHECK(volume_density(p, 0.0) == 0.0);
    // A(t)/t^{d-1} tends to a constant at 0.
    double r1 = volume_density(p, 1e-3) / std::pow(1e-3, p.d - 1);
    double r2 = volume_density(p, 1e-4) / std::pow(1e-4, p.d - 1);
    CHECK(r1 / r2 == doctest::Approx(1.0).epsilon(1e-2));
    // log A(t) - Q t tends to a constant at infinity.
    double c1 = std::log(volume_density(p, 20.0)) - p.Q * 20.0;
    double c2 = std::log(volume_density(p, 25.0)) - p.Q * 25.0;
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-7));
    CHECK(volume_density(p, 2.0) > volume_density(p, 1.0));
}

TEST_CASE("log-derivative of the density matches the drift coefficient") {
    for (auto [m, k] : std::vector<std::pair<int, int>>{{2, 1}, {4, 3}}) {
        DRParams p = derive_params(m, k);
        for (double t = 0.1; t <= 5.0; t += 0.37) {
            double drift = (m + k) / 2.0 / std::tanh(t / 2.0) + k / 2.0 * std::tanh(t / 2.0);
            CHECK(volume_density_log_derivative(p, t) ==
                  doctest::Approx(drift).epsilon(1e-12));
            const double h = 1e-5;
            double fd = (std::log(volume_density(p, t + h)) -
                         std::log(volume_density(p, t - h))) /
                        (2.0 * h);
            CHECK(fd == doctest::Approx(drift).epsilon(1e-8));
        }
    }
}
