#include "drf/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drf {

namespace {

constexpr double kPi = 3.14159265358979323846;

const double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

std::complex<double> lanczos_lgamma(std::complex<double> z) {
    // Valid for Re z >= 0.5; callers shift first.
    z -= 1.0;
    std::complex<double> x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
    std::complex<double> t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

struct Hyp2F1Sum {
    std::complex<double> value;
    double abs_sum;    // sum of |term|, tracks cancellation
    double last_term;
    bool converged;
};

Hyp2F1Sum hyp2f1(std::complex<double> a, std::complex<double> b,
                 std::complex<double> c, double w) {
    std::complex<double> term = 1.0, sum = 1.0;
    double abs_sum = 1.0;
    const int max_terms = 200000;
    for (int n = 0; n < max_terms; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * w;
        sum += term;
        abs_sum += std::abs(term);
        if (std::abs(term) <= 1e-17 * std::abs(sum) && n > 4)
            return {sum, abs_sum, std::abs(term), true};
    }
    return {sum, abs_sum, std::abs(term), false};
}

struct SeriesPair {
    double phi;
    double dphi;
    double est_error;
    bool converged;
};

// phi and phi' via the hypergeometric representation in the variable
// w = tanh^2 r (Pfaff form of the series in -sinh^2 r, convergent for all r):
//   phi(r) = (cosh r)^{-(rho+i lam)} 2F1(a, cb; c; w),
//   a = (rho + i lam)/2,  cb = (alpha - beta + 1 + i lam)/2,  c = alpha + 1.
SeriesPair phi_series_pair(double alpha, double beta, double lam, double r) {
    if (r == 0.0) return {1.0, 0.0, 0.0, true};
    const double rho = alpha + beta + 1.0;
    const std::complex<double> il(0.0, lam);
    const std::complex<double> a = 0.5 * (rho + il);
    const std::complex<double> cb = 0.5 * (alpha - beta + 1.0 + il);
    const std::complex<double> c = alpha + 1.0;
    const double th = std::tanh(r), w = th * th, ch = std::cosh(r);

    Hyp2F1Sum F = hyp2f1(a, cb, c, w);
    Hyp2F1Sum Fp = hyp2f1(a + 1.0, cb + 1.0, c + 1.0, w);

    const std::complex<double> pref = std::exp(-(rho + il) * std::log(ch));
    const std::complex<double> phi_c = pref * F.value;
    const std::complex<double> dF = a * cb / c * Fp.value;
    const std::complex<double> dphi_c =
        pref * (-(rho + il) * th * F.value + dF * 2.0 * th / (ch * ch));

    const double pm = std::abs(pref);
    double err = pm * (F.abs_sum * 1.1e-16 + 10.0 * F.last_term) + std::abs(phi_c.imag());
    return {phi_c.real(), dphi_c.real(), err, F.converged && Fp.converged};
}

double drift_coeff(double alpha, double beta, double r) {
    return (2.0 * alpha + 1.0) / std::tanh(r) + (2.0 * beta + 1.0) * std::tanh(r);
}

// Dormand-Prince 5(4) for y' = f(r, y), y = (phi, phi').
struct Rhs {
    double alpha, beta, ev;  // ev = lam^2 + rho^2
    void operator()(double r, const double y[2], double dy[2]) const {
        dy[0] = y[1];
        dy[1] = -ev * y[0] - drift_coeff(alpha, beta, r) * y[1];
    }
};

// Integrates from (r0, y) to r1 in place; returns accumulated error estimate.
double dp45(const Rhs& rhs, double r0, double r1, double y[2],
            double rel_tol, double abs_tol) {
    static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double r = r0;
    double h = std::min(0.1, (r1 - r0));
    double freq = std::sqrt(std::max(rhs.ev, 1.0));
    h = std::min(h, 0.5 / freq);
    double err_acc = 0;
    double k1[2], k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2], yn[2];
    rhs(r, y, k1);
    int guard = 0;
    while (r < r1) {
        if (++guard > 20000000) throw std::runtime_error("jacobi_phi: ODE step limit exceeded");
        if (r + h > r1) h = r1 - r;
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * a21 * k1[i];
        rhs(r + c2 * h, yt, k2);
        for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(r + c3 * h, yt, k3);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(r + c4 * h, yt, k4);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(r + c5 * h, yt, k5);
        for (int i = 0; i < 2; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        rhs(r + h, yt, k6);
        for (int i = 0; i < 2; ++i)
            yn[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);
        rhs(r + h, yn, k7);
        double err = 0;
        for (int i = 0; i < 2; ++i) {
            double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                            e6 * k6[i] + e7 * k7[i]);
            double sc = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(yn[i]));
            err = std::max(err, std::abs(e) / sc);
        }
        if (err <= 1.0) {
            r += h;
            y[0] = yn[0];
            y[1] = yn[1];
            k1[0] = k7[0];
            k1[1] = k7[1];
            err_acc += err * (abs_tol + rel_tol * std::abs(y[0]));
        }
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        // underflow guard relative to the span: spans themselves can be ~1e-12
        if (h < 1e-10 * (r1 - r0))
            throw std::runtime_error("jacobi_phi: ODE step-size underflow");
    }
    return err_acc;
}

// Largest radius at which the series is safe from cancellation for this lam.
double seed_radius(double lam, const JacobiOptions& opt) {
    double al = std::max(std::abs(lam), 1.0);
    double th = std::min(0.45, 0.8 * opt.cancellation_guard / al);
    return std::atanh(th);
}

bool series_safe(double lam, double r, const JacobiOptions& opt) {
    return r <= opt.series_radius &&
           std::abs(lam) * std::tanh(r) <= opt.cancellation_guard &&
           std::tanh(r) * std::tanh(r) <= 0.93;
}

}  // namespace

std::complex<double> lgamma_complex(std::complex<double> z) {
    // Shift until the real part is comfortably inside the Lanczos domain.
    std::complex<double> shift = 0.0;
    while (z.real() < 8.0) {
        shift += std::log(z);
        z += 1.0;
    }
    return lanczos_lgamma(z) - shift;
}

PhiEval jacobi_phi_series(double alpha, double beta, double lam, double r) {
    SeriesPair s = phi_series_pair(alpha, beta, lam, r);
    if (!s.converged)
        throw std::runtime_error("jacobi_phi_series: hypergeometric series did not converge");
    return {s.phi, s.est_error, PhiMethod::series};
}

PhiEval jacobi_phi_ode(double alpha, double beta, double lam, double r,
                       const JacobiOptions& opt) {
    if (r == 0.0) return {1.0, 0.0, PhiMethod::ode_continuation};
    const double rho = alpha + beta + 1.0;
    double r0 = std::min({0.5, 0.5 * r, seed_radius(lam, opt)});
    SeriesPair s = phi_series_pair(alpha, beta, lam, r0);
    double y[2] = {s.phi, s.dphi};
    Rhs rhs{alpha, beta, lam * lam + rho * rho};
    double ode_err = dp45(rhs, r0, r, y, opt.ode_rel_tol, opt.ode_abs_tol);
    return {y[0], s.est_error + ode_err, PhiMethod::ode_continuation};
}

PhiEval jacobi_phi_eval(double alpha, double beta, double lam, double r,
                        const JacobiOptions& opt) {
    if (!(alpha > beta && beta > -0.5))
        throw std::invalid_argument("jacobi_phi: need alpha > beta > -1/2");
    if (r < 0) throw std::invalid_argument("jacobi_phi: r must be nonnegative");
    if (r == 0.0) return {1.0, 0.0, PhiMethod::series};
    if (series_safe(lam, r, opt)) return jacobi_phi_series(alpha, beta, lam, r);
    return jacobi_phi_ode(alpha, beta, lam, r, opt);
}

double jacobi_phi(double alpha, double beta, double lam, double r,
                  const JacobiOptions& opt) {
    return jacobi_phi_eval(alpha, beta, lam, r, opt).value;
}

std::vector<double> jacobi_phi_multi(double alpha, double beta, double lam,
                                     std::span<const double> r_sorted,
                                     const JacobiOptions& opt) {
    std::vector<double> out(r_sorted.size());
    if (r_sorted.empty()) return out;
    const double rho = alpha + beta + 1.0;
    Rhs rhs{alpha, beta, lam * lam + rho * rho};

    std::size_t i = 0;
    // Series regime first, then one outward ODE sweep through the rest.
    while (i < r_sorted.size() && series_safe(lam, r_sorted[i], opt)) {
        out[i] = r_sorted[i] == 0.0 ? 1.0 : phi_series_pair(alpha, beta, lam, r_sorted[i]).phi;
        ++i;
    }
    if (i == r_sorted.size()) return out;

    double r0 = std::min({0.5, 0.5 * r_sorted[i], seed_radius(lam, opt)});
    SeriesPair s = phi_series_pair(alpha, beta, lam, r0);
    double y[2] = {s.phi, s.dphi};
    double r = r0;
    for (; i < r_sorted.size(); ++i) {
        if (r_sorted[i] < r)
            throw std::invalid_argument("jacobi_phi_multi: radii must be sorted");
        if (r_sorted[i] > r) {
            dp45(rhs, r, r_sorted[i], y, opt.ode_rel_tol, opt.ode_abs_tol);
            r = r_sorted[i];
        }
        out[i] = y[0];
    }
    return out;
}

namespace {

// Real part of the Stirling correction series for log Gamma.
double re_stirling_tail(std::complex<double> z) {
    std::complex<double> zi = 1.0 / z, z2 = zi * zi;
    std::complex<double> s =
        zi * (1.0 / 12.0 +
              z2 * (-1.0 / 360.0 +
                    z2 * (1.0 / 1260.0 + z2 * (-1.0 / 1680.0 + z2 * (1.0 / 1188.0)))));
    return s.real();
}

}  // namespace

double jacobi_c_inv_sq(double alpha, double beta, double mu) {
    if (!(mu > 0)) throw std::invalid_argument("jacobi_c_inv_sq: mu must be positive");
    const double rho = alpha + beta + 1.0;
    double log_c;
    if (mu < 64.0) {
        const std::complex<double> imu(0.0, mu);
        log_c = rho * std::log(2.0) + std::lgamma(alpha + 1.0) +
                lgamma_complex(imu).real() - lgamma_complex(0.5 * (rho + imu)).real() -
                lgamma_complex(0.5 * (alpha - beta + 1.0 + imu)).real();
    } else {
        // Large mu: the direct log-gamma combination loses ~mu*ln(mu)*eps of
        // absolute accuracy to cancellation.  In the Stirling expansion the
        // O(mu) terms of Re[lgamma(i mu) - lgamma(a1+i mu/2) - lgamma(a2+i mu/2)]
        // cancel exactly, leaving only O(ln mu) pieces.
        const double m = 0.5 * mu;
        double f = -0.5 * std::log(mu) - 0.5 * std::log(2.0 * std::acos(-1.0));
        for (double a : {0.5 * rho, 0.5 * (alpha - beta + 1.0)}) {
            f -= (a - 0.5) * 0.5 * std::log(m * m + a * a);
            f -= m * std::atan(a / m);
            f += a;
            f -= re_stirling_tail(std::complex<double>(a, m));
        }
        log_c = rho * std::log(2.0) + std::lgamma(alpha + 1.0) + f;
    }
    return std::exp(-2.0 * log_c);
}

}  // namespace drf
