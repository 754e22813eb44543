#include "drf/transform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "drf/report.hpp"

namespace drf {

namespace {

double interp_linear(const std::vector<double>& x, const std::vector<double>& y, double t) {
    if (x.empty()) throw std::runtime_error("interpolation: empty sample set");
    if (t <= x.front()) return y.front();
    if (t >= x.back()) return y.back();
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = std::distance(x.begin(), it);
    double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * y[i - 1] + w * y[i];
}

std::function<double(double)> make_interpolant(std::vector<double> x, std::vector<double> y) {
    auto xs = std::make_shared<std::vector<double>>(std::move(x));
    auto ys = std::make_shared<std::vector<double>>(std::move(y));
    return [xs, ys](double t) { return interp_linear(*xs, *ys, t); };
}

std::vector<double> density_at(const DRParams& p, const std::vector<double>& lams) {
    std::vector<double> d(lams.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = plancherel_density(p, lams[i]);
    return d;
}

}  // namespace

double TailModel::value(double lam) const {
    if (lam <= 1.0) return 0.0;
    return amplitude * std::pow(lam, -gamma_tail) * std::pow(std::log(lam), -log_power);
}

double RadialFunction::value(double t) const {
    if (t > t_max) return 0.0;
    return profile(t);
}

double SpectralFunction::value(double lam) const {
    if (lam > lambda_max) return tail ? tail->value(lam) : 0.0;
    return profile(lam);
}

QuadGrid default_radial_grid(double t_max) {
    // Uniform panels: phi_lambda oscillates with wavelength 2 pi / lambda in t,
    // so panel width (not node count alone) sets the spectral noise floor.
    return QuadGrid::uniform(0.0, t_max, 48, 16);
}

QuadGrid default_spectral_grid(double lambda_max) {
    std::vector<Panel> ps = {{0.0, 0.125}, {0.125, 0.25}, {0.25, 0.5}, {0.5, 1.0}};
    int n_log = std::max(4, int(std::ceil(4.0 * std::log10(lambda_max))));
    for (int i = 0; i < n_log; ++i)
        ps.push_back({std::pow(lambda_max, double(i) / n_log),
                      std::pow(lambda_max, double(i + 1) / n_log)});
    return QuadGrid(std::move(ps), 12);
}

RadialFunction make_radial(const DRParams& p, std::function<double(double)> profile,
                           double t_max, Smoothness hint, QuadGrid grid) {
    if (!(t_max > 0)) throw std::invalid_argument("make_radial: t_max must be positive");
    RadialFunction f;
    f.profile = std::move(profile);
    f.t_max = t_max;
    f.hint = hint;
    f.grid = grid.size() ? std::move(grid) : default_radial_grid(t_max);
    f.values.resize(f.grid.size());
    double mass = 0;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        double t = f.grid.nodes()[i];
        f.values[i] = f.profile(t);
        mass += f.grid.weights()[i] * f.values[i] * f.values[i] * volume_density(p, t);
    }
    if (!std::isfinite(mass))
        throw std::invalid_argument("make_radial: weighted L2 mass is not finite");
    return f;
}

SpectralFunction make_spectral(std::function<double(double)> profile, double lambda_max,
                               std::optional<TailModel> tail, QuadGrid grid) {
    if (!(lambda_max > 0))
        throw std::invalid_argument("make_spectral: lambda_max must be positive");
    SpectralFunction g;
    g.profile = std::move(profile);
    g.lambda_max = lambda_max;
    g.tail = tail;
    g.grid = grid.size() ? std::move(grid) : default_spectral_grid(lambda_max);
    g.values.resize(g.grid.size());
    for (std::size_t i = 0; i < g.values.size(); ++i)
        g.values[i] = g.profile(g.grid.nodes()[i]);
    if (g.tail) {
        // Last-decade fit check against the declared tail model.
        for (double frac : {0.15, 0.4, 1.0}) {
            double lam = lambda_max * frac;
            if (lam <= std::max(1.5, g.tail->lambda_ref)) continue;
            double model = g.tail->value(lam);
            double actual = std::abs(g.profile(lam));
            if (model == 0 && actual == 0) continue;
            double rel = std::abs(actual - model) / std::max(std::abs(model), 1e-300);
            if (rel > 0.10)
                throw std::invalid_argument(
                    "make_spectral: samples do not fit the tail model (rel err " +
                    std::to_string(rel) + " at lambda=" + std::to_string(lam) + ")");
        }
    }
    return g;
}

SpectralFunction spherical_transform(const DRParams& p, const RadialFunction& f,
                                     const QuadGrid& lambda_grid,
                                     std::optional<TailModel> tail) {
    double lambda_max_req = lambda_grid.panels().back().b;
    // Keep the phase advance per panel bounded so Gauss order 16 resolves the
    // oscillation of phi_lambda; otherwise fhat at large lambda is pure noise.
    int needed = std::max(24, int(std::ceil(f.t_max * lambda_max_req / 16.0)));
    bool oversample = f.grid.size() < std::size_t(needed) * 16;
    auto grid_copy = std::make_shared<QuadGrid>(
        oversample ? QuadGrid::uniform(0.0, f.t_max, needed, 16) : f.grid);
    const auto& tn = grid_copy->nodes();
    const auto& tw = grid_copy->weights();
    // f(t) A(t) w_t, fixed across lambda.
    auto fw = std::make_shared<std::vector<double>>(tn.size());
    for (std::size_t j = 0; j < tn.size(); ++j)
        (*fw)[j] = tw[j] * (oversample ? f.value(tn[j]) : f.values[j]) *
                   volume_density(p, tn[j]);
    DRParams pc = p;
    auto eval = [pc, fw, grid_copy](double lam) {
        std::vector<double> phi = spherical_phi_multi(pc, lam, grid_copy->nodes());
        double s = 0;
        for (std::size_t j = 0; j < phi.size(); ++j) s += (*fw)[j] * phi[j];
        return s;
    };
    double lambda_max = lambda_grid.panels().back().b;
    return make_spectral(eval, lambda_max, tail, lambda_grid);
}

RadialFunction inverse_transform(const DRParams& p, const SpectralFunction& g,
                                 const QuadGrid& t_grid) {
    if (!(p.plancherel_const > 0))
        throw std::runtime_error("inverse_transform: params not calibrated");
    if (g.tail && !(g.tail->gamma_tail > 0.5 * p.d)) {
        std::ostringstream os;
        os << "inverse_transform: tail decay exponent " << g.tail->gamma_tail
           << " insufficient; need gamma_tail > d/2 = " << 0.5 * p.d;
        throw std::invalid_argument(os.str());
    }
    const auto& ln = g.grid.nodes();
    const auto& lw = g.grid.weights();
    std::vector<double> dens = density_at(p, ln);
    std::vector<double> out(t_grid.size(), 0.0);
    for (std::size_t i = 0; i < ln.size(); ++i) {
        double coef = lw[i] * g.values[i] * dens[i];
        if (coef == 0) continue;
        std::vector<double> phi = spherical_phi_multi(p, ln[i], t_grid.nodes());
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += coef * phi[j];
    }
    RadialFunction f;
    f.t_max = t_grid.panels().back().b;
    f.hint = Smoothness::smooth;
    f.grid = t_grid;
    f.values = out;
    f.profile = make_interpolant(t_grid.nodes(), std::move(out));
    return f;
}

double lp_norm(const DRParams& p, const RadialFunction& f, double p_exp) {
    if (p_exp < 1) throw std::invalid_argument("lp_norm: p must be >= 1");
    const auto& tn = f.grid.nodes();
    double s = 0;
    for (std::size_t j = 0; j < tn.size(); ++j)
        s += f.grid.weights()[j] * std::pow(std::abs(f.values[j]), p_exp) *
             volume_density(p, tn[j]);
    return std::pow(s, 1.0 / p_exp);
}

RadialFunction spherical_mean(const DRParams& p, const RadialFunction& f, double t,
                              const QuadGrid* lambda_grid) {
    QuadGrid lg = lambda_grid ? *lambda_grid : default_spectral_grid(40.0);
    SpectralFunction fhat = spherical_transform(p, f, lg);
    for (std::size_t i = 0; i < fhat.values.size(); ++i)
        fhat.values[i] *= spherical_phi(p, fhat.grid.nodes()[i], t);
    RadialFunction out = inverse_transform(p, fhat, f.grid);
    out.t_max = f.t_max;
    out.hint = f.hint;
    return out;
}

DeviationResult lip_deviation(const DRParams& p, const SpectralFunction& fhat, double t,
                              double c1_sq) {
    if (!(t > 0)) throw std::invalid_argument("lip_deviation: t must be positive");
    if (!(p.plancherel_const > 0))
        throw std::runtime_error("lip_deviation: params not calibrated");
    double cut = fhat.tail ? std::max(20.0 / t, 2.0) : fhat.lambda_max;
    cut = std::min(cut, 1e14);

    std::vector<Panel> ps;
    double lo_end = std::min(1.0 / t, cut);
    {
        QuadGrid head = QuadGrid::refined_origin(lo_end, 6, 8, 12);
        ps = head.panels();
    }
    if (cut > lo_end * (1 + 1e-12)) {
        int n_log = 16;
        for (int i = 0; i < n_log; ++i)
            ps.push_back({lo_end * std::pow(cut / lo_end, double(i) / n_log),
                          lo_end * std::pow(cut / lo_end, double(i + 1) / n_log)});
    }
    QuadGrid grid(std::move(ps), 12);

    double sampled = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double lam = grid.nodes()[i];
        double fv = fhat.value(lam);
        if (fv == 0) continue;
        double phi = spherical_phi(p, lam, t);
        double om = 1.0 - phi;
        sampled += grid.weights()[i] * om * om * fv * fv * plancherel_density(p, lam);
    }

    double tail_mass = 0;
    if (fhat.tail && fhat.tail->amplitude != 0) {
        // Match the density to its power-law regime at the cutoff.
        double c_inf = plancherel_density(p, cut) / std::pow(cut, p.d - 1);
        TailModel tm = *fhat.tail;
        int dd = p.d;
        auto g = [tm, c_inf, dd](double lam) {
            double v = tm.value(lam);
            return v * v * c_inf * std::pow(lam, dd - 1);
        };
        AdaptiveResult r = integrate_to_infinity(g, cut, 1e-8);
        if (!r.converged)
            throw std::runtime_error("lip_deviation: modeled tail integral did not converge");
        tail_mass = r.value;
    }

    DeviationResult out;
    out.lower = std::sqrt(std::max(0.0, sampled + c1_sq * tail_mass));
    out.upper = std::sqrt(sampled + 4.0 * tail_mass);
    out.value = std::sqrt(sampled + tail_mass);
    return out;
}

double lip_deviation_direct(const DRParams& p, const RadialFunction& f, double t,
                            double p_exp) {
    RadialFunction mt = spherical_mean(p, f, t);
    RadialFunction diff = mt;
    for (std::size_t i = 0; i < diff.values.size(); ++i)
        diff.values[i] -= f.values[i];
    return lp_norm(p, diff, p_exp);
}

double spectral_energy(const DRParams& p, const SpectralFunction& fhat) {
    const auto& ln = fhat.grid.nodes();
    double s = 0;
    for (std::size_t i = 0; i < ln.size(); ++i)
        s += fhat.grid.weights()[i] * fhat.values[i] * fhat.values[i] *
             plancherel_density(p, ln[i]);
    if (fhat.tail && fhat.tail->amplitude != 0) {
        double cut = fhat.lambda_max;
        double c_inf = plancherel_density(p, cut) / std::pow(cut, p.d - 1);
        TailModel tm = *fhat.tail;
        int dd = p.d;
        auto g = [tm, c_inf, dd](double lam) {
            double v = tm.value(lam);
            return v * v * c_inf * std::pow(lam, dd - 1);
        };
        s += integrate_to_infinity(g, cut, 1e-8).value;
    }
    return s;
}

void calibrate(DRParams& p) {
    if (p.m + p.k <= 6) p.poisson_const = poisson_normalization_constant(p);
    DRParams raw = p;
    raw.plancherel_const = 1.0;  // density without the Parseval constant
    RadialFunction ref = make_radial(raw, [](double t) { return std::exp(-t * t); }, 12.0,
                                     Smoothness::gaussian_like);
    double direct = lp_norm(raw, ref, 2.0);
    SpectralFunction fhat = spherical_transform(raw, ref, default_spectral_grid(40.0));
    double spectral = spectral_energy(raw, fhat);
    if (!(spectral > 0) || !std::isfinite(spectral))
        throw std::runtime_error("calibrate: spectral energy of reference profile invalid");
    p.plancherel_const = direct * direct / spectral;
}

void write_radial(const std::string& path, const DRParams& p, const RadialFunction& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_radial: cannot open " + path);
    out << "# drfourier radial m=" << p.m << " k=" << p.k
        << " t_max=" << format_full(f.t_max) << " n=" << f.grid.size() << "\n";
    for (std::size_t i = 0; i < f.grid.size(); ++i)
        out << format_full(f.grid.nodes()[i]) << ' ' << format_full(f.values[i]) << '\n';
    if (!out) throw std::runtime_error("write_radial: write failed for " + path);
}

RadialFunction read_radial(const std::string& path, const DRParams& p) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_radial: cannot open " + path);
    std::string header;
    std::getline(in, header);
    int m = 0, k = 0;
    double t_max = 0;
    std::size_t n = 0;
    if (std::sscanf(header.c_str(), "# drfourier radial m=%d k=%d t_max=%lf n=%zu",
                    &m, &k, &t_max, &n) != 4)
        throw std::runtime_error("read_radial: bad header in " + path);
    if (m != p.m || k != p.k)
        throw std::runtime_error("read_radial: file space (" + std::to_string(m) + "," +
                                 std::to_string(k) + ") does not match params");
    std::vector<double> xs, ys;
    double x, y;
    while (in >> x >> y) {
        xs.push_back(x);
        ys.push_back(y);
    }
    if (xs.size() != n) throw std::runtime_error("read_radial: sample count mismatch");
    return make_radial(p, make_interpolant(std::move(xs), std::move(ys)), t_max,
                       Smoothness::smooth);
}

}  // namespace drf
