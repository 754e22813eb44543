#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "drf/checks.hpp"

using namespace drf;

namespace {

const DRParams& space21() {
    static DRParams p = [] {
        DRParams q = derive_params(2, 1);
        calibrate(q);
        return q;
    }();
    return p;
}

const CheckContext& ctx21() {
    static CheckContext c = make_check_context(space21());
    return c;
}

SpectralFunction scaled_profile(const DRParams& p, double alpha, double c) {
    SpectralFunction base = power_tail_profile(p, alpha, 0.0);
    SpectralFunction out = base;
    for (double& v : out.values) v *= c;
    auto prof = base.profile;
    out.profile = [prof, c](double lam) { return c * prof(lam); };
    out.tail->amplitude *= c;
    return out;
}

}  // namespace

TEST_CASE("tolerance scale is a validated global") {
    CHECK(tolerance_scale() == 1.0);
    set_tolerance_scale(2.5);
    CHECK(tolerance_scale() == 2.5);
    set_tolerance_scale(1.0);
    CHECK_THROWS(set_tolerance_scale(0.0));
}

TEST_CASE("tail energy closed forms and monotonicity") {
    const DRParams& p = space21();
    SpectralFunction fh = power_tail_profile(p, 0.5, 0.0);
    // |fhat|^2 = lambda^{-(2 alpha + d)} = lambda^{-5} above 1.
    double t = 0.1;
    double flat = tail_energy(p, fh, 1.0 / t, TailWeight::flat);
    CHECK(flat == doctest::Approx(std::pow(t, 4.0) / 4.0).epsilon(1e-9));
    // Weight lambda^{d-1} = lambda^3: integrand lambda^{-2}.
    double pw = tail_energy(p, fh, 10.0, TailWeight::power_dminus1);
    CHECK(pw == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(tail_energy(p, fh, 5.0, TailWeight::flat) >=
          tail_energy(p, fh, 6.0, TailWeight::flat));
    CHECK(tail_energy(p, fh, 20.0, TailWeight::plancherel) > 0);
}

TEST_CASE("tail energy rejects a divergent modeled tail") {
    const DRParams& p = space21();
    TailModel tm;
    tm.amplitude = 1.0;
    tm.gamma_tail = 1.5;  // 2 * 1.5 - (d-1) = 0, not summable
    tm.lambda_ref = 1.0;
    SpectralFunction slow = make_spectral(
        [](double lam) { return lam < 1.0 ? 0.0 : std::pow(lam, -1.5); }, 50.0, tm,
        QuadGrid::logspaced(1.0, 50.0, 8, 10));
    CHECK_THROWS(tail_energy(p, slow, 2.0, TailWeight::power_dminus1));
    CHECK_NOTHROW(tail_energy(p, slow, 2.0, TailWeight::flat));
}

TEST_CASE("default small-t grid") {
    std::vector<double> g = default_check_t_grid();
    REQUIRE(g.size() == 32);
    CHECK(g.front() == doctest::Approx(1e-3));
    CHECK(g.back() == doctest::Approx(1e-1));
    CHECK_THROWS(default_check_t_grid(1));
}

TEST_CASE("forward inequality: pass, and homogeneity of the traced constants") {
    const DRParams& p = space21();
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    std::vector<double> tg = default_check_t_grid();
    SpectralFunction fh = power_tail_profile(p, 0.5, 0.0);
    CheckReport rep = forward_titchmarsh(p, fh, w, tg, ctx21());
    CHECK(rep.verdict == Verdict::pass);
    CHECK(std::isfinite(rep.ratio_sup));
    CHECK(rep.ratio_sup >= rep.ratio_inf);

    // f -> 3 f: ratio_sup scales by 9, as does lip_constant^2; the pairing is
    // invariant.
    SpectralFunction f3 = scaled_profile(p, 0.5, 3.0);
    CheckReport rep3 = forward_titchmarsh(p, f3, w, tg, ctx21());
    double l1 = rep.stats.at("lip_constant");
    double l3 = rep3.stats.at("lip_constant");
    CHECK(rep3.ratio_sup / (l3 * l3) ==
          doctest::Approx(rep.ratio_sup / (l1 * l1)).epsilon(1e-10));
}

TEST_CASE("forward inequality: band-limited profile has an empty tail") {
    const DRParams& p = space21();
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    std::vector<double> tg = default_check_t_grid();
    SpectralFunction band = make_spectral(
        [](double lam) { return lam <= 1.0 ? 1.0 : 0.0; }, 1.0, std::nullopt,
        QuadGrid::uniform(0.0, 1.0, 4, 10));
    CheckReport rep = forward_titchmarsh(p, band, w, tg, ctx21());
    CHECK(rep.verdict == Verdict::pass);
    for (double l : rep.lhs) CHECK(l == 0.0);
}

TEST_CASE("dyadic shell comparison on power and power_log moduli") {
    const DRParams& p = space21();
    std::vector<double> tg = default_check_t_grid();
    SpectralFunction fh = power_tail_profile(p, 0.5, 0.0);
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    CheckReport rep = dyadic_shell_equiv(p, fh, w, tg);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.stats.at("mo_lower_index") == doctest::Approx(0.5).epsilon(1e-3));
    // Shells are sub-integrals of the tail.
    for (const Hypothesis& h : rep.hypotheses)
        if (h.name == "shell-below-tail") CHECK(h.constant <= 1e-12);

    SpectralFunction fl = power_tail_profile(p, 0.5, 1.0);
    Modulus wl = standard_modulus(ModulusKind::power_log, 0.5, 1.0, 1.0, 0.5);
    CheckReport repl = dyadic_shell_equiv(p, fl, wl, tg);
    CHECK(repl.verdict == Verdict::pass);
}

TEST_CASE("converse hypothesis engine") {
    Modulus good = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    CheckReport r1 = converse_hypotheses(good);
    CHECK(r1.verdict == Verdict::pass);
    for (const Hypothesis& h : r1.hypotheses) CHECK(h.ok);

    Modulus border = standard_modulus(ModulusKind::power, 2.0, 0.0, 2.0, 0.5);
    CheckReport r2 = converse_hypotheses(border);
    CHECK(r2.verdict == Verdict::fail);
    bool zk_failed = false;
    for (const Hypothesis& h : r2.hypotheses)
        if (h.name == "zygmund-zk") zk_failed = !h.ok;
    CHECK(zk_failed);

    Modulus wl = standard_modulus(ModulusKind::power_log, 1.5, 1.0, 2.0, 0.4);
    CHECK(converse_hypotheses(wl).verdict == Verdict::pass);
}

TEST_CASE("converse inequality: domination chain holds on the matched pair") {
    const DRParams& p = space21();
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    std::vector<double> tg = default_check_t_grid();
    SpectralFunction fh = power_tail_profile(p, 0.5, 0.0);
    CheckReport rep = converse_titchmarsh(p, fh, w, tg, ctx21());
    CHECK(rep.verdict == Verdict::pass);
    CHECK(std::isfinite(rep.stats.at("lip_constant")));
    // Homogeneity of the premise/ratio pairing under f -> 2 f.  The ratio
    // rows are linear in f while the premise is quadratic, so the invariant
    // combination is ratio_sup^2 / premise.
    SpectralFunction f2 = scaled_profile(p, 0.5, 2.0);
    CheckReport rep2 = converse_titchmarsh(p, f2, w, tg, ctx21());
    double q1 = rep.ratio_sup * rep.ratio_sup / rep.stats.at("premise_constant");
    double q2 = rep2.ratio_sup * rep2.ratio_sup / rep2.stats.at("premise_constant");
    CHECK(q2 == doctest::Approx(q1).epsilon(1e-10));
}

TEST_CASE("converse inequality is inconclusive when a hypothesis fails") {
    const DRParams& p = space21();
    Modulus bad = standard_modulus(ModulusKind::power, 2.0, 0.0, 2.0, 0.5);
    std::vector<double> tg = default_check_t_grid();
    SpectralFunction fh = power_tail_profile(p, 0.5, 0.0);
    CheckReport rep = converse_titchmarsh(p, fh, bad, tg, ctx21());
    CHECK(rep.verdict == Verdict::inconclusive);
}

TEST_CASE("two-sided corollary audit at gamma = 0") {
    const DRParams& p = space21();
    std::vector<double> tg = default_check_t_grid();
    CheckReport rep = lipcor_two_sided(p, 0.5, 0.0, tg, ctx21());
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.stats.at("deviation_spread") <= 10.0);
    CHECK(rep.stats.at("closed_form_rel_err") <= 1e-6);
    CHECK_THROWS(lipcor_two_sided(p, 2.5, 0.0, tg, ctx21()));
}

TEST_CASE("Besov-type audit on the borderline profile") {
    const DRParams& p = space21();
    SpectralFunction fh = log_damped_profile(p, 0.5);
    CheckReport rep = besov_check(p, fh, 0.5);
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.stats.at("order_swap_rel_err") <= 1e-6);
    // Truncation ladders are monotone in their truncation parameter.
    CHECK(rep.stats.at("lhs_value") > 0);
    CHECK(rep.stats.at("rhs_value") > 0);
}

TEST_CASE("integrability ladder around the sharp threshold") {
    const DRParams& p = space21();
    SpectralFunction fh = power_tail_profile(p, 0.5, 0.0);
    HolderParams hp = HolderParams::for_p2(0.5, 2.0);
    CHECK(hp.threshold(p) == doctest::Approx(1.6).epsilon(1e-12));
    std::vector<double> betas{1.4, 1.8, 2.0};
    CheckReport rep = holder_integrability(p, fh, hp, betas);
    CHECK(rep.verdict == Verdict::pass);
    bool div14 = false, sum18 = false, sum20 = false;
    for (const Hypothesis& h : rep.hypotheses) {
        if (h.name == "beta-1.4-divergent") div14 = h.ok;
        if (h.name == "beta-1.8-summable") sum18 = h.ok;
        if (h.name == "beta-2-summable") sum20 = h.ok;
    }
    CHECK(div14);
    CHECK(sum18);
    CHECK(sum20);

    HolderParams bad = hp;
    bad.p = 1.5;
    CHECK_THROWS(holder_integrability(p, fh, bad, betas));
}

TEST_CASE("checks validate the t grid") {
    const DRParams& p = space21();
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    SpectralFunction fh = power_tail_profile(p, 0.5, 0.0);
    std::vector<double> bad{0.5, 1.5};
    CHECK_THROWS(forward_titchmarsh(p, fh, w, bad, ctx21()));
    std::vector<double> empty;
    CHECK_THROWS(dyadic_shell_equiv(p, fh, w, empty));
}
