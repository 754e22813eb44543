#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "drf/moduli.hpp"

using namespace drf;

TEST_CASE("standard modulus construction and validation") {
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    CHECK(w(0.25) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(w(0.0) == 0.0);
    // Constant extension past delta0.
    CHECK(w(3.0) == doctest::Approx(w(0.5)).epsilon(1e-14));
    CHECK_THROWS(w(-0.1));

    Modulus wl = standard_modulus(ModulusKind::power_log, 0.5, 1.0, 2.0, 0.1);
    CHECK(wl(0.05) == doctest::Approx(std::sqrt(0.05) * std::log(20.0)).epsilon(1e-13));

    CHECK_THROWS(standard_modulus(ModulusKind::power, 1.5, 0.0, 1.0, 0.5));   // a > k
    CHECK_THROWS(standard_modulus(ModulusKind::power, -0.1, 0.0, 1.0, 0.5));  // a <= 0
    CHECK_THROWS(standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 1.5));   // delta0
    // power_loglog needs delta0 below e^{-e}.
    CHECK_THROWS(standard_modulus(ModulusKind::power_loglog, 0.5, 1.0, 1.0, 0.5));
    CHECK_NOTHROW(standard_modulus(ModulusKind::power_loglog, 0.5, 1.0, 1.0, 0.05));
    // alpha = k is allowed (k-th order borderline case).
    CHECK_NOTHROW(standard_modulus(ModulusKind::power, 2.0, 0.0, 2.0, 0.5));
}

TEST_CASE("monotonicity audit constants") {
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    MonotonicityConstants mc = monotonicity_audit(w);
    CHECK(mc.c_incr == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(mc.c_decr == doctest::Approx(1.0).epsilon(1e-9));

    Modulus wl = standard_modulus(ModulusKind::power_log, 0.5, 1.0, 1.0, 0.5);
    MonotonicityConstants ml = monotonicity_audit(wl);
    CHECK(ml.c_incr < 1e6);
    CHECK(ml.c_decr < 1e6);
    CHECK(ml.c_incr >= 1.0);
}

TEST_CASE("same core is a valid modulus at any higher order") {
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    Modulus w3 = w;
    w3.order_k = 3.0;
    MonotonicityConstants mc = monotonicity_audit(w3);
    CHECK(mc.c_incr < 1e6);
    CHECK(mc.c_decr < 1e6);
}

TEST_CASE("first Zygmund integral: closed-form power cases") {
    Modulus w5 = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    ZygmundResult r5 = zygmund_z0(w5);
    CHECK(r5.member);
    CHECK(r5.constant == doctest::Approx(2.0).epsilon(1e-3));

    Modulus w3 = standard_modulus(ModulusKind::power, 0.3, 0.0, 1.0, 0.5);
    ZygmundResult r3 = zygmund_z0(w3);
    CHECK(r3.member);
    CHECK(r3.constant == doctest::Approx(1.0 / 0.3).epsilon(1e-3));

    Modulus wl = standard_modulus(ModulusKind::power_log, 0.5, 1.0, 1.0, 0.4);
    ZygmundResult rl = zygmund_z0(wl);
    CHECK(rl.member);
    CHECK(rl.constant == doctest::Approx(rl.refined_constant).epsilon(0.05));
}

TEST_CASE("second Zygmund integral: membership and the log-divergent border") {
    Modulus w5 = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    ZygmundResult r5 = zygmund_zk(w5);
    CHECK(r5.member);
    CHECK(r5.constant == doctest::Approx(2.0).epsilon(1e-3));

    // w = t^k: the integral ratio grows like ln(delta0/t).
    Modulus wk = standard_modulus(ModulusKind::power, 1.0, 0.0, 1.0, 0.5);
    CHECK_FALSE(zygmund_zk(wk).member);

    // w = t^{1.9}, order 2: member with constant 1/(2-1.9) = 10.
    Modulus w19 = standard_modulus(ModulusKind::power, 1.9, 0.0, 2.0, 0.5);
    ZygmundResult r19 = zygmund_zk(w19);
    CHECK(r19.member);
    CHECK(r19.constant == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("lower index recovers the power exponent, log factors ignored") {
    Modulus w = standard_modulus(ModulusKind::power, 0.7, 0.0, 1.0, 0.5);
    MOIndex mo = mo_lower_index(w);
    CHECK(mo.value == doctest::Approx(0.7).epsilon(1e-3));

    Modulus wl = standard_modulus(ModulusKind::power_log, 0.5, 2.0, 1.0, 0.4);
    CHECK(mo_lower_index(wl).value == doctest::Approx(0.5).epsilon(2e-2));
}

TEST_CASE("almost-increasing constant of w / t^mu") {
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    CHECK(almost_increasing_constant(w, 0.4) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("dyadic square sum against the proof bound") {
    Modulus w = standard_modulus(ModulusKind::power, 0.5, 0.0, 1.0, 0.5);
    DyadicSum ds = dyadic_sum_bound(w, 0.1, 0.4);
    // Pure power: sum_i (t 2^{-i}) = 2 t exactly.
    CHECK(ds.sum == doctest::Approx(0.2).epsilon(1e-8));
    CHECK(ds.sum <= ds.bound * (1 + 1e-12));
    DyadicSum ds2 = dyadic_sum_bound(w, 0.2, 0.4);
    CHECK(ds2.sum > ds.sum);  // increasing in t

    Modulus wl = standard_modulus(ModulusKind::power_log, 0.5, 1.0, 1.0, 0.4);
    DyadicSum dl = dyadic_sum_bound(wl, 0.1, 0.3);
    CHECK(dl.sum <= dl.bound * (1 + 1e-12));

    // mu at or above the lower index is rejected.
    CHECK_THROWS(dyadic_sum_bound(w, 0.1, 0.6));
}
