#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ntnsim/offload.hpp"
#include "ntnsim/phymac.hpp"

using namespace ntnsim;

namespace {

// Independent re-derivations, written differently from the library code on
// purpose (long double, pow instead of exp2, loop-based ceil).
long double oracle_rate(int sf, long double b) {
    long double denom = 1.0L;
    for (int i = 0; i < sf; ++i) denom *= 2.0L;
    return sf * b / denom;
}

long double oracle_toa(int sf, long double b, int L) {
    long double twosf = 1.0L;
    for (int i = 0; i < sf; ++i) twosf *= 2.0L;
    const long double num = 8.0L * L - 4.0L * sf + 24.0L;
    long double ceiled = 0.0L;
    if (num > 0.0L) {
        const long double q = num / (4.0L * sf);
        ceiled = std::ceil((double)q);
    } else {
        ceiled = std::ceil((double)(num / (4.0L * sf)));
    }
    long double payload_part = 5.0L * ceiled;
    if (payload_part < 0.0L) payload_part = 0.0L;
    return (twosf / b) * (8.0L + payload_part);
}

long double oracle_lora_sens(int sf) { return -127.0L - 2.5L * (sf - 7); }

long double oracle_nb_sens(int r) {
    return -102.2L - 2.8L * (long double)(std::log((double)r) / std::log(2.0));
}

long double oracle_ps_tg(long double eta, long double t, long double lam, long double n) {
    return std::exp((double)(-(1.0L - eta) * t * lam * n));
}

} // namespace

TEST_CASE("data rate matches oracle on the full SF grid") {
    for (int sf = 7; sf <= 12; ++sf) {
        const double got = lora_data_rate_bps(sf, 125e3);
        const double want = (double)oracle_rate(sf, 125e3L);
        CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
    }
    CHECK(lora_data_rate_bps(7, 125e3) == doctest::Approx(6835.9375).epsilon(1e-12));
    CHECK(lora_data_rate_bps(12, 125e3) == doctest::Approx(366.2109375).epsilon(1e-12));
    CHECK_THROWS(lora_data_rate_bps(6, 125e3));
    CHECK_THROWS(lora_data_rate_bps(7, 0.0));
}

TEST_CASE("time on air matches oracle across SF x payload grid") {
    for (int sf = 7; sf <= 12; ++sf) {
        for (int L = 1; L <= 50; ++L) {
            const double got = lora_toa_s(sf, 125e3, L);
            const double want = (double)oracle_toa(sf, 125e3L, L);
            CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
        }
    }
    CHECK(lora_toa_s(7, 125e3, 12) == doctest::Approx(0.028672).epsilon(1e-12));
    CHECK(lora_toa_s(11, 125e3, 50) == doctest::Approx(0.868352).epsilon(1e-12));
    CHECK(lora_toa_s(12, 125e3, 50) == doctest::Approx(1.572864).epsilon(1e-12));
}

TEST_CASE("time on air clamps the payload term at zero") {
    // 8L - 4*12 + 24 <= 0 for L <= 3 at SF12.
    for (int L = 1; L <= 3; ++L)
        CHECK(lora_toa_s(12, 125e3, L) ==
              doctest::Approx((std::exp2(12) / 125e3) * 8.0).epsilon(1e-12));
}

TEST_CASE("sensitivities match oracles across the grid") {
    for (int sf = 7; sf <= 12; ++sf) {
        const double want = (double)oracle_lora_sens(sf);
        CHECK(std::abs(lora_sensitivity_dbm(sf) - want) <= 1e-12 * std::abs(want));
    }
    CHECK(lora_sensitivity_dbm(12) == doctest::Approx(-139.5).epsilon(1e-12));
    for (int r = 1; r <= 128; r <<= 1) {
        const double want = (double)oracle_nb_sens(r);
        CHECK(std::abs(nbiot_sensitivity_dbm(r) - want) <= 1e-12 * std::abs(want));
    }
    CHECK(nbiot_sensitivity_dbm(128) == doctest::Approx(-121.8).epsilon(1e-12));
    CHECK(sigfox_sensitivity_dbm() == -140.0);
    CHECK_THROWS(nbiot_sensitivity_dbm(3));
    CHECK_THROWS(nbiot_sensitivity_dbm(256));
}

TEST_CASE("sensitivity monotonicity") {
    for (int sf = 7; sf < 12; ++sf)
        CHECK(lora_sensitivity_dbm(sf + 1) < lora_sensitivity_dbm(sf));
    for (int r = 1; r < 128; r <<= 1)
        CHECK(nbiot_sensitivity_dbm(2 * r) < nbiot_sensitivity_dbm(r));
}

TEST_CASE("time on air monotone in SF and payload") {
    for (int L = 1; L <= 50; ++L)
        for (int sf = 7; sf < 12; ++sf)
            CHECK(lora_toa_s(sf + 1, 125e3, L) > lora_toa_s(sf, 125e3, L));
    for (int sf = 7; sf <= 12; ++sf)
        for (int L = 1; L < 50; ++L)
            CHECK(lora_toa_s(sf, 125e3, L + 1) >= lora_toa_s(sf, 125e3, L));
}

TEST_CASE("terrestrial ALOHA success term matches oracle") {
    const double etas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    const double counts[] = {0.0, 1.0, 10.0, 100.0, 1000.0};
    for (int sf = 7; sf <= 12; ++sf) {
        const double t = lora_toa_s(sf, 125e3, 50);
        for (double eta : etas) {
            for (double n : counts) {
                const double got = p_success_tg(eta, t, 1.0 / 360.0, n);
                const double want =
                    (double)oracle_ps_tg(eta, t, 1.0L / 360.0L, n);
                CHECK(std::abs(got - want) <= 1e-12 * std::abs(want) + 1e-15);
            }
        }
    }
    CHECK(p_success_tg(1.0, 0.9, 1.0, 50.0) == 1.0);
    CHECK(p_success_tg(0.3, 0.9, 1.0, 0.0) == 1.0);
    CHECK(p_success_tg(0.0, 0.868352, 1.0 / 360.0, 100.0) ==
          doctest::Approx(0.78568).epsilon(1e-4));
}

TEST_CASE("ALOHA success term monotonicity") {
    const double base = p_success_tg(0.5, 0.1, 0.01, 100.0);
    CHECK(p_success_tg(0.51, 0.1, 0.01, 100.0) > base);
    CHECK(p_success_tg(0.5, 0.11, 0.01, 100.0) < base);
    CHECK(p_success_tg(0.5, 0.1, 0.011, 100.0) < base);
    CHECK(p_success_tg(0.5, 0.1, 0.01, 101.0) < base);
}

TEST_CASE("repetition selection boundaries") {
    CHECK(nbiot_min_repetitions(-100.0) == 1);
    CHECK(nbiot_min_repetitions(-121.8) == 128);
    CHECK(!nbiot_min_repetitions(-130.0).has_value());
}

TEST_CASE("spreading factor assignment") {
    CHECK(assign_sf(-120.0, SfPolicy::LowestFeasible) == 7);
    CHECK(assign_sf(-138.0, SfPolicy::LowestFeasible) == 12);
    CHECK(!assign_sf(-145.0, SfPolicy::LowestFeasible).has_value());

    Rng rng = make_rng(7, 0);
    int seen[13] = {0};
    for (int i = 0; i < 6000; ++i) {
        const auto sf = assign_sf(-130.0, SfPolicy::ScrambledPlus, &rng); // k_min = 9
        REQUIRE(sf.has_value());
        CHECK(*sf >= 9);
        CHECK(*sf <= 12);
        ++seen[*sf];
    }
    // Uniform over the 4 feasible SFs: chi-square with 3 dof, 1% critical 11.34.
    double chi2 = 0.0;
    for (int k = 9; k <= 12; ++k) {
        const double e = 6000.0 / 4.0;
        chi2 += (seen[k] - e) * (seen[k] - e) / e;
    }
    CHECK(chi2 < 11.34);
}

TEST_CASE("detection is boundary-inclusive") {
    CHECK(detect(-139.5, -139.5));
    CHECK_FALSE(detect(-140.0, -139.5));
    CHECK(detect(-100.0, -140.0));
}
