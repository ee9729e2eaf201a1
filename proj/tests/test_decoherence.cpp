#include <doctest.h>

#include <cmath>
#include <numbers>

#include "decosim/decoherence.hpp"
#include "decosim/rng.hpp"
#include "decosim/spreading.hpp"
#include "support.hpp"

using namespace decosim;
using testutil::rel_diff;

namespace {
const OscillatorParams kOsc{1.0, 1.0};
const CatParams kCat{4.0, 1.0};
}

TEST_SUITE("decoherence") {

TEST_CASE("cat probability integrates to one") {
    for (const CatParams cat : {CatParams{4.0, 1.0}, CatParams{1.0, 0.5}, CatParams{10.0, 2.0}}) {
        const double half = cat.d + 10.0 * cat.sigma;
        const double mass = testutil::simpson(
            [&](double x) { return cat_probability(x, cat); }, -half, half, 20000);
        CHECK(std::abs(mass - 1.0) < 1e-10);
    }
}

TEST_CASE("cat probability is even in x") {
    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        const double x = 12.0 * (rng.next_unit() - 0.5);
        CHECK(cat_probability(x, kCat) ==
              doctest::Approx(cat_probability(-x, kCat)).epsilon(1e-14));
    }
}

TEST_CASE("interference amplitude equals twice the geometric mean at t = 0") {
    const CatDensityParts parts = cat_density_parts(0.0, kCat);
    const double ratio = parts.interference / (2.0 * std::sqrt(parts.p1 * parts.p2));
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("engineered attenuation values") {
    CHECK(attenuation_engineered(0.0, kCat, 0.0).a == 1.0);
    CHECK(attenuation_engineered(1.0, kCat, 1.0).a == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    // saturation: exp(-d^2 / 8 sigma^2)
    CHECK(attenuation_engineered(1.0, kCat, 1e12).a ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(attenuation_engineered(1.0, kCat, -0.1), std::invalid_argument);
}

TEST_CASE("free-particle attenuation values") {
    CHECK(attenuation_free(0.0, kCat, 0.0, 1.0).a == 1.0);
    CHECK(attenuation_free(1.0, kCat, 1.0, 2.0).a == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    const double s0 = 1e9;
    CHECK(attenuation_free(1.0, kCat, s0, kCat.sigma * kCat.sigma + s0).a ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-8));
}

TEST_CASE("tau0 value and scaling") {
    CHECK(tau0(kOsc, kCat, 1.0) == 1.0);
    CHECK(tau0(kOsc, {8.0, 1.0}, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(tau0(kOsc, kCat, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("scaled attenuation against its limits") {
    // at 2 omega0 t = 2 pi the sinc term vanishes
    const double t_cycle = std::numbers::pi / kOsc.omega0;
    CHECK(attenuation_scaled(t_cycle, kOsc, kCat, 1.0).a ==
          doctest::Approx(std::exp(-std::numbers::pi)).epsilon(1e-15));

    // cubic small-time law within 1% for 2 omega0 t <= 0.1
    for (double x : {0.02, 0.05, 0.1}) {
        const double t = 0.5 * x / kOsc.omega0;
        const double scaled = attenuation_scaled(t, kOsc, kCat, 1.0).a;
        const double cubic = attenuation_asymptotic(t, kOsc, kCat, 1.0, AsymptoticKind::small_time).a;
        CHECK(rel_diff(cubic, scaled) < 1e-2);
    }
}

TEST_CASE("asymptotic attenuation forms") {
    CHECK(attenuation_asymptotic(0.0, kOsc, kCat, 1.0, AsymptoticKind::small_time).a == 1.0);

    // series consistency at 2 omega0 t = 0.05
    const double t_small = 0.025;
    const double ratio = attenuation_asymptotic(t_small, kOsc, kCat, 1.0, AsymptoticKind::small_time).a /
                         attenuation_scaled(t_small, kOsc, kCat, 1.0).a;
    CHECK(std::abs(ratio - 1.0) < 1e-3);

    // |sin x / x| <= 1/x bounds the long-time exponent error
    const double t_long = 3.0 * std::numbers::pi;
    const double e_scaled = attenuation_scaled(t_long, kOsc, kCat, 1.0).exponent;
    const double e_long = attenuation_asymptotic(t_long, kOsc, kCat, 1.0, AsymptoticKind::long_time).exponent;
    CHECK(std::abs(e_scaled - e_long) / e_long <= 1.0 / (6.0 * std::numbers::pi));
}

TEST_CASE("exact exponent equals the end-of-cycle law at whole cycles") {
    for (int k = 1; k <= 3; ++k) {
        const double t = k * std::numbers::pi / kOsc.omega0;
        const double scaled = attenuation_scaled(t, kOsc, kCat, 1.0).a;
        const double law = attenuation_asymptotic(t, kOsc, kCat, 1.0, AsymptoticKind::long_time).a;
        CHECK(std::abs(scaled - law) <= 1e-15 * law);
    }
}

TEST_CASE("attenuation is monotone and bounded by the plateau") {
    const double plateau = std::exp(-kCat.d * kCat.d / (8.0 * kCat.sigma * kCat.sigma));
    double prev_exponent = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double t = 20.0 * i / 2000.0;
        const AttenuationPoint p =
            attenuation_engineered(t, kCat, msd_driven_nodissip(t, kOsc, 1.0));
        CHECK(p.exponent - prev_exponent >= -1e-12);
        CHECK(p.a >= plateau);
        CHECK(p.a == doctest::Approx(std::exp(-p.exponent)).epsilon(1e-15));
        prev_exponent = p.exponent;
    }
}

TEST_CASE("log-attenuation scales exactly with the separation squared") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const double s_d = 5.0 * rng.next_unit();
        const double d1 = 1.0 + 10.0 * rng.next_unit();
        const double d2 = 1.0 + 10.0 * rng.next_unit();
        const double e1 = attenuation_engineered(1.0, {d1, 1.0}, s_d).exponent;
        const double e2 = attenuation_engineered(1.0, {d2, 1.0}, s_d).exponent;
        CHECK(rel_diff(e1 / e2, d1 * d1 / (d2 * d2)) < 1e-12);
    }
}

TEST_CASE("scaled form matches the exact exponent while spreading is small") {
    // s_d <= sigma^2/100 keeps the linearization within 1%
    for (double t : {0.05, 0.1, 0.2}) {
        const double s_d = msd_driven_nodissip(t, kOsc, 1.0);
        REQUIRE(s_d <= 0.01);
        const double exact = attenuation_engineered(t, kCat, s_d).a;
        const double scaled = attenuation_scaled(t, kOsc, kCat, 1.0).a;
        CHECK(rel_diff(scaled, exact) < 1e-2);
    }
}

TEST_CASE("decoherence time: frozen bisection anchor") {
    const DecoherenceTimes times = decoherence_time(kOsc, kCat, 1.0);
    CHECK(times.status == DecoherenceStatus::converged);
    CHECK(times.tau0 == 1.0);
    CHECK(rel_diff(times.tau_d, 1.78882000599378864763) < 1e-9);
    // the attenuation really is 1/e there
    const double a = attenuation_engineered(times.tau_d, kCat,
                                            msd_driven_nodissip(times.tau_d, kOsc, 1.0)).a;
    CHECK(rel_diff(a, std::exp(-1.0)) < 1e-9);
}

TEST_CASE("narrow superpositions never decohere") {
    const DecoherenceTimes times = decoherence_time(kOsc, {2.0, 1.0}, 1.0);
    CHECK(times.status == DecoherenceStatus::never_decoheres);
    CHECK(std::isnan(times.tau_d));
    // the boundary case d = 2 sqrt(2) sigma only reaches 1/e asymptotically
    CHECK(decoherence_time(kOsc, {2.0 * std::sqrt(2.0), 1.0}, 1.0).status ==
          DecoherenceStatus::never_decoheres);
}

TEST_CASE("decoherence time follows the inverse-square separation law at large d") {
    const double g = 5e-4;
    const DecoherenceTimes t16 = decoherence_time(kOsc, {16.0, 1.0}, g);
    const DecoherenceTimes t32 = decoherence_time(kOsc, {32.0, 1.0}, g);
    CHECK(rel_diff(t16.tau_d, 129.5283796406018192471) < 1e-8);
    CHECK(rel_diff(t32.tau_d, 31.9178167773055181575) < 1e-8);
    const double ratio = t16.tau_d / t32.tau_d;
    CHECK(ratio > 3.8);
    CHECK(ratio < 4.2);
}

}  // TEST_SUITE
