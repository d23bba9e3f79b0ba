#include "helpers.hpp"

using namespace qpg;

TEST_CASE("energy conservation fixes the output wavelength") {
    auto spec = testutil::device_process();
    CHECK(spec.lambda_out_nm() == doctest::Approx(550.0).epsilon(2e-4));
    // 1/1545 + 1/854 exactly
    CHECK(spec.lambda_out_nm() == doctest::Approx(1.0 / (1.0 / 1545.0 + 1.0 / 854.0)));
}

TEST_CASE("spec validation") {
    auto spec = testutil::device_process();
    CHECK_NOTHROW(spec.validate());
    auto bad = spec;
    bad.length_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), error);
    bad = spec;
    bad.qpm_order = 2;
    CHECK_THROWS_AS(bad.validate(), error);
}

TEST_CASE("solved poling period cancels the mismatch at centre") {
    auto spec = with_solved_poling_period(testutil::device_process());
    const double dk = delta_k(spec, spec.lambda_in_nm, spec.lambda_pump_nm);
    CHECK(std::abs(dk) < 1e-6 * 2.0 * pi / *spec.poling_period_m);
}

TEST_CASE("poling period golden value at the device point") {
    // frozen from an independent evaluation of the wavevector mismatch
    auto spec = with_solved_poling_period(testutil::device_process());
    CHECK(*spec.poling_period_m == doctest::Approx(3.760156310858207e-6).epsilon(1e-10));
}

TEST_CASE("poling period is linear in the grating order") {
    auto spec = testutil::device_process();
    const double l1 = solve_poling_period(spec);
    spec.qpm_order = 3;
    const double l3 = solve_poling_period(spec);
    CHECK(l3 == doctest::Approx(3.0 * l1).epsilon(1e-14));
}

TEST_CASE("shrinking the period shifts the mismatch by the analytic derivative") {
    auto spec = with_solved_poling_period(testutil::device_process());
    const double lam = *spec.poling_period_m;
    const double eps = 1e-6;
    auto shifted = spec;
    shifted.poling_period_m = lam / (1.0 + eps);
    const double d = delta_k(shifted, spec.lambda_in_nm, spec.lambda_pump_nm) -
                     delta_k(spec, spec.lambda_in_nm, spec.lambda_pump_nm);
    // the grating compensates a negative material mismatch here, so the
    // magnitude grows with 2 pi eps / Lambda regardless of orientation
    CHECK(std::abs(d) == doctest::Approx(spec.qpm_order * 2.0 * pi * eps / lam).epsilon(1e-4));
}

TEST_CASE("phasematching amplitude is 1 at centre and bounded everywhere") {
    auto spec = with_solved_poling_period(testutil::device_process());
    CHECK(std::abs(phasematching_value(spec, 1545.0, 854.0)) == doctest::Approx(1.0));
    SpectralGrid gin(1535.0, 1555.0, 41, axis_unit::nanometre);
    SpectralGrid gp(851.0, 857.0, 41, axis_unit::nanometre);
    auto map = phasematching_map(spec, gin, gp);
    for (int i = 0; i < gin.n; ++i)
        for (int j = 0; j < gp.n; ++j) {
            CHECK(std::isfinite(std::abs(map.values(i, j))));
            CHECK(std::abs(map.values(i, j)) <= 1.0 + 1e-12);
        }
}

TEST_CASE("amplitude depends on the wavevector mismatch only") {
    auto spec = with_solved_poling_period(testutil::device_process());
    // two detunings with equal delta k must give equal amplitudes
    const double dk = delta_k(spec, 1547.0, 853.5);
    // scan the pump at a different input wavelength for the same mismatch
    double lo = 850.0, hi = 860.0;
    const bool increasing = delta_k(spec, 1543.0, hi) > delta_k(spec, 1543.0, lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const bool above = delta_k(spec, 1543.0, mid) > dk;
        ((above == increasing) ? hi : lo) = mid;
    }
    const double pump2 = 0.5 * (lo + hi);
    const auto v1 = phasematching_value(spec, 1547.0, 853.5);
    const auto v2 = phasematching_value(spec, 1543.0, pump2);
    CHECK(std::abs(v1 - v2) < 1e-10);
}

TEST_CASE("flat response over a 20 nm input span at the matched point") {
    auto spec = with_solved_poling_period(testutil::device_process());
    for (double lam = 1535.0; lam <= 1555.0; lam += 1.0) {
        // stay on the energy-conservation curve of the fixed output
        const double inv = 1.0 / spec.lambda_out_nm() - 1.0 / lam;
        const double pump = 1.0 / inv;
        CHECK(std::abs(phasematching_value(spec, lam, pump)) > 0.9);
    }
}

TEST_CASE("output bandwidth at the device spec sits at 129 GHz") {
    auto spec = with_solved_poling_period(testutil::device_process());
    const double f = phasematching_output_fwhm(spec);
    CHECK(f > 90e9);
    CHECK(f < 170e9);
    CHECK(f == doctest::Approx(129e9).epsilon(0.01));
}

TEST_CASE("bandwidth scales inversely with length") {
    auto spec = with_solved_poling_period(testutil::device_process());
    const double f27 = phasematching_output_fwhm(spec);
    auto half = spec;
    half.length_m = spec.length_m / 2.0;
    const double f_half = phasematching_output_fwhm(half);
    CHECK(f_half == doctest::Approx(2.0 * f27).epsilon(0.02));
}

TEST_CASE("missing poling period is an error for delta_k") {
    auto spec = testutil::device_process();
    CHECK_THROWS_AS(delta_k(spec, 1545.0, 854.0), error);
}
