#include "helpers.hpp"

using namespace qpg;

namespace {
ComplexMap2D source_jsa(int n, double pump_fwhm = testutil::source_pump_fwhm_hz) {
    auto spec = testutil::source_pdc();
    auto pump = PumpEnvelope::gaussian(spec.lambda_pump_nm, pump_fwhm);
    auto g = testutil::pdc_grid(n);
    return pdc_jsa(spec, pump, g, g);
}
} // namespace

TEST_CASE("pump envelope basics") {
    auto p = PumpEnvelope::gaussian(772.5, 1293e9);
    const double nu0 = frequency_from_wavelength_nm(772.5);
    CHECK(std::abs(p(nu0)) == doctest::Approx(1.0));
    CHECK(std::norm(p(nu0 + 1293e9 / 2.0)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(PumpEnvelope::gaussian(772.5, 0.0), error);
    SpectralGrid wl(770.0, 775.0, 8, axis_unit::nanometre);
    CHECK_THROWS_AS(PumpEnvelope::sampled(wl, std::vector<std::complex<double>>(8, 1.0)),
                    error);
}

TEST_CASE("sampled pump interpolates and normalizes to unit peak") {
    SpectralGrid g(1e14, 2e14, 11, axis_unit::hertz);
    std::vector<std::complex<double>> amp(11, 0.0);
    amp[5] = 4.0;
    auto p = PumpEnvelope::sampled(g, amp);
    CHECK(std::abs(p(g[5])) == doctest::Approx(1.0));
    CHECK(std::abs(p(0.5 * (g[4] + g[5]))) == doctest::Approx(0.5));
    CHECK(std::abs(p(g.lo - 1.0)) == 0.0);
}

TEST_CASE("Schmidt number of the source at the measured grid matches the golden") {
    // frozen from an independent decomposition of the same 64x64 kernel
    auto d = schmidt(source_jsa(64));
    CHECK(std::abs(d.schmidt_number() - 1.1669699851199478) < 2e-5);
}

TEST_CASE("source purity clears the near-separable threshold") {
    auto d = schmidt(source_jsa(96));
    CHECK(d.schmidt_number() < 1.20);
    CHECK(d.schmidt_number() >= 1.0);
}

TEST_CASE("Schmidt coefficients are normalized, sorted, and reconstruct the kernel") {
    auto map = source_jsa(48);
    auto d = schmidt(map);
    double sum2 = 0.0;
    for (std::size_t i = 0; i < d.coefficients.size(); ++i) {
        sum2 += d.coefficients[i] * d.coefficients[i];
        if (i) CHECK(d.coefficients[i] <= d.coefficients[i - 1] + 1e-14);
    }
    CHECK(std::abs(sum2 - 1.0) < 1e-10);

    Eigen::VectorXd s(d.coefficients.size());
    for (std::size_t i = 0; i < d.coefficients.size(); ++i) s(i) = d.coefficients[i] * d.norm;
    Eigen::MatrixXcd rebuilt =
        d.input_modes * s.asDiagonal() * d.second_axis_modes.adjoint();
    CHECK((rebuilt - map.values).norm() / map.values.norm() < 1e-8);

    Eigen::MatrixXcd gram = d.input_modes.adjoint() * d.input_modes;
    CHECK((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).norm() < 1e-8);
}

TEST_CASE("an exactly separable kernel has Schmidt number 1") {
    ComplexMap2D map;
    map.axis_first = SpectralGrid(-1.0, 1.0, 40, axis_unit::hertz);
    map.axis_second = map.axis_first;
    map.values.resize(40, 40);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j)
            map.values(i, j) = std::exp(-map.axis_first[i] * map.axis_first[i]) *
                               std::complex<double>(0.0, 1.0) *
                               std::exp(-2.0 * map.axis_second[j] * map.axis_second[j]);
    CHECK(std::abs(schmidt(map).schmidt_number() - 1.0) < 1e-10);
}

TEST_CASE("a correlated ridge kernel has large Schmidt number under refinement") {
    auto build = [](int n) {
        ComplexMap2D map;
        map.axis_first = SpectralGrid(-1.0, 1.0, n, axis_unit::hertz);
        map.axis_second = map.axis_first;
        map.values.resize(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double d = map.axis_first[i] + map.axis_second[j];
                // ridge much narrower than the pixel pitch: effective rank
                // keeps growing until the grid resolves it
                map.values(i, j) = std::exp(-2e4 * d * d);
            }
        return map;
    };
    const double k32 = schmidt(build(32)).schmidt_number();
    const double k64 = schmidt(build(64)).schmidt_number();
    CHECK(k32 > 3.0);
    CHECK(k64 > k32);
}

TEST_CASE("schmidt rejects degenerate kernels") {
    ComplexMap2D map;
    map.axis_first = SpectralGrid(-1.0, 1.0, 4, axis_unit::hertz);
    map.axis_second = map.axis_first;
    map.values = Eigen::MatrixXcd::Zero(4, 4);
    CHECK_THROWS_AS(schmidt(map), numerical_failure);
    map.values(0, 0) = std::nan("");
    CHECK_THROWS_AS(schmidt(map), numerical_failure);
}

TEST_CASE("signal marginal bandwidth reproduces the source figure") {
    auto map = source_jsa(256);
    auto fw = marginal_fwhm(map, 0, fwhm_method::halfmax_interp);
    CHECK(fw.value == doctest::Approx(testutil::source_signal_fwhm_hz).epsilon(0.02));
}

TEST_CASE("a flat pump leaves only the phasematching band") {
    auto spec = testutil::source_pdc();
    auto g = testutil::pdc_grid(64);
    std::vector<std::complex<double>> flat(64, 1.0);
    SpectralGrid pg(2.0 * g.lo - 1e12, 2.0 * g.hi + 1e12, 64, axis_unit::hertz);
    auto map = pdc_jsa(spec, PumpEnvelope::sampled(pg, flat), g, g);
    // every antidiagonal (fixed nu_s + nu_i) of a pure-phasematching kernel
    // would still vary; instead check the pump factor really dropped out by
    // comparing against an explicit unit envelope
    auto mapg = pdc_jsa(spec, PumpEnvelope::gaussian(spec.lambda_pump_nm, 1e16), g, g);
    CHECK((map.values - mapg.values).norm() / mapg.values.norm() < 1e-4);
}

TEST_CASE("narrowing the pump toward CW stretches the kernel along the antidiagonal") {
    const double k_wide = schmidt(source_jsa(64, 4e12)).schmidt_number();
    const double k_cw = schmidt(source_jsa(64, 5e10)).schmidt_number();
    CHECK(k_cw > 3.0 * k_wide);
}

TEST_CASE("converter joint transfer amplitude is centred on the 550 nm output") {
    auto spec = with_solved_poling_period(testutil::device_process());
    auto pump = PumpEnvelope::gaussian(854.0, 3e11);
    const double nu_in0 = frequency_from_wavelength_nm(1545.0);
    const double nu_out0 = nu_in0 + frequency_from_wavelength_nm(854.0);
    SpectralGrid gi(nu_in0 - 3e12, nu_in0 + 3e12, 65, axis_unit::hertz);
    SpectralGrid go(nu_out0 - 8e11, nu_out0 + 8e11, 257, axis_unit::hertz);
    auto jta = conversion_jta(spec, pump, gi, go);
    auto fw = marginal_fwhm(jta, 1, fwhm_method::halfmax_interp);
    // output marginal peaks at the energy-conserving centre
    Eigen::Index imax = 0, jmax = 0;
    jta.values.cwiseAbs().maxCoeff(&imax, &jmax);
    CHECK(std::abs(go[static_cast<int>(jmax)] - nu_out0) < 2.0 * go.step());
    CHECK(wavelength_nm_from_frequency(nu_out0) == doctest::Approx(550.0).epsilon(2e-4));
    CHECK(fw.value > 0.0);
}

TEST_CASE("compression factor arithmetic") {
    CHECK(compression_factor(963e9, 129e9) == doctest::Approx(963.0 / 129.0));
    CHECK(std::abs(compression_factor(963e9, 129e9) - 7.47) < 0.01);
    CHECK(compression_factor(5.0, 5.0) == doctest::Approx(1.0));
    CHECK(compression_factor(2e12, 1e11) ==
          doctest::Approx(2.0 * compression_factor(1e12, 1e11)));
    CHECK_THROWS_AS(compression_factor(0.0, 1e11), error);
    CHECK_THROWS_AS(compression_factor(1e12, -1.0), error);
}

TEST_CASE("pump tuning finds a near-separable point and reports unreachable targets") {
    auto spec = testutil::source_pdc();
    auto g = testutil::pdc_grid(48);
    auto r = tune_pump_for_decorrelation(spec, 1.20, g, g);
    CHECK(r.achieved_K < 1.20);
    // the optimum is interior: both bracket edges are worse
    auto K_at = [&](double fwhm) {
        return schmidt(pdc_jsa(spec, PumpEnvelope::gaussian(spec.lambda_pump_nm, fwhm), g, g))
            .schmidt_number();
    };
    CHECK(K_at(r.pump.fwhm_hz * 4.0) > r.achieved_K);
    CHECK(K_at(r.pump.fwhm_hz / 4.0) > r.achieved_K);
    CHECK_THROWS_AS(tune_pump_for_decorrelation(spec, 1.0000001, g, g), target_unreachable);
    CHECK_THROWS_AS(tune_pump_for_decorrelation(spec, 0.5, g, g), error);
}
