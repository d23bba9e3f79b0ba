#include <sstream>

#include "helpers.hpp"

using namespace qpg;

TEST_CASE("refractive index golden value at the device operating point") {
    // frozen from an independent single-file evaluation of the shipped
    // coefficients
    const double n = testutil::ln_e().refractive_index(1545.0, 190.0);
    CHECK(n == doctest::Approx(2.4135432278267888).epsilon(1e-12));
}

TEST_CASE("index is real, finite and above 1 across the validity window") {
    for (const auto* m : {&testutil::ln_o(), &testutil::ln_e(), &testutil::lt_o(),
                          &testutil::lt_e(), &testutil::ktp_y(), &testutil::ktp_z()}) {
        const double T = 0.5 * (m->T_min + m->T_max);
        for (int i = 0; i <= 20; ++i) {
            const double lam =
                1e3 * (m->lambda_min_um +
                       (m->lambda_max_um - m->lambda_min_um) * (0.01 + 0.98 * i / 20.0));
            const double n = m->refractive_index(lam, T);
            CHECK(std::isfinite(n));
            CHECK(n > 1.0);
        }
    }
}

TEST_CASE("evaluation outside validity is an error, not an extrapolation") {
    const auto& m = testutil::ln_e();
    CHECK_THROWS_AS(m.refractive_index(0.9 * m.lambda_min_um * 1e3, 190.0),
                    out_of_validity_range);
    CHECK_THROWS_AS(m.refractive_index(1.1 * m.lambda_max_um * 1e3, 190.0),
                    out_of_validity_range);
    CHECK_THROWS_AS(m.refractive_index(1545.0, m.T_max + 1.0), out_of_validity_range);
    CHECK_THROWS_AS(m.refractive_index(1545.0, m.T_min - 1.0), out_of_validity_range);
}

TEST_CASE("index is continuous in temperature") {
    const auto& m = testutil::ln_e();
    const double d =
        std::abs(m.refractive_index(1545.0, 190.0) - m.refractive_index(1545.0, 190.000001));
    CHECK(d < 1e-6);
}

TEST_CASE("table parser rejects malformed records") {
    std::istringstream missing("foo ordinary 1.0 2.0\n");
    CHECK_THROWS_AS(MaterialTable::parse(missing, "mem"), parse_error);
    std::istringstream bad_number(
        "foo ordinary 4.9 0 0.1 0 0.2 0 0 0 20 0.02 24.5 570.5 0 0 0 0.4 xx 20 400\n");
    CHECK_THROWS_AS(MaterialTable::parse(bad_number, "mem"), parse_error);
    std::istringstream empty("# only a comment\n");
    CHECK_THROWS_AS(MaterialTable::parse(empty, "mem"), parse_error);
}

TEST_CASE("table parser accepts comments and reports keys") {
    std::istringstream ok(
        "# comment\n"
        "foo ordinary 4.9 0 0.1 0 0.2 0 0 0 20 0.02 24.5 570.5 0 0 0 0.4 2.2 20 400\n");
    auto tab = MaterialTable::parse(ok, "mem");
    CHECK(tab.has("foo", "ordinary"));
    CHECK_FALSE(tab.has("foo", "extraordinary"));
    CHECK(tab.keys().size() == 1);
    CHECK_THROWS_AS(tab.get("bar", "ordinary"), error);
}

TEST_CASE("bundled table carries all device materials") {
    const auto& tab = MaterialTable::bundled();
    CHECK(tab.has("lithium-niobate-effective-waveguide", "ordinary"));
    CHECK(tab.has("lithium-niobate-effective-waveguide", "extraordinary"));
    CHECK(tab.has("lithium-tantalate-bulk", "ordinary"));
    CHECK(tab.has("lithium-tantalate-bulk", "extraordinary"));
    CHECK(tab.has("ktp-bulk", "y"));
    CHECK(tab.has("ktp-bulk", "z"));
}
