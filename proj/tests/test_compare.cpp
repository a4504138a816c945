#include <doctest.h>

#include "sbsize/compare.hpp"
#include "sbsize/errors.hpp"
#include "sbsize/synth.hpp"

using namespace sbsize;

namespace {
std::vector<SimDay> blend_dataset(int n) {
    const SiteMeta site = fixture_site(0);
    const SynthYear yr = synthesize_year(site, 2021, 7);
    std::vector<IrradianceDay> irr(yr.irradiance.begin(), yr.irradiance.begin() + n);
    std::vector<TemperatureDay> temp(yr.temperature.begin(), yr.temperature.begin() + n);
    return prepare_days(irr, temp, site, PvParams{});
}
}  // namespace

TEST_CASE("compare_methods emits the four method rows with sane coverage") {
    const auto days = blend_dataset(60);
    CompareParams params;
    params.pone = 0.95;
    params.jobs = 2;
    const auto rows = compare_methods(days, SmootherSpec{}, BatteryConfig{}, 1000.0, params);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].method == "peak_energy_exchange");
    CHECK(rows[1].method == "hourly_chronological");
    CHECK(rows[2].method == "detailed_1min");
    CHECK(rows[3].method == "approximate");
    for (const auto& r : rows) {
        CHECK(r.sboc_kwh_per_kwp >= 0.0);
        CHECK(r.coverage >= 0.0);
        CHECK(r.coverage <= 1.0);
    }
    // the detailed method's own coverage cannot fall below its PONE level
    CHECK(rows[2].coverage >= params.pone - 1e-12);
    CHECK(rows[2].coverage >= 0.93);
}

TEST_CASE("supplied coefficients drive the approximate row") {
    const auto days = blend_dataset(20);
    CompareParams params;
    params.pone = 1.0;
    params.jobs = 2;
    params.coeffs = RegressionModel{0.0, 0.0, 0.5, 1};  // constant 0.5 kWh/kWp estimate
    const auto rows = compare_methods(days, SmootherSpec{}, BatteryConfig{}, 1000.0, params);
    CHECK(rows[3].sboc_kwh_per_kwp == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empty dataset is rejected") {
    CHECK_THROWS_AS(compare_methods({}, SmootherSpec{}, BatteryConfig{}, 1000.0, CompareParams{}),
                    DataError);
}
