#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbsize/data_io.hpp"

namespace sbsize {

/// Synthetic day archetypes: a pure clear-sky day, a clear-sky day with
/// seeded random cloud transients, a uniformly dim day, and a periodic
/// clear/20% square wave.
enum class DayProfile { Clear, Mixed, Overcast, SquareWave };

DayProfile parse_profile(const std::string& name);  // throws DataError
std::string profile_name(DayProfile p);

struct SynthOptions {
    int square_period_min = 60;  // full period of the square wave
};

/// Deterministic synthetic irradiance day. `clear` is bit-identical to the
/// site's clear-sky profile; `overcast` is 25% of it; the other profiles are
/// pure functions of (profile, seed, site, date).
IrradianceDay synthesize_day(DayProfile profile, std::uint64_t seed, const SiteMeta& site,
                             const Date& date, const SynthOptions& opts = {});

struct SynthYear {
    std::vector<IrradianceDay> irradiance;
    std::vector<TemperatureDay> temperature;
};

/// Deterministic mixed-weather fixture year (the bundled dataset used by the
/// integration tests): a seeded blend of clear, overcast, square-wave and
/// mixed days with seasonal temperatures.
SynthYear synthesize_year(const SiteMeta& site, int year, std::uint64_t seed);

/// Built-in synthetic sites (index 0..2) at different latitudes/timezones.
SiteMeta fixture_site(int index = 0);

}  // namespace sbsize
