#pragma once

#include <string>
#include <vector>

#include "sbsize/dates.hpp"

namespace sbsize {

inline constexpr int kMinutesPerDay = 1440;
inline constexpr double kGhiCeilingWm2 = 1600.0;  // physical validation bound
inline constexpr int kMaxGapMinutes = 30;         // longer gaps drop the whole day

struct SiteMeta {
    std::string site_id;
    std::string name;
    double latitude_deg = 0.0;   // -90..90, south negative
    double longitude_deg = 0.0;  // -180..180, east positive
    double utc_offset_h = 0.0;   // standard-time offset, -14..14

    void validate() const;  // throws DataError
};

/// One day of 1-minute GHI samples. gap_mask marks imputed minutes.
struct IrradianceDay {
    Date date;
    std::vector<double> ghi_wm2;  // exactly 1440 samples
    std::vector<bool> gap_mask;   // exactly 1440 flags, true = imputed

    void validate() const;  // throws DataError
};

struct TemperatureDay {
    Date date;
    double t_max_c = 0.0;  // daytime maximum, held constant over the day

    void validate() const;  // throws DataError
};

struct IrradianceLoadResult {
    struct ExcludedDay {
        Date date;
        std::string reason;
    };
    std::vector<IrradianceDay> days;       // date order
    std::vector<ExcludedDay> excluded;     // days dropped for gaps > 30 min
    long long imputed_minutes = 0;
};

/// Loads the canonical irradiance CSV (header "timestamp,ghi_wm2", one row per
/// minute, timestamps in site-local standard time). Gaps of up to 30
/// consecutive minutes are linearly interpolated (edge gaps hold the nearest
/// sample) and flagged in gap_mask; days with longer gaps are excluded.
/// Throws DataError on malformed rows, non-monotonic or duplicate timestamps,
/// and out-of-range GHI, all with line numbers.
IrradianceLoadResult load_irradiance(const std::string& path, const SiteMeta& site);

struct TemperatureLoadResult {
    std::vector<TemperatureDay> days;  // one record per date over the input span
    std::vector<Date> filled;          // dates that inherited the prior value
};

/// Loads the canonical temperature CSV (header "date,tmax_c"). Missing dates
/// between the first and last record inherit the nearest prior value.
TemperatureLoadResult load_temperature(const std::string& path);

/// Loads a key=value site file (site_id, name, latitude, longitude, utc_offset).
SiteMeta load_site(const std::string& path);

// Canonical writers. GHI is written with four decimals so that
// write(load(f)) round-trips canonical files byte for byte.
void write_irradiance_csv(const std::string& path, const std::vector<IrradianceDay>& days);
void write_temperature_csv(const std::string& path, const std::vector<TemperatureDay>& days);
void write_site_file(const std::string& path, const SiteMeta& site);

}  // namespace sbsize
