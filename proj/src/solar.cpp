#include "sbsize/solar.hpp"

#include <cmath>

#include "sbsize/errors.hpp"

namespace sbsize {

namespace {
constexpr double kPi = 3.14159265358979323846;

struct SunGeometry {
    double declination_rad;
    double eot_min;  // equation of time, minutes
};

// Spencer (1971) Fourier fits on the fractional year.
SunGeometry sun_geometry(const Date& date, double hour_of_day) {
    const int n = day_of_year(date);
    const double gamma = 2.0 * kPi / 365.0 * (n - 1 + (hour_of_day - 12.0) / 24.0);
    const double decl = 0.006918 - 0.399912 * std::cos(gamma) + 0.070257 * std::sin(gamma) -
                        0.006758 * std::cos(2 * gamma) + 0.000907 * std::sin(2 * gamma) -
                        0.002697 * std::cos(3 * gamma) + 0.00148 * std::sin(3 * gamma);
    const double eot = 229.18 * (0.000075 + 0.001868 * std::cos(gamma) - 0.032077 * std::sin(gamma) -
                                 0.014615 * std::cos(2 * gamma) - 0.040849 * std::sin(2 * gamma));
    return {decl, eot};
}
}  // namespace

double solar_cos_zenith(const SiteMeta& site, const Date& date, double minute_of_day) {
    const auto geo = sun_geometry(date, minute_of_day / 60.0);
    // True solar time: local standard time corrected for the site's offset
    // from its timezone meridian (4 min per degree) and the equation of time.
    const double tz_meridian_deg = 15.0 * site.utc_offset_h;
    const double tst_min = minute_of_day + geo.eot_min + 4.0 * (site.longitude_deg - tz_meridian_deg);
    const double hour_angle_deg = tst_min / 4.0 - 180.0;
    const double ha = hour_angle_deg * kPi / 180.0;
    const double lat = site.latitude_deg * kPi / 180.0;
    return std::sin(lat) * std::sin(geo.declination_rad) +
           std::cos(lat) * std::cos(geo.declination_rad) * std::cos(ha);
}

double haurwitz_ghi(double cos_zenith) {
    if (cos_zenith <= 0.0) return 0.0;
    return 1098.0 * cos_zenith * std::exp(-0.057 / cos_zenith);
}

ClearSkyProfile clear_sky(const SiteMeta& site, const Date& date) {
    site.validate();
    if (!is_valid_date(date)) throw DataError("clear_sky: invalid date");
    ClearSkyProfile p;
    p.date = date;
    p.ghi_wm2.resize(kMinutesPerDay);
    for (int m = 0; m < kMinutesPerDay; ++m) {
        p.ghi_wm2[m] = haurwitz_ghi(solar_cos_zenith(site, date, static_cast<double>(m)));
    }
    return p;
}

SiviResult compute_sivi(const IrradianceDay& day, const ClearSkyProfile& cs) {
    if (day.ghi_wm2.size() != cs.ghi_wm2.size())
        throw DataError("compute_sivi: series length mismatch");
    const size_t n = day.ghi_wm2.size();
    if (n < 2) throw DataError("compute_sivi: need at least 2 samples");

    bool cs_all_zero = true;
    for (double v : cs.ghi_wm2) {
        if (v != 0.0) {
            cs_all_zero = false;
            break;
        }
    }
    if (cs_all_zero)
        throw NumericalError("compute_sivi: degenerate clear-sky profile (sun never above horizon)");

    const double dt = 1.0;  // minutes
    double num = 0.0, den = 0.0;
    for (size_t t = 0; t + 1 < n; ++t) {
        const double dg = day.ghi_wm2[t + 1] - day.ghi_wm2[t];
        const double dc = cs.ghi_wm2[t + 1] - cs.ghi_wm2[t];
        num += std::sqrt(dg * dg + dt * dt);
        den += std::sqrt(dc * dc + dt * dt);
    }
    return SiviResult{day.date, num / den, dt, static_cast<int>(n)};
}

}  // namespace sbsize
