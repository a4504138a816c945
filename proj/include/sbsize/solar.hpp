#pragma once

#include <vector>

#include "sbsize/data_io.hpp"

namespace sbsize {

/// Modeled cloudless-sky GHI for one date at one site, 1-minute resolution.
struct ClearSkyProfile {
    Date date;
    std::vector<double> ghi_wm2;  // 1440 samples
};

struct SiviResult {
    Date date;
    double sivi = 0.0;       // dimensionless, ~1 on a clear day
    double delta_t_min = 1;  // sample spacing used
    int n_samples = kMinutesPerDay;
};

/// Cosine of the solar zenith angle at a given local-standard-time minute.
/// Low-precision algorithm (Spencer declination and equation of time plus
/// hour angle); zenith accurate to well under 0.5 degrees.
double solar_cos_zenith(const SiteMeta& site, const Date& date, double minute_of_day);

/// Haurwitz clear-sky GHI as a function of cos(zenith); 0 below the horizon.
double haurwitz_ghi(double cos_zenith);

/// 1440-sample Haurwitz clear-sky profile for the site and date.
ClearSkyProfile clear_sky(const SiteMeta& site, const Date& date);

/// Daily solar irradiance variability index: the ratio of the measured GHI
/// curve's path length to the clear-sky curve's path length, with segment
/// lengths sqrt(dGHI^2 + dT^2) in the mixed W/m2-vs-minutes convention.
/// Throws NumericalError for a degenerate (identically zero) clear-sky
/// profile, e.g. polar night, and DataError on shape mismatch.
SiviResult compute_sivi(const IrradianceDay& day, const ClearSkyProfile& cs);

}  // namespace sbsize
