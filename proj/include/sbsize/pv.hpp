#pragma once

#include <vector>

#include "sbsize/data_io.hpp"

namespace sbsize {

/// PV array and inverter constants. Defaults are the reference crystalline
/// silicon setup used throughout: 1 kWp, light soiling, Tier-1 datasheet
/// temperature coefficient and inverter efficiency.
struct PvParams {
    double p_nom_wp = 1000.0;   // nameplate at STC, watt-peak
    double k_e = 0.90;          // environmental derating (soiling, dust)
    double k_m = 0.95;          // manufacturer output tolerance
    double k_pt_per_c = 0.0038; // power-temperature coefficient, 1/degC
    double eta_inv = 0.95;      // inverter efficiency

    void validate() const;  // throws DataError
};

/// AC output power for one GHI sample. GHI enters per-unit of the 1000 W/m2
/// STC irradiance; ambient temperature derates linearly via (1 - k_pt * T).
/// Result clamps at zero (extreme temperatures cannot produce negative power).
double pv_power(double ghi_wm2, double t_amb_c, const PvParams& p);

/// Elementwise pv_power over a day, ambient held at the day's maximum
/// temperature. Throws DataError if the dates do not match.
std::vector<double> pv_day(const IrradianceDay& day, const TemperatureDay& temp, const PvParams& p);

}  // namespace sbsize
