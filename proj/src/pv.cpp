#include "sbsize/pv.hpp"

#include <algorithm>

#include "sbsize/errors.hpp"

namespace sbsize {

void PvParams::validate() const {
    if (!(p_nom_wp > 0.0)) throw DataError("p_nom must be > 0");
    auto frac = [](double v) { return v > 0.0 && v <= 1.0; };
    if (!frac(k_e)) throw DataError("k_e must be in (0, 1]");
    if (!frac(k_m)) throw DataError("k_m must be in (0, 1]");
    if (!frac(eta_inv)) throw DataError("eta_inv must be in (0, 1]");
    if (k_pt_per_c < 0.0 || k_pt_per_c > 0.02) throw DataError("k_pt must be in [0, 0.02]");
}

double pv_power(double ghi_wm2, double t_amb_c, const PvParams& p) {
    const double w = (ghi_wm2 / 1000.0) * p.p_nom_wp * p.k_e * p.k_m *
                     (1.0 - p.k_pt_per_c * t_amb_c) * p.eta_inv;
    return std::max(0.0, w);
}

std::vector<double> pv_day(const IrradianceDay& day, const TemperatureDay& temp, const PvParams& p) {
    if (day.date != temp.date)
        throw DataError("pv_day: date mismatch (" + to_string(day.date) + " vs " + to_string(temp.date) + ")");
    std::vector<double> out(day.ghi_wm2.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = pv_power(day.ghi_wm2[i], temp.t_max_c, p);
    return out;
}

}  // namespace sbsize
