#include "sbsize/compare.hpp"

#include "sbsize/errors.hpp"

namespace sbsize {

namespace {
double coverage_at(const std::vector<SimDay>& days, const SmootherSpec& spec,
                   const BatteryConfig& tmpl, double p_nom_wp, double cap_kwh_per_kwp) {
    if (!(cap_kwh_per_kwp > 0.0)) return 0.0;
    BatteryConfig cfg = tmpl;
    cfg.e_nom_kwh = cap_kwh_per_kwp * p_nom_wp / 1000.0;
    size_t ok = 0;
    for (const auto& d : days) {
        if (simulate_day(d.p_pv_w, spec, cfg, p_nom_wp).feasible) ++ok;
    }
    return static_cast<double>(ok) / static_cast<double>(days.size());
}
}  // namespace

std::vector<MethodRow> compare_methods(const std::vector<SimDay>& days, const SmootherSpec& spec,
                                       const BatteryConfig& cfg, double p_nom_wp,
                                       const CompareParams& params) {
    if (days.empty()) throw DataError("compare_methods: empty dataset");

    const double peak = peak_energy_exchange(days, spec, p_nom_wp);
    const double hourly = hourly_year_sizing(days, spec, cfg, p_nom_wp, params.search);
    const YearSizingReport detailed =
        size_year(days, spec, cfg, p_nom_wp, params.pone, params.search, params.jobs);

    RegressionModel model;
    if (params.coeffs) {
        model = *params.coeffs;
    } else {
        std::vector<double> xs, ys;
        for (const auto& r : detailed.per_day) {
            xs.push_back(r.sivi);
            ys.push_back(r.sboc_kwh_per_kwp);
        }
        model = fit_regression(xs, ys);
    }
    std::vector<double> sivis;
    for (const auto& d : days) sivis.push_back(d.sivi);
    const double sivi_at_pone = EmpiricalCdf(sivis).quantile(params.pone);
    const double approx = estimate_sboc(model, sivi_at_pone);

    std::vector<MethodRow> rows;
    rows.push_back({"peak_energy_exchange", peak, coverage_at(days, spec, cfg, p_nom_wp, peak)});
    rows.push_back({"hourly_chronological", hourly, coverage_at(days, spec, cfg, p_nom_wp, hourly)});
    rows.push_back({"detailed_1min", detailed.sboc_selected,
                    coverage_at(days, spec, cfg, p_nom_wp, detailed.sboc_selected)});
    rows.push_back({"approximate", approx, coverage_at(days, spec, cfg, p_nom_wp, approx)});
    return rows;
}

}  // namespace sbsize
