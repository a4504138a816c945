#pragma once

#include <map>
#include <span>
#include <vector>

#include "sbsize/battery.hpp"
#include "sbsize/empirical.hpp"
#include "sbsize/pv.hpp"
#include "sbsize/smoothing.hpp"
#include "sbsize/solar.hpp"

namespace sbsize {

/// One simulation-ready day: PV ac power at 1-minute resolution plus the
/// day's variability index.
struct SimDay {
    Date date;
    double sivi = 0.0;
    std::vector<double> p_pv_w;  // 1440 samples
};

/// Joins irradiance, temperature and site data into SimDays (clear-sky
/// profile, SIVI, PV power). Days whose clear-sky profile is degenerate or
/// whose temperature record is missing raise DataError/NumericalError.
std::vector<SimDay> prepare_days(const std::vector<IrradianceDay>& irradiance,
                                 const std::vector<TemperatureDay>& temperature,
                                 const SiteMeta& site, const PvParams& pv);

struct DaySimStats {
    bool feasible = false;
    double min_soc = 0.0;
    double max_soc = 0.0;
    bool any_clip = false;
};

/// Chronological 1-minute simulation of one day: smooth the PV series, drive
/// the battery with p_sb, start from fresh_state (nightly recharge).
/// Feasible iff no step clipped and SoC stayed within (soc_min, soc_max].
DaySimStats simulate_day(std::span<const double> p_pv_w, const SmootherSpec& spec,
                         const BatteryConfig& cfg, double p_nom_wp);

struct DailySizingResult {
    Date date;
    double sivi = 0.0;
    double sboc_kwh_per_kwp = 0.0;
    bool feasible_at_cap = true;  // false when even the upper bound fails
    int iterations = 0;
};

/// Capacity search settings, in kWh per kWp of PV.
struct SearchParams {
    double tol = 1e-4;
    double upper = 2.0;
};

/// Binary search for the smallest feasible capacity on one day. Feasibility
/// is monotone in capacity (see tests), the search keeps the upper iterate
/// verified-feasible and terminates when the bracket width drops below tol.
/// If the day is infeasible at `upper`, returns upper with
/// feasible_at_cap = false. date/sivi are left for the caller to fill.
DailySizingResult optimize_day(std::span<const double> p_pv_w, const SmootherSpec& spec,
                               const BatteryConfig& cfg_template, double p_nom_wp,
                               const SearchParams& search);

struct YearSizingReport {
    std::vector<DailySizingResult> per_day;  // date order
    EmpiricalCdf cdf;                        // of per-day sboc
    std::map<double, double> sboc_at_pone;   // PONE level -> kWh/kWp
    double pone_level = 0.95;
    double sboc_selected = 0.0;  // quantile at the requested PONE level
    double pearson_r = 0.0;      // corr(daily SIVI, daily sboc)
};

/// Per-day optimization over a dataset (optionally across `jobs` worker
/// threads; results are in date order regardless of scheduling), empirical
/// CDF, PONE quantiles and the SIVI correlation.
YearSizingReport size_year(const std::vector<SimDay>& days, const SmootherSpec& spec,
                           const BatteryConfig& cfg, double p_nom_wp, double pone,
                           const SearchParams& search, int jobs = 1);

/// Peak-energy-exchange baseline: per day, the range (max - min) of the
/// running integral of p_sb, ignoring efficiencies and SoC limits; the year
/// value is the maximum day. kWh per kWp.
double peak_energy_exchange(const std::vector<SimDay>& days, const SmootherSpec& spec,
                            double p_nom_wp);

/// Hourly chronological baseline: PV power resampled to hourly means, one
/// continuous simulation of the whole dataset with no nightly recharge
/// (smoothing windows/limits apply per hourly step). If the given upper bound
/// is infeasible it is doubled until a feasible capacity brackets the search.
double hourly_year_sizing(const std::vector<SimDay>& days, const SmootherSpec& spec,
                          const BatteryConfig& cfg, double p_nom_wp, const SearchParams& search);

enum class SweepAxis { MaWindow, RrLimit, Dod, SocInit };

struct SweepRow {
    double value = 0.0;
    double mean_sboc = 0.0;
    double sigma = 0.0;      // standard error of the sboc-vs-SIVI regression
    double pearson_r = 0.0;
};

/// Re-runs size_year varying one parameter axis; emits one summary row per
/// value. Throws DataError for values outside the parameter's validity range.
std::vector<SweepRow> sensitivity_sweep(const std::vector<SimDay>& days, SweepAxis axis,
                                        std::span<const double> values, const SmootherSpec& base_spec,
                                        const BatteryConfig& base_cfg, double p_nom_wp, double pone,
                                        const SearchParams& search, int jobs = 1);

}  // namespace sbsize
