#include "sbsize/sizing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "sbsize/errors.hpp"

namespace sbsize {

namespace {
constexpr double kMinuteHours = 1.0 / 60.0;

BatteryConfig with_capacity(const BatteryConfig& tmpl, double e_nom_kwh) {
    BatteryConfig cfg = tmpl;
    cfg.e_nom_kwh = e_nom_kwh;
    return cfg;
}

// Degenerate datasets (all-clear years have constant SIVI) report NaN rather
// than failing the whole run.
double pearson_or_nan(std::span<const double> xs, std::span<const double> ys) {
    try {
        return pearson(xs, ys);
    } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

double sigma_or_nan(std::span<const double> xs, std::span<const double> ys) {
    try {
        return fit_regression(xs, ys).sigma;
    } catch (const std::exception&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

// Feasibility-only simulation with early exit on the first clip or SoC
// violation; the optimizer's inner loop.
bool run_feasible(std::span<const double> p_sb_w, const BatteryConfig& cfg, double dt_h) {
    BatteryState state = fresh_state(cfg);
    for (double p : p_sb_w) {
        const StepResult r = kibam_step(state, p, dt_h, cfg);
        if (r.clipped) return false;
        state = r.state;
        const double s = soc(state, cfg);
        if (!(s > cfg.soc_min) || s > cfg.soc_max) return false;
    }
    return true;
}
}  // namespace

std::vector<SimDay> prepare_days(const std::vector<IrradianceDay>& irradiance,
                                 const std::vector<TemperatureDay>& temperature,
                                 const SiteMeta& site, const PvParams& pv) {
    pv.validate();
    std::map<Date, double> tmax;
    for (const auto& t : temperature) tmax[t.date] = t.t_max_c;

    std::vector<SimDay> out;
    out.reserve(irradiance.size());
    for (const auto& day : irradiance) {
        auto it = tmax.find(day.date);
        if (it == tmax.end())
            throw DataError("no temperature record for " + to_string(day.date));
        const ClearSkyProfile cs = clear_sky(site, day.date);
        SimDay sd;
        sd.date = day.date;
        sd.sivi = compute_sivi(day, cs).sivi;
        sd.p_pv_w = pv_day(day, TemperatureDay{day.date, it->second}, pv);
        out.push_back(std::move(sd));
    }
    std::sort(out.begin(), out.end(), [](const SimDay& a, const SimDay& b) { return a.date < b.date; });
    return out;
}

DaySimStats simulate_day(std::span<const double> p_pv_w, const SmootherSpec& spec,
                         const BatteryConfig& cfg, double p_nom_wp) {
    cfg.validate();
    const SmoothedDay sm = smooth(p_pv_w, spec, p_nom_wp);

    DaySimStats stats;
    BatteryState state = fresh_state(cfg);
    double lo = soc(state, cfg), hi = lo;
    for (double p : sm.p_sb_w) {
        const StepResult r = kibam_step(state, p, kMinuteHours, cfg);
        stats.any_clip = stats.any_clip || r.clipped;
        state = r.state;
        const double s = soc(state, cfg);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    stats.min_soc = lo;
    stats.max_soc = hi;
    stats.feasible = !stats.any_clip && lo > cfg.soc_min && hi <= cfg.soc_max;
    return stats;
}

DailySizingResult optimize_day(std::span<const double> p_pv_w, const SmootherSpec& spec,
                               const BatteryConfig& cfg_template, double p_nom_wp,
                               const SearchParams& search) {
    if (!(search.tol > 0.0) || !(search.upper > search.tol))
        throw DataError("optimize_day: need 0 < tol < upper");
    const double kwp = p_nom_wp / 1000.0;
    const SmoothedDay sm = smooth(p_pv_w, spec, p_nom_wp);

    DailySizingResult res;
    auto feasible = [&](double cap_per_kwp) {
        ++res.iterations;
        return run_feasible(sm.p_sb_w, with_capacity(cfg_template, cap_per_kwp * kwp), kMinuteHours);
    };

    if (!feasible(search.upper)) {
        res.sboc_kwh_per_kwp = search.upper;
        res.feasible_at_cap = false;
        return res;
    }
    double lo = 0.0;           // infeasible by convention (never simulated)
    double hi = search.upper;  // verified feasible
    while (hi - lo >= search.tol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    res.sboc_kwh_per_kwp = hi;
    res.feasible_at_cap = true;
    return res;
}

YearSizingReport size_year(const std::vector<SimDay>& days, const SmootherSpec& spec,
                           const BatteryConfig& cfg, double p_nom_wp, double pone,
                           const SearchParams& search, int jobs) {
    if (days.empty()) throw DataError("size_year: empty dataset");
    if (!(pone > 0.0 && pone <= 1.0)) throw DataError("size_year: PONE level must be in (0, 1]");
    cfg.validate();
    spec.validate();

    std::vector<const SimDay*> ordered;
    ordered.reserve(days.size());
    for (const auto& d : days) ordered.push_back(&d);
    std::sort(ordered.begin(), ordered.end(),
              [](const SimDay* a, const SimDay* b) { return a->date < b->date; });

    std::vector<DailySizingResult> per_day(ordered.size());
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(ordered.size())));
    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= ordered.size()) break;
            DailySizingResult r = optimize_day(ordered[i]->p_pv_w, spec, cfg, p_nom_wp, search);
            r.date = ordered[i]->date;
            r.sivi = ordered[i]->sivi;
            per_day[i] = r;
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::vector<double> sbocs, sivis;
    sbocs.reserve(per_day.size());
    sivis.reserve(per_day.size());
    for (const auto& r : per_day) {
        sbocs.push_back(r.sboc_kwh_per_kwp);
        sivis.push_back(r.sivi);
    }

    YearSizingReport report{std::move(per_day), EmpiricalCdf(sbocs), {}, pone, 0.0, 0.0};
    for (double level : {0.50, 0.75, 0.90, 0.95, 0.99, 1.00}) {
        report.sboc_at_pone[level] = report.cdf.quantile(level);
    }
    report.sboc_at_pone[pone] = report.cdf.quantile(pone);
    report.sboc_selected = report.cdf.quantile(pone);
    report.pearson_r = pearson_or_nan(sivis, sbocs);
    return report;
}

double peak_energy_exchange(const std::vector<SimDay>& days, const SmootherSpec& spec,
                            double p_nom_wp) {
    if (days.empty()) throw DataError("peak_energy_exchange: empty dataset");
    double year_max = 0.0;
    for (const auto& day : days) {
        const SmoothedDay sm = smooth(day.p_pv_w, spec, p_nom_wp);
        double run = 0.0, lo = 0.0, hi = 0.0;  // range includes the empty start
        for (double p : sm.p_sb_w) {
            run += p * kMinuteHours;  // Wh of cumulative exchange
            lo = std::min(lo, run);
            hi = std::max(hi, run);
        }
        year_max = std::max(year_max, (hi - lo) / p_nom_wp);  // Wh / Wp == kWh / kWp
    }
    return year_max;
}

double hourly_year_sizing(const std::vector<SimDay>& days, const SmootherSpec& spec,
                          const BatteryConfig& cfg, double p_nom_wp, const SearchParams& search) {
    if (days.empty()) throw DataError("hourly_year_sizing: empty dataset");
    cfg.validate();
    spec.validate();

    std::vector<const SimDay*> ordered;
    for (const auto& d : days) ordered.push_back(&d);
    std::sort(ordered.begin(), ordered.end(),
              [](const SimDay* a, const SimDay* b) { return a->date < b->date; });

    std::vector<double> hourly;
    hourly.reserve(ordered.size() * 24);
    for (const auto* d : ordered) {
        for (int h = 0; h < 24; ++h) {
            double sum = 0.0;
            for (int m = 0; m < 60; ++m) sum += d->p_pv_w[h * 60 + m];
            hourly.push_back(sum / 60.0);
        }
    }
    const SmoothedDay sm = smooth(hourly, spec, p_nom_wp);

    const double kwp = p_nom_wp / 1000.0;
    auto feasible = [&](double cap_per_kwp) {
        return run_feasible(sm.p_sb_w, with_capacity(cfg, cap_per_kwp * kwp), 1.0);
    };

    double upper = search.upper;
    while (!feasible(upper)) {
        upper *= 2.0;
        if (upper > 1e6) throw NumericalError("hourly_year_sizing: no feasible capacity found");
    }
    double lo = 0.0, hi = upper;
    while (hi - lo >= search.tol) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::vector<SweepRow> sensitivity_sweep(const std::vector<SimDay>& days, SweepAxis axis,
                                        std::span<const double> values, const SmootherSpec& base_spec,
                                        const BatteryConfig& base_cfg, double p_nom_wp, double pone,
                                        const SearchParams& search, int jobs) {
    if (values.empty()) throw DataError("sensitivity_sweep: no values");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        SmootherSpec spec = base_spec;
        BatteryConfig cfg = base_cfg;
        switch (axis) {
            case SweepAxis::MaWindow: {
                const double w = std::round(v);
                if (w < 1.0 || w != v) throw DataError("ma_window values must be integers >= 1");
                spec.kind = SmootherKind::MovingAverage;
                spec.ma_window = static_cast<int>(w);
                break;
            }
            case SweepAxis::RrLimit:
                if (!(v > 0.0 && v <= 1.0)) throw DataError("rr_limit values must be in (0, 1]");
                spec.kind = SmootherKind::RampRate;
                spec.rr_limit = v;
                break;
            case SweepAxis::Dod:
                if (!(v > 0.0 && v < 1.0)) throw DataError("dod values must be in (0, 1)");
                cfg.soc_min = 1.0 - v;
                break;
            case SweepAxis::SocInit:
                if (!(v > 0.0 && v <= 1.0)) throw DataError("soc_init values must be in (0, 1]");
                cfg.soc_init = v;
                break;
        }
        cfg.validate();

        const YearSizingReport rep = size_year(days, spec, cfg, p_nom_wp, pone, search, jobs);
        SweepRow row;
        row.value = v;
        double sum = 0.0;
        std::vector<double> xs, ys;
        for (const auto& r : rep.per_day) {
            sum += r.sboc_kwh_per_kwp;
            xs.push_back(r.sivi);
            ys.push_back(r.sboc_kwh_per_kwp);
        }
        row.mean_sboc = sum / static_cast<double>(rep.per_day.size());
        row.pearson_r = rep.pearson_r;
        row.sigma = sigma_or_nan(xs, ys);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace sbsize
