// sbsize: sizes PV power-smoothing batteries from 1-minute irradiance data
// and fits/applies the SIVI-based capacity estimator.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sbsize/compare.hpp"
#include "sbsize/errors.hpp"
#include "sbsize/sizing.hpp"
#include "sbsize/synth.hpp"
#include "svg_plot.hpp"

namespace {

using namespace sbsize;

// Wrong flag combinations detected after parsing; exit code 1 like CLI11's
// own parse errors.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

struct DataOpts {
    std::string site_path;
    std::string irradiance_path;
    std::string temperature_path;
    std::string out_dir = ".";
    std::string method = "ma";
    int ma_window = 10;
    double rr_limit = 0.05;
    std::string rr_reference = "smoothed";
    double p_nom = 1000.0;
    double k_e = 0.90;
    double k_m = 0.95;
    double k_pt = 0.0038;
    double eta_inv = 0.95;
    double dod = 0.70;
    double soc_init = 0.80;
    double soc_max = 1.00;
    double eta_conv = 0.94;
    std::string kibam_file;
    double pone = 0.95;
    double tol = 1e-4;
    double upper = 2.0;
    int jobs = 1;
    bool plot = false;

    CLI::Option* ma_window_opt = nullptr;
    CLI::Option* rr_limit_opt = nullptr;
    CLI::Option* rr_reference_opt = nullptr;
};

void add_model_options(CLI::App* cmd, DataOpts& o) {
    cmd->add_option("--method", o.method, "Smoothing technique: ma | rr")
        ->check(CLI::IsMember({"ma", "rr"}))
        ->capture_default_str();
    o.ma_window_opt = cmd->add_option("--ma-window", o.ma_window,
                                      "Moving-average window, samples (MA only)")
                          ->check(CLI::PositiveNumber);
    o.rr_limit_opt = cmd->add_option("--rr-limit", o.rr_limit,
                                     "Ramp limit, fraction of p-nom per sample (RR only)");
    o.rr_reference_opt = cmd->add_option("--rr-reference", o.rr_reference,
                                         "Ramp reference: smoothed | raw (RR only)")
                             ->check(CLI::IsMember({"smoothed", "raw"}));
    cmd->add_option("--p-nom", o.p_nom, "PV nameplate, Wp")->capture_default_str();
    cmd->add_option("--k-e", o.k_e, "Environmental derating")->capture_default_str();
    cmd->add_option("--k-m", o.k_m, "Manufacturer tolerance")->capture_default_str();
    cmd->add_option("--k-pt", o.k_pt, "Power-temperature coefficient, 1/degC")->capture_default_str();
    cmd->add_option("--eta-inv", o.eta_inv, "Inverter efficiency")->capture_default_str();
    cmd->add_option("--dod", o.dod, "Maximum depth of discharge")->capture_default_str();
    cmd->add_option("--soc-init", o.soc_init, "Start-of-day state of charge")->capture_default_str();
    cmd->add_option("--soc-max", o.soc_max, "Maximum state of charge")->capture_default_str();
    cmd->add_option("--eta-conv", o.eta_conv, "Converter efficiency")->capture_default_str();
    cmd->add_option("--kibam-file", o.kibam_file, "Battery constants file (from fit-battery)");
    cmd->add_option("--pone", o.pone, "Probability-of-non-exceedance level")->capture_default_str();
    cmd->add_option("--tol", o.tol, "Capacity search tolerance, kWh/kWp")->capture_default_str();
    cmd->add_option("--upper", o.upper, "Capacity search upper bound, kWh/kWp")->capture_default_str();
    cmd->add_option("--jobs", o.jobs, "Worker threads for per-day optimization")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

void add_data_options(CLI::App* cmd, DataOpts& o) {
    cmd->add_option("--site", o.site_path, "Site key=value file")->required();
    cmd->add_option("--irradiance", o.irradiance_path, "Irradiance CSV (timestamp,ghi_wm2)")->required();
    cmd->add_option("--temperature", o.temperature_path, "Temperature CSV (date,tmax_c)")->required();
    cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    cmd->add_flag("--plot", o.plot, "Also write SVG plots");
    add_model_options(cmd, o);
}

SmootherSpec smoother_from(const DataOpts& o) {
    if (o.method == "ma") {
        if (o.rr_limit_opt->count() || o.rr_reference_opt->count())
            throw UsageError("--rr-limit/--rr-reference require --method rr");
    } else {
        if (o.ma_window_opt->count()) throw UsageError("--ma-window requires --method ma");
    }
    SmootherSpec spec;
    spec.kind = o.method == "ma" ? SmootherKind::MovingAverage : SmootherKind::RampRate;
    spec.ma_window = o.ma_window;
    spec.rr_limit = o.rr_limit;
    spec.rr_reference = o.rr_reference == "raw" ? RampReference::PreviousRaw
                                                : RampReference::PreviousSmoothed;
    spec.validate();
    return spec;
}

PvParams pv_from(const DataOpts& o) {
    PvParams p{o.p_nom, o.k_e, o.k_m, o.k_pt, o.eta_inv};
    p.validate();
    return p;
}

BatteryConfig battery_from(const DataOpts& o) {
    BatteryConfig cfg;
    if (!o.kibam_file.empty()) cfg.constants = load_kibam_constants(o.kibam_file);
    cfg.soc_min = 1.0 - o.dod;
    cfg.soc_init = o.soc_init;
    cfg.soc_max = o.soc_max;
    cfg.eta_conv = o.eta_conv;
    cfg.validate();
    return cfg;
}

struct LoadedData {
    SiteMeta site;
    std::vector<SimDay> days;
};

LoadedData load_days(const DataOpts& o) {
    LoadedData data;
    data.site = load_site(o.site_path);
    const IrradianceLoadResult irr = load_irradiance(o.irradiance_path, data.site);
    for (const auto& ex : irr.excluded)
        std::cerr << "excluded " << to_string(ex.date) << ": " << ex.reason << "\n";
    if (irr.imputed_minutes > 0)
        std::cerr << "interpolated " << irr.imputed_minutes << " gap minute(s)\n";
    const TemperatureLoadResult temps = load_temperature(o.temperature_path);
    for (const auto& d : temps.filled)
        std::cerr << "temperature for " << to_string(d) << " filled from prior day\n";
    if (irr.days.empty()) throw DataError("no usable days in '" + o.irradiance_path + "'");
    data.days = prepare_days(irr.days, temps.days, data.site, pv_from(o));
    return data;
}

std::ofstream open_out(const DataOpts& o, const std::string& name) {
    std::filesystem::create_directories(o.out_dir);
    const std::string path = o.out_dir + "/" + name;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    return out;
}

// ---------------------------------------------------------------- synth ----

struct SynthOpts {
    std::string profile = "mixed";
    int days = 30;
    std::string start_date = "2021-01-01";
    int year = 2021;
    std::uint64_t seed = 1;
    int site_index = 0;
    std::string site_path;
    int square_period = 60;
    std::string out_dir = ".";
};

int cmd_synth(const SynthOpts& o) {
    SiteMeta site = o.site_path.empty() ? fixture_site(o.site_index) : load_site(o.site_path);

    std::vector<IrradianceDay> irr;
    std::vector<TemperatureDay> temps;
    if (o.profile == "year") {
        SynthYear yr = synthesize_year(site, o.year, o.seed);
        irr = std::move(yr.irradiance);
        temps = std::move(yr.temperature);
    } else {
        const DayProfile profile = parse_profile(o.profile);
        SynthOptions opts;
        opts.square_period_min = o.square_period;
        Date d = parse_date(o.start_date);
        for (int i = 0; i < o.days; ++i) {
            irr.push_back(synthesize_day(profile, o.seed + static_cast<std::uint64_t>(i), site, d, opts));
            temps.push_back(TemperatureDay{d, 27.0});
            d = next_day(d);
        }
    }
    std::filesystem::create_directories(o.out_dir);
    write_site_file(o.out_dir + "/site.txt", site);
    write_irradiance_csv(o.out_dir + "/irradiance.csv", irr);
    write_temperature_csv(o.out_dir + "/temperature.csv", temps);
    std::cout << "wrote " << irr.size() << " day(s) to " << o.out_dir << "\n";
    return 0;
}

// ----------------------------------------------------------------- sivi ----

int cmd_sivi(const DataOpts& o) {
    const LoadedData data = load_days(o);
    auto out = open_out(o, "sivi.csv");
    out << "date,sivi\n";
    for (const auto& d : data.days) out << to_string(d.date) << "," << fmt(d.sivi) << "\n";
    if (o.plot) {
        std::vector<double> xs, ys;
        for (const auto& d : data.days) {
            xs.push_back(static_cast<double>(to_serial(d.date)));
            ys.push_back(d.sivi);
        }
        plot::write_chart(o.out_dir + "/sivi.svg", xs, ys, "day", "SIVI", true);
    }
    std::cout << "sivi.csv: " << data.days.size() << " day(s)\n";
    return 0;
}

// ----------------------------------------------------------------- size ----

int cmd_size(const DataOpts& o) {
    const LoadedData data = load_days(o);
    const SmootherSpec spec = smoother_from(o);
    const BatteryConfig cfg = battery_from(o);
    const SearchParams search{o.tol, o.upper};
    const YearSizingReport rep =
        size_year(data.days, spec, cfg, o.p_nom, o.pone, search, o.jobs);

    auto scatter = open_out(o, "scatter.csv");
    scatter << "date,sivi,sboc_kwh_per_kwp\n";
    double mean = 0.0;
    int infeasible = 0;
    for (const auto& r : rep.per_day) {
        scatter << to_string(r.date) << "," << fmt(r.sivi) << "," << fmt(r.sboc_kwh_per_kwp) << "\n";
        mean += r.sboc_kwh_per_kwp;
        infeasible += r.feasible_at_cap ? 0 : 1;
    }
    mean /= static_cast<double>(rep.per_day.size());

    auto cdf = open_out(o, "cdf.csv");
    cdf << "sboc_kwh_per_kwp,cdf\n";
    const auto& sorted = rep.cdf.sorted();
    for (size_t i = 0; i < sorted.size(); ++i) {
        cdf << fmt(sorted[i]) << "," << fmt(static_cast<double>(i + 1) / sorted.size()) << "\n";
    }

    auto summary = open_out(o, "summary.txt");
    summary << "n_days=" << rep.per_day.size() << "\n";
    summary << "method=" << o.method << "\n";
    if (spec.kind == SmootherKind::MovingAverage) {
        summary << "ma_window=" << spec.ma_window << "\n";
    } else {
        summary << "rr_limit=" << fmt(spec.rr_limit) << "\n";
    }
    summary << "pone=" << fmt(o.pone) << "\n";
    summary << "sboc_selected=" << fmt(rep.sboc_selected) << "\n";
    summary << "mean_sboc=" << fmt(mean) << "\n";
    summary << "pearson_r=" << fmt(rep.pearson_r) << "\n";
    for (const auto& [level, value] : rep.sboc_at_pone) {
        summary << "sboc_p" << fmt(level * 100.0, 0) << "=" << fmt(value) << "\n";
    }
    summary << "days_infeasible_at_upper=" << infeasible << "\n";
    summary << "search_tol=" << fmt(o.tol) << "\n";
    summary << "search_upper=" << fmt(o.upper) << "\n";

    if (o.plot) {
        std::vector<double> xs, ys;
        for (const auto& r : rep.per_day) {
            xs.push_back(r.sivi);
            ys.push_back(r.sboc_kwh_per_kwp);
        }
        plot::write_chart(o.out_dir + "/scatter.svg", xs, ys, "SIVI", "SBOC [kWh/kWp]", false);
        std::vector<double> cx(sorted.begin(), sorted.end()), cy;
        for (size_t i = 0; i < sorted.size(); ++i)
            cy.push_back(static_cast<double>(i + 1) / sorted.size());
        plot::write_chart(o.out_dir + "/cdf.svg", cx, cy, "SBOC [kWh/kWp]", "CDF", true);
    }
    std::cout << "sboc@P" << fmt(o.pone * 100.0, 0) << " = " << fmt(rep.sboc_selected)
              << " kWh/kWp over " << rep.per_day.size() << " day(s)\n";
    return 0;
}

// ------------------------------------------------------------- estimate ----

struct EstimateOpts {
    double sivi = 0.0;
    std::string coeffs_file;
    double alpha = 0.0, beta = 0.0, sigma = 0.0;
    CLI::Option *alpha_opt = nullptr, *beta_opt = nullptr, *sigma_opt = nullptr, *file_opt = nullptr;
};

int cmd_estimate(const EstimateOpts& o) {
    RegressionModel model;
    const bool inline_given = o.alpha_opt->count() || o.beta_opt->count() || o.sigma_opt->count();
    if (!o.coeffs_file.empty() && inline_given)
        throw UsageError("give either --coeffs-file or inline --alpha/--beta/--sigma, not both");
    if (!o.coeffs_file.empty()) {
        model = load_regression(o.coeffs_file);
    } else if (o.alpha_opt->count() && o.beta_opt->count() && o.sigma_opt->count()) {
        model.alpha = o.alpha;
        model.beta = o.beta;
        model.sigma = o.sigma;
    } else {
        throw UsageError("need --coeffs-file or all of --alpha, --beta, --sigma");
    }
    std::cout << fmt(estimate_sboc(model, o.sivi), 4) << "\n";
    return 0;
}

// -------------------------------------------------------------- compare ----

int cmd_compare(const DataOpts& o, const std::string& coeffs_file) {
    const LoadedData data = load_days(o);
    CompareParams params;
    params.pone = o.pone;
    params.search = SearchParams{o.tol, o.upper};
    params.jobs = o.jobs;
    if (!coeffs_file.empty()) params.coeffs = load_regression(coeffs_file);
    const auto rows = compare_methods(data.days, smoother_from(o), battery_from(o), o.p_nom, params);

    auto out = open_out(o, "compare.csv");
    out << "method,sboc_kwh_per_kwp,coverage_pct\n";
    for (const auto& r : rows)
        out << r.method << "," << fmt(r.sboc_kwh_per_kwp) << "," << fmt(r.coverage * 100.0, 1) << "\n";
    for (const auto& r : rows)
        std::cout << r.method << ": " << fmt(r.sboc_kwh_per_kwp) << " kWh/kWp, coverage "
                  << fmt(r.coverage * 100.0, 1) << "%\n";
    return 0;
}

// ---------------------------------------------------------- sensitivity ----

int cmd_sensitivity(const DataOpts& o, const std::string& axis_name, std::vector<double> values) {
    SweepAxis axis;
    if (axis_name == "ma_window") {
        axis = SweepAxis::MaWindow;
    } else if (axis_name == "rr_limit") {
        axis = SweepAxis::RrLimit;
    } else if (axis_name == "dod") {
        axis = SweepAxis::Dod;
    } else if (axis_name == "soc_init") {
        axis = SweepAxis::SocInit;
    } else {
        throw UsageError("unknown axis '" + axis_name + "' (ma_window|rr_limit|dod|soc_init)");
    }
    const LoadedData data = load_days(o);
    const auto rows = sensitivity_sweep(data.days, axis, values, smoother_from(o), battery_from(o),
                                        o.p_nom, o.pone, SearchParams{o.tol, o.upper}, o.jobs);
    auto out = open_out(o, "sensitivity.csv");
    out << "axis,value,mean_sboc,sigma,pearson_r\n";
    for (const auto& r : rows) {
        out << axis_name << "," << fmt(r.value) << "," << fmt(r.mean_sboc) << "," << fmt(r.sigma)
            << "," << fmt(r.pearson_r) << "\n";
    }
    std::cout << "sensitivity.csv: " << rows.size() << " row(s)\n";
    return 0;
}

// ----------------------------------------------------------- fit-battery ---

int cmd_fit_battery(const std::string& curve_path, const std::string& out_file) {
    const auto curve = load_discharge_curve(curve_path);
    const KibamConstants c = fit_kibam(curve);
    if (!out_file.empty()) save_kibam_constants(out_file, c);
    std::cout << "k1=" << fmt(c.k1_per_h) << " 1/h\n";
    std::cout << "k2=" << fmt(c.k2) << "\n";
    std::cout << "q_max_ref_ah=" << fmt(c.q_max_ref_ah, 3) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Smoothing-battery sizing for PV-diesel microgrids from 1-minute irradiance data"};
    app.require_subcommand(1);
    // ini/TOML-style config; keys live in a section named for the subcommand,
    // e.g.  [size]\n ma-window=20   Flags given on the command line win.
    app.set_config("--config", "", "Config file ([subcommand] sections, key=value)");

    SynthOpts synth;
    CLI::App* c_synth = app.add_subcommand("synth", "Generate synthetic irradiance fixtures");
    c_synth->add_option("--profile", synth.profile, "clear|mixed|overcast|square_wave|year")
        ->capture_default_str();
    c_synth->add_option("--days", synth.days, "Number of days (ignored for 'year')")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_synth->add_option("--start-date", synth.start_date, "First date")->capture_default_str();
    c_synth->add_option("--year", synth.year, "Calendar year for 'year' profile")->capture_default_str();
    c_synth->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
    c_synth->add_option("--site-index", synth.site_index, "Built-in synthetic site 0..2")
        ->check(CLI::Range(0, 2))
        ->capture_default_str();
    c_synth->add_option("--site", synth.site_path, "Site file (overrides --site-index)");
    c_synth->add_option("--square-period", synth.square_period, "Square-wave period, minutes")
        ->capture_default_str();
    c_synth->add_option("--out", synth.out_dir, "Output directory")->capture_default_str();

    DataOpts sivi_o;
    CLI::App* c_sivi = app.add_subcommand("sivi", "Per-day solar irradiance variability index");
    add_data_options(c_sivi, sivi_o);

    DataOpts size_o;
    CLI::App* c_size = app.add_subcommand("size", "Per-day optimal capacities, CDF and summary");
    add_data_options(c_size, size_o);

    EstimateOpts est;
    CLI::App* c_est = app.add_subcommand("estimate", "Capacity estimate from SIVI and coefficients");
    c_est->add_option("--sivi", est.sivi, "Daily SIVI (e.g. the site's P90/P95 level)")->required();
    est.file_opt = c_est->add_option("--coeffs-file", est.coeffs_file, "Coefficients key=value file");
    est.alpha_opt = c_est->add_option("--alpha", est.alpha, "Regression slope");
    est.beta_opt = c_est->add_option("--beta", est.beta, "Regression intercept");
    est.sigma_opt = c_est->add_option("--sigma", est.sigma, "Standard error of the estimate");

    DataOpts cmp_o;
    std::string cmp_coeffs;
    CLI::App* c_cmp = app.add_subcommand("compare", "Compare sizing methods on one dataset");
    add_data_options(c_cmp, cmp_o);
    c_cmp->add_option("--coeffs-file", cmp_coeffs, "Use these coefficients for the approximate method");

    DataOpts sens_o;
    std::string sens_axis;
    std::vector<double> sens_values;
    CLI::App* c_sens = app.add_subcommand("sensitivity", "Sweep one parameter axis");
    add_data_options(c_sens, sens_o);
    c_sens->add_option("--axis", sens_axis, "ma_window|rr_limit|dod|soc_init")->required();
    c_sens->add_option("--values", sens_values, "Axis values")->required()->delimiter(',');

    std::string fit_curve, fit_out;
    CLI::App* c_fit = app.add_subcommand("fit-battery", "Fit battery constants to a discharge curve");
    c_fit->add_option("--curve", fit_curve, "CSV with header hours,amps")->required();
    c_fit->add_option("--out-file", fit_out, "Write fitted constants here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (app.got_subcommand(c_synth)) return cmd_synth(synth);
        if (app.got_subcommand(c_sivi)) return cmd_sivi(sivi_o);
        if (app.got_subcommand(c_size)) return cmd_size(size_o);
        if (app.got_subcommand(c_est)) return cmd_estimate(est);
        if (app.got_subcommand(c_cmp)) return cmd_compare(cmp_o, cmp_coeffs);
        if (app.got_subcommand(c_sens)) return cmd_sensitivity(sens_o, sens_axis, sens_values);
        if (app.got_subcommand(c_fit)) return cmd_fit_battery(fit_curve, fit_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
