#include "sbsize/battery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include "sbsize/errors.hpp"

namespace sbsize {

void KibamConstants::validate() const {
    if (!(k1_per_h > 0.0)) throw DataError("k1 must be > 0");
    if (!(k2 > 0.0 && k2 < 1.0)) throw DataError("k2 must be in (0, 1)");
    if (!(q_max_ref_ah > 0.0)) throw DataError("q_max_ref must be > 0");
}

void BatteryConfig::validate() const {
    constants.validate();
    if (!(e_nom_kwh > 0.0)) throw DataError("e_nom must be > 0");
    if (!(soc_min >= 0.0 && soc_min < soc_init && soc_init <= soc_max && soc_max <= 1.0))
        throw DataError("SoC bounds must satisfy 0 <= soc_min < soc_init <= soc_max <= 1");
    if (!(eta_conv > 0.0 && eta_conv <= 1.0)) throw DataError("eta_conv must be in (0, 1]");
}

BatteryState fresh_state(const BatteryConfig& cfg) {
    const double total = cfg.soc_init * cfg.e_nom_kwh;
    return BatteryState{cfg.constants.k2 * total, (1.0 - cfg.constants.k2) * total};
}

double soc(const BatteryState& state, const BatteryConfig& cfg) {
    return state.total_kwh() / cfg.e_nom_kwh;
}

BatteryState kibam_update(const BatteryState& state, double current_kw, double dt_h,
                          const KibamConstants& c) {
    const double k = c.k1_per_h;
    const double cc = c.k2;
    const double q0 = state.total_kwh();
    const double r = k * dt_h;
    const double e = std::exp(-r);
    const double g1 = -std::expm1(-r);      // 1 - e^-r, cancellation-free
    const double g2 = r + std::expm1(-r);   // r - 1 + e^-r

    BatteryState out;
    out.q1_kwh = state.q1_kwh * e + (q0 * k * cc - current_kw) * g1 / k - current_kw * cc * g2 / k;
    out.q2_kwh = state.q2_kwh * e + q0 * (1.0 - cc) * g1 - current_kw * (1.0 - cc) * g2 / k;
    // wash out negative roundoff dust near empty wells
    if (out.q1_kwh < 0.0 && out.q1_kwh > -1e-12 * std::max(1.0, q0)) out.q1_kwh = 0.0;
    if (out.q2_kwh < 0.0 && out.q2_kwh > -1e-12 * std::max(1.0, q0)) out.q2_kwh = 0.0;
    return out;
}

namespace {

// Largest constant discharge current (kW) that leaves q1 exactly empty at the
// end of the step; the q1 >= 0 binding limit of the closed-form update.
double max_discharge_current(const BatteryState& s, double dt_h, const KibamConstants& c) {
    const double k = c.k1_per_h;
    const double cc = c.k2;
    const double r = k * dt_h;
    const double e = std::exp(-r);
    const double g1 = -std::expm1(-r);
    const double g2 = r + std::expm1(-r);
    return k * (s.q1_kwh * e + s.total_kwh() * cc * g1) / (g1 + cc * g2);
}

}  // namespace

StepResult kibam_step(const BatteryState& state, double p_request_w, double dt_h,
                      const BatteryConfig& cfg) {
    const double eta = cfg.eta_conv;
    // ac request -> battery-side energy-domain current (kW). Discharging must
    // pull more from the wells; charging stores less than drawn from the bus.
    const double req_kw = p_request_w >= 0.0 ? p_request_w / 1000.0 / eta
                                             : p_request_w / 1000.0 * eta;

    double lim_kw = req_kw;
    if (req_kw > 0.0) {
        const double i_q1 = max_discharge_current(state, dt_h, cfg.constants);
        const double i_soc = (state.total_kwh() - cfg.soc_min * cfg.e_nom_kwh) / dt_h;
        lim_kw = std::max(0.0, std::min({req_kw, i_q1, i_soc}));
    } else if (req_kw < 0.0) {
        const double i_soc = (state.total_kwh() - cfg.soc_max * cfg.e_nom_kwh) / dt_h;  // <= 0
        lim_kw = std::min(0.0, std::max(req_kw, i_soc));
    }

    StepResult out;
    out.clipped = lim_kw != req_kw;
    out.state = kibam_update(state, lim_kw, dt_h, cfg.constants);
    out.p_delivered_w = lim_kw >= 0.0 ? lim_kw * 1000.0 * eta : lim_kw * 1000.0 / eta;
    return out;
}

double kibam_capacity(double t_h, double k1_per_h, double k2, double q_max) {
    const double r = k1_per_h * t_h;
    const double denom = -std::expm1(-r) + k2 * (r + std::expm1(-r));
    return q_max * k1_per_h * k2 * t_h / denom;
}

KibamConstants fit_kibam(const std::vector<DischargePoint>& curve) {
    if (curve.size() < 3) throw DataError("fit_kibam: need at least 3 discharge points");
    std::vector<double> t, y;
    for (const auto& p : curve) {
        if (!(p.hours > 0.0) || !(p.amps > 0.0))
            throw DataError("fit_kibam: times and currents must be positive");
        t.push_back(p.hours);
        y.push_back(p.hours * p.amps);
    }
    for (size_t i = 1; i < t.size(); ++i) {
        if (t[i] <= t[i - 1]) throw DataError("fit_kibam: discharge times must be increasing");
        if (y[i] <= y[i - 1])
            throw DataError("fit_kibam: delivered capacity I*t must increase with time");
    }

    // SSE over the capacity relation with q_max eliminated in closed form:
    // for fixed (k, c) the model is linear in q_max.
    auto sse_at = [&](double k, double c, double* q_out) {
        double sfy = 0.0, sff = 0.0;
        std::vector<double> f(t.size());
        for (size_t i = 0; i < t.size(); ++i) {
            f[i] = kibam_capacity(t[i], k, c, 1.0);
            sfy += f[i] * y[i];
            sff += f[i] * f[i];
        }
        const double q = sfy / sff;
        double sse = 0.0;
        for (size_t i = 0; i < t.size(); ++i) {
            const double r = q * f[i] - y[i];
            sse += r * r;
        }
        if (q_out) *q_out = q;
        return sse;
    };

    // Coarse log/linear grid, then repeated zooms around the best cell.
    double lo_lk = std::log(1e-3), hi_lk = std::log(50.0);
    double lo_c = 0.005, hi_c = 0.995;
    double best_lk = 0.0, best_c = 0.3, best_sse = std::numeric_limits<double>::infinity();
    const int kGrid = 61;
    for (int round = 0; round < 6; ++round) {
        double round_lk = best_lk, round_c = best_c;
        for (int i = 0; i < kGrid; ++i) {
            const double lk = lo_lk + (hi_lk - lo_lk) * i / (kGrid - 1);
            for (int j = 0; j < kGrid; ++j) {
                const double c = lo_c + (hi_c - lo_c) * j / (kGrid - 1);
                const double s = sse_at(std::exp(lk), c, nullptr);
                if (s < best_sse) {
                    best_sse = s;
                    round_lk = lk;
                    round_c = c;
                }
            }
        }
        best_lk = round_lk;
        best_c = round_c;
        const double span_lk = (hi_lk - lo_lk) / (kGrid - 1) * 4.0;
        const double span_c = (hi_c - lo_c) / (kGrid - 1) * 4.0;
        lo_lk = best_lk - span_lk;
        hi_lk = best_lk + span_lk;
        lo_c = std::max(1e-4, best_c - span_c);
        hi_c = std::min(1.0 - 1e-4, best_c + span_c);
    }

    double q_max = 0.0;
    const double sse = sse_at(std::exp(best_lk), best_c, &q_max);
    if (!std::isfinite(sse) || !(q_max > 0.0))
        throw NumericalError("fit_kibam: fit did not converge");
    KibamConstants out{std::exp(best_lk), best_c, q_max};
    out.validate();
    return out;
}

std::vector<DischargePoint> load_discharge_curve(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file");
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r\n"));
        s.erase(s.find_last_not_of(" \t\r\n") + 1);
        return s;
    };
    if (strip(line) != "hours,amps")
        throw DataError(path + ": bad header (expected 'hours,amps')");
    std::vector<DischargePoint> out;
    long line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string row = strip(line);
        if (row.empty()) continue;
        double h = 0.0, a = 0.0;
        char trail = 0;
        if (std::sscanf(row.c_str(), "%lf,%lf%c", &h, &a, &trail) != 2)
            throw DataError(path + " line " + std::to_string(line_no) + ": malformed row");
        out.push_back({h, a});
    }
    return out;
}

void save_kibam_constants(const std::string& path, const KibamConstants& c) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "k1=%.6f\n", c.k1_per_h);
    out << buf;
    std::snprintf(buf, sizeof(buf), "k2=%.6f\n", c.k2);
    out << buf;
    std::snprintf(buf, sizeof(buf), "q_max_ref_ah=%.3f\n", c.q_max_ref_ah);
    out << buf;
}

KibamConstants load_kibam_constants(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    KibamConstants c;
    bool got1 = false, got2 = false;
    std::string line;
    while (std::getline(in, line)) {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const double v = std::atof(line.c_str() + eq + 1);
        if (key == "k1") {
            c.k1_per_h = v;
            got1 = true;
        } else if (key == "k2") {
            c.k2 = v;
            got2 = true;
        } else if (key == "q_max_ref_ah") {
            c.q_max_ref_ah = v;
        }
    }
    if (!got1 || !got2) throw DataError(path + ": missing k1/k2");
    c.validate();
    return c;
}

}  // namespace sbsize
