#pragma once

#include <string>
#include <vector>

namespace sbsize {

/// Kinetic battery model rate constants. The charge wells are tracked in kWh
/// (Ah scaled by a constant nominal cell voltage), which leaves k1 and k2
/// capacity-invariant; q_max_ref_ah records the fitted reference cell size.
struct KibamConstants {
    double k1_per_h = 1.121058;    // rate at which bound charge becomes available
    double k2 = 0.320481;          // available-to-total capacity ratio
    double q_max_ref_ah = 552.883; // fitted reference capacity (Ah), informational

    void validate() const;  // throws DataError
};

/// Nominal cell voltage assumed when mapping the reference discharge curve
/// from Ah to kWh (2 V lead-acid cell).
inline constexpr double kNominalCellVoltage = 2.0;

struct BatteryConfig {
    double e_nom_kwh = 1.0;  // nominal capacity, the sizing decision variable
    KibamConstants constants;
    double soc_min = 0.30;   // = 1 - DoD
    double soc_max = 1.00;
    double soc_init = 0.80;  // start-of-day state of charge
    double eta_conv = 0.94;  // bi-directional converter efficiency

    void validate() const;  // throws DataError
};

/// Available (q1) and chemically bound (q2) charge, in kWh.
struct BatteryState {
    double q1_kwh = 0.0;
    double q2_kwh = 0.0;

    double total_kwh() const { return q1_kwh + q2_kwh; }
};

struct StepResult {
    BatteryState state;
    double p_delivered_w = 0.0;  // ac-side power actually delivered (signed as request)
    bool clipped = false;        // request was reduced to a binding limit
};

/// State at soc_init with the wells split at the zero-current equilibrium
/// (q1 = k2 * total).
BatteryState fresh_state(const BatteryConfig& cfg);

double soc(const BatteryState& state, const BatteryConfig& cfg);

/// Raw closed-form well update for a constant energy-domain current
/// (kW, positive = discharge) over dt hours. No limits applied; exposed for
/// the ODE-oracle tests and for the step limit computation.
BatteryState kibam_update(const BatteryState& state, double current_kw, double dt_h,
                          const KibamConstants& c);

/// One simulation step. p_request_w is the ac-terminal power command
/// (positive = discharge). The request is converted through the converter
/// efficiency, limited so that the available well cannot go negative and the
/// end-of-step SoC stays within [soc_min, soc_max], then integrated with the
/// closed-form well update. Clipping is a reported outcome, not an error.
StepResult kibam_step(const BatteryState& state, double p_request_w, double dt_h,
                      const BatteryConfig& cfg);

/// Constant-current capacity relation: total charge deliverable when a full
/// battery is drained at constant current for t hours until the available
/// well empties. Units follow q_max.
double kibam_capacity(double t_h, double k1_per_h, double k2, double q_max);

struct DischargePoint {
    double hours = 0.0;
    double amps = 0.0;
};

/// Fits (k1, k2, q_max) to a constant-current discharge curve by least
/// squares on delivered capacity I*t: coarse grid over (k1, k2) with q_max
/// solved in closed form per grid point, then iterative grid refinement.
/// Deterministic. Throws DataError on fewer than 3 points or a degenerate
/// curve, NumericalError if the fit collapses.
KibamConstants fit_kibam(const std::vector<DischargePoint>& curve);

/// Reads a discharge-curve CSV with header "hours,amps".
std::vector<DischargePoint> load_discharge_curve(const std::string& path);

void save_kibam_constants(const std::string& path, const KibamConstants& c);
KibamConstants load_kibam_constants(const std::string& path);

}  // namespace sbsize
