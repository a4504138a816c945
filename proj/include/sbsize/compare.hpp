#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbsize/sizing.hpp"

namespace sbsize {

struct MethodRow {
    std::string method;
    double sboc_kwh_per_kwp = 0.0;
    double coverage = 0.0;  // fraction of days feasible when re-simulated at this capacity
};

struct CompareParams {
    double pone = 0.95;
    SearchParams search;
    int jobs = 1;
    // Regression coefficients for the approximate method; fitted from this
    // dataset's per-day results when absent.
    std::optional<RegressionModel> coeffs;
};

/// Runs the four sizing methods on one dataset and reports each capacity with
/// its annual coverage: peak energy exchange, hourly chronological, detailed
/// per-day at the requested PONE, and the SIVI regression estimate evaluated
/// at the PONE-level SIVI.
std::vector<MethodRow> compare_methods(const std::vector<SimDay>& days, const SmootherSpec& spec,
                                       const BatteryConfig& cfg, double p_nom_wp,
                                       const CompareParams& params);

}  // namespace sbsize
