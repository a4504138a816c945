#pragma once

#include <span>
#include <vector>

namespace sbsize {

enum class SmootherKind { MovingAverage, RampRate };

/// Which value the ramp limiter references: the previous smoothed output
/// (default; guarantees |dP| <= dPmax between consecutive outputs) or the
/// previous raw PV output (does not bound consecutive output ramps when the
/// input keeps moving — kept for fidelity comparisons).
enum class RampReference { PreviousSmoothed, PreviousRaw };

struct SmootherSpec {
    SmootherKind kind = SmootherKind::MovingAverage;
    int ma_window = 10;       // samples (minutes at 1-minute resolution)
    double rr_limit = 0.05;   // fraction of p_nom per sample
    RampReference rr_reference = RampReference::PreviousSmoothed;

    void validate() const;  // throws DataError
};

/// Target output and the battery power command that realizes it.
/// p_sb = p_target - p_pv at every sample; positive = battery discharging.
struct SmoothedDay {
    std::vector<double> p_target_w;
    std::vector<double> p_sb_w;
};

/// Lagging moving average over the previous n_w samples including the current
/// one, zero-padded before the series start (pre-dawn PV output is zero).
SmoothedDay ma_smooth(std::span<const double> p_pv_w, int n_w);

/// Ramp-rate limiter with dPmax = k_rrl * p_nom per sample. First sample
/// passes through unchanged.
SmoothedDay rr_smooth(std::span<const double> p_pv_w, double k_rrl, double p_nom_wp,
                      RampReference reference);

SmoothedDay smooth(std::span<const double> p_pv_w, const SmootherSpec& spec, double p_nom_wp);

}  // namespace sbsize
