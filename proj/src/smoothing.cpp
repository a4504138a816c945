#include "sbsize/smoothing.hpp"

#include <algorithm>
#include <cmath>

#include "sbsize/errors.hpp"

namespace sbsize {

void SmootherSpec::validate() const {
    if (kind == SmootherKind::MovingAverage) {
        if (ma_window < 1) throw DataError("ma_window must be >= 1");
    } else {
        if (!(rr_limit > 0.0 && rr_limit <= 1.0)) throw DataError("rr_limit must be in (0, 1]");
    }
}

SmoothedDay ma_smooth(std::span<const double> p_pv_w, int n_w) {
    if (n_w < 1) throw DataError("ma_smooth: window must be >= 1");
    const size_t n = p_pv_w.size();
    SmoothedDay out;
    out.p_target_w.resize(n);
    out.p_sb_w.resize(n);
    // direct per-window sums: a sliding accumulator would leak rounding error
    // across the day and break the exact n_w == 1 identity
    for (size_t t = 0; t < n; ++t) {
        double sum = 0.0;
        const size_t first = t + 1 >= static_cast<size_t>(n_w) ? t + 1 - n_w : 0;
        for (size_t i = first; i <= t; ++i) sum += p_pv_w[i];
        out.p_target_w[t] = sum / n_w;  // zero-padded: divisor is always n_w
        out.p_sb_w[t] = out.p_target_w[t] - p_pv_w[t];
    }
    return out;
}

SmoothedDay rr_smooth(std::span<const double> p_pv_w, double k_rrl, double p_nom_wp,
                      RampReference reference) {
    if (!(k_rrl > 0.0 && k_rrl <= 1.0)) throw DataError("rr_smooth: k_rrl must be in (0, 1]");
    if (!(p_nom_wp > 0.0)) throw DataError("rr_smooth: p_nom must be > 0");
    const double dp_max = k_rrl * p_nom_wp;
    const size_t n = p_pv_w.size();
    SmoothedDay out;
    out.p_target_w.resize(n);
    out.p_sb_w.resize(n);
    if (n == 0) return out;
    out.p_target_w[0] = p_pv_w[0];
    out.p_sb_w[0] = 0.0;
    for (size_t t = 1; t < n; ++t) {
        const double ref = reference == RampReference::PreviousSmoothed ? out.p_target_w[t - 1]
                                                                        : p_pv_w[t - 1];
        const double delta = p_pv_w[t] - ref;
        double target;
        if (std::abs(delta) <= dp_max) {
            target = p_pv_w[t];
        } else {
            target = ref + (delta > 0.0 ? dp_max : -dp_max);
        }
        out.p_target_w[t] = target;
        out.p_sb_w[t] = target - p_pv_w[t];
    }
    return out;
}

SmoothedDay smooth(std::span<const double> p_pv_w, const SmootherSpec& spec, double p_nom_wp) {
    spec.validate();
    if (spec.kind == SmootherKind::MovingAverage) return ma_smooth(p_pv_w, spec.ma_window);
    return rr_smooth(p_pv_w, spec.rr_limit, p_nom_wp, spec.rr_reference);
}

}  // namespace sbsize
