#include "sbsize/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "sbsize/errors.hpp"

namespace sbsize {

RegressionModel fit_regression(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DataError("fit_regression: length mismatch");
    const size_t n = xs.size();
    if (n < 2) throw DataError("fit_regression: need at least 2 points");

    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw NumericalError("fit_regression: zero variance in x");

    RegressionModel m;
    m.alpha = sxy / sxx;
    m.beta = my - m.alpha * mx;
    m.n_samples = static_cast<int>(n);
    m.sigma = residual_sigma(m.alpha, m.beta, xs, ys);
    return m;
}

double residual_sigma(double alpha, double beta, std::span<const double> xs,
                      std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.empty()) throw DataError("residual_sigma: bad input");
    double ss = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (alpha * xs[i] + beta);
        ss += r * r;
    }
    return std::sqrt(ss / static_cast<double>(xs.size()));
}

double estimate_sboc(const RegressionModel& model, double sivi) {
    if (!(sivi >= 0.0)) throw DataError("estimate_sboc: sivi must be >= 0");
    return std::max(0.0, model.alpha * sivi + model.beta + model.sigma);
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DataError("pearson: length mismatch");
    const size_t n = xs.size();
    if (n < 2) throw DataError("pearson: need at least 2 points");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw NumericalError("pearson: constant series");
    return sxy / std::sqrt(sxx * syy);
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
    if (sorted_.empty()) throw DataError("EmpiricalCdf: no samples");
    std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::quantile(double level) const {
    if (!(level > 0.0 && level <= 1.0)) throw DataError("quantile level must be in (0, 1]");
    const size_t n = sorted_.size();
    size_t rank = static_cast<size_t>(std::ceil(level * static_cast<double>(n)));
    rank = std::clamp<size_t>(rank, 1, n);
    return sorted_[rank - 1];
}

void save_regression(const std::string& path, const RegressionModel& m) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "alpha=%.6f\n", m.alpha);
    out << buf;
    std::snprintf(buf, sizeof(buf), "beta=%.6f\n", m.beta);
    out << buf;
    std::snprintf(buf, sizeof(buf), "sigma=%.6f\n", m.sigma);
    out << buf;
    std::snprintf(buf, sizeof(buf), "n=%d\n", m.n_samples);
    out << buf;
}

RegressionModel load_regression(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    RegressionModel m;
    bool got_a = false, got_b = false, got_s = false;
    std::string line;
    while (std::getline(in, line)) {
        const size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, eq);
        const double v = std::atof(line.c_str() + eq + 1);
        if (key == "alpha") {
            m.alpha = v;
            got_a = true;
        } else if (key == "beta") {
            m.beta = v;
            got_b = true;
        } else if (key == "sigma") {
            m.sigma = v;
            got_s = true;
        } else if (key == "n") {
            m.n_samples = static_cast<int>(v);
        }
    }
    if (!got_a || !got_b || !got_s) throw DataError(path + ": missing alpha/beta/sigma");
    return m;
}

}  // namespace sbsize
