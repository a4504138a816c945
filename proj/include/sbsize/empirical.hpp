#pragma once

#include <span>
#include <string>
#include <vector>

namespace sbsize {

/// Linear estimator sboc = alpha * sivi + beta with the standard error of the
/// estimate added on top as a conservative margin.
struct RegressionModel {
    double alpha = 0.0;  // kWh/kWp per SIVI unit
    double beta = 0.0;   // kWh/kWp
    double sigma = 0.0;  // standard error of the estimate, kWh/kWp
    int n_samples = 0;
};

/// Ordinary least squares of ys on xs. sigma uses the population-style
/// denominator N (not N-2). Throws DataError for fewer than 2 points and
/// NumericalError when xs has zero variance.
RegressionModel fit_regression(std::span<const double> xs, std::span<const double> ys);

/// Standard error of a fixed line (alpha, beta) evaluated on given points:
/// sqrt(sum((y - (alpha*x + beta))^2) / N).
double residual_sigma(double alpha, double beta, std::span<const double> xs,
                      std::span<const double> ys);

/// alpha * sivi + beta + sigma, clamped below at zero.
double estimate_sboc(const RegressionModel& model, double sivi);

/// Sample Pearson correlation. Throws DataError on length mismatch or fewer
/// than 2 points, NumericalError when either series is constant.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Sorted-sample empirical CDF with nearest-rank quantiles.
class EmpiricalCdf {
  public:
    explicit EmpiricalCdf(std::vector<double> samples);  // throws DataError if empty

    /// Nearest-rank quantile: the value at rank ceil(level * n), level in (0, 1].
    double quantile(double level) const;

    const std::vector<double>& sorted() const { return sorted_; }
    size_t size() const { return sorted_.size(); }

  private:
    std::vector<double> sorted_;
};

void save_regression(const std::string& path, const RegressionModel& m);
RegressionModel load_regression(const std::string& path);

}  // namespace sbsize
