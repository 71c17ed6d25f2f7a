#pragma once

#include <cstddef>
#include <vector>

namespace nearcrit {

/// Monte Carlo mean with standard error (sample standard deviation / sqrt(n)).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

/// Estimate from per-sample values, reduced in index order.
Estimate estimate_from(const std::vector<double>& values);
/// Estimate of a proportion from `hits` successes out of `n` 0/1 samples
/// (identical to estimate_from on the 0/1 values).
Estimate estimate_proportion(double hits, std::size_t n);

/// |a.mean - b.mean| in units of the combined standard error (infinity when
/// both errors vanish and the means differ, 0 when they agree exactly).
double separation_sigmas(const Estimate& a, const Estimate& b);

struct FitPoint {
  double log_x = 0.0;
  double log_y = 0.0;
  double weight = 1.0;
};

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  std::vector<FitPoint> points;
};

struct PowerPoint {
  double x = 0.0;
  double y = 0.0;
  double stderr_y = 0.0;
};

/// Weighted least squares of log y on log x with weights 1/(stderr_y/y)^2.
/// If every stderr is zero the fit is unweighted; zero errors mixed with
/// positive ones are replaced by the smallest positive relative error.
/// Throws std::invalid_argument for fewer than 3 points or non-positive
/// x or y.
PowerFit fit_exponent(const std::vector<PowerPoint>& points);

/// Empirical quantile with linear interpolation (q in [0, 1]).
double quantile(std::vector<double> values, double q);

}  // namespace nearcrit
