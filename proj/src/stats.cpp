#include "nearcrit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nearcrit {

Estimate estimate_from(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("estimate needs at least one sample");
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {mean, sd / std::sqrt(n), values.size()};
}

Estimate estimate_proportion(double hits, std::size_t n) {
  if (n == 0) throw std::invalid_argument("estimate needs at least one sample");
  const double nn = static_cast<double>(n);
  const double mean = hits / nn;
  if (n == 1) return {mean, 0.0, n};
  const double ss = hits * (1.0 - mean) * (1.0 - mean) + (nn - hits) * mean * mean;
  return {mean, std::sqrt(ss / (nn - 1.0)) / std::sqrt(nn), n};
}

double separation_sigmas(const Estimate& a, const Estimate& b) {
  const double diff = std::abs(a.mean - b.mean);
  const double se = std::hypot(a.std_error, b.std_error);
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

PowerFit fit_exponent(const std::vector<PowerPoint>& points) {
  if (points.size() < 3) throw std::invalid_argument("fit_exponent needs at least 3 points");
  double min_rel = std::numeric_limits<double>::infinity();
  bool any_zero = false;
  for (const PowerPoint& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0))
      throw std::invalid_argument("fit_exponent needs positive x and y");
    if (p.stderr_y < 0.0 || !std::isfinite(p.stderr_y))
      throw std::invalid_argument("fit_exponent needs finite non-negative errors");
    const double rel = p.stderr_y / p.y;
    if (rel > 0.0) min_rel = std::min(min_rel, rel);
    else any_zero = true;
  }
  const bool unweighted = !std::isfinite(min_rel);

  PowerFit fit;
  for (const PowerPoint& p : points) {
    double w = 1.0;
    if (!unweighted) {
      double rel = p.stderr_y / p.y;
      if (rel == 0.0 && any_zero) rel = min_rel;
      w = 1.0 / (rel * rel);
    }
    fit.points.push_back({std::log(p.x), std::log(p.y), w});
  }

  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (const FitPoint& p : fit.points) {
    sw += p.weight;
    sx += p.weight * p.log_x;
    sy += p.weight * p.log_y;
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const FitPoint& p : fit.points) {
    sxx += p.weight * (p.log_x - mx) * (p.log_x - mx);
    sxy += p.weight * (p.log_x - mx) * (p.log_y - my);
    syy += p.weight * (p.log_y - my) * (p.log_y - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_exponent needs at least two distinct x");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (const FitPoint& p : fit.points) {
    const double r = p.log_y - fit.intercept - fit.slope * p.log_x;
    rss += p.weight * r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - rss / syy : 1.0;
  const double dof = static_cast<double>(fit.points.size()) - 2.0;
  if (unweighted) {
    fit.slope_stderr = std::sqrt(rss / dof / sxx);
  } else {
    // Weights are inverse variances; scale by the reduced chi-square when the
    // scatter exceeds the quoted errors.
    const double chi2 = rss / dof;
    fit.slope_stderr = std::sqrt(std::max(1.0, chi2) / sxx);
  }
  return fit;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace nearcrit
