#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nearcrit/arms.hpp"
#include "nearcrit/explorer.hpp"
#include "nearcrit/stats.hpp"

namespace nearcrit {

// ---------------------------------------------------------------- crossing

/// Per-sample crossing indicator (1 Right, 0 Left, 1/2 Tie) for fields
/// (seed, stream) with stream in [first, first + count).
std::vector<double> crossing_values(int n, double p, std::uint64_t seed, std::size_t first,
                                    std::size_t count, int workers = 0);

/// R̂(p, N) = (#Right + #Tie/2) / samples over streams 0..samples-1.
Estimate estimate_R(double p, int n, std::size_t samples, std::uint64_t seed, int workers = 0);

/// Exhaustive sum over all colourings of the interior as polynomials in p:
/// index k holds the totals over colourings with k black interior cells.
struct ExactPolynomial {
  int n = 0;
  std::size_t interior = 0;
  std::vector<double> count;         // number of colourings
  std::vector<double> right_weight;  // Right counts 1, Tie 1/2
  std::vector<double> length_sum;    // sum of interface lengths

  double R(double p) const;
  double expected_length(double p) const;
};

/// Throws std::invalid_argument when the domain has more than 20 interior
/// sites (or n is invalid).
ExactPolynomial enumerate_polynomial(int n);

struct ExactResult {
  double R = 0.0;
  double expected_length = 0.0;
};
ExactResult enumerate_exact(int n, double p);

// ---------------------------------------------------------------- thresholds

/// Sample escalation policy shared by threshold searches: start at `initial`
/// samples per probe and double while the comparison with the target is not
/// 3-sigma significant, up to `cap` samples.
struct Escalation {
  std::size_t initial = 1000;
  std::size_t cap = 16000;
  double sigmas = 3.0;
};

enum class Verdict : std::uint8_t { Above, Below, Ambiguous };

/// Compares R̂(p, N) with `target` under the escalation policy. Samples are
/// streams 0..k-1 of the seed, so probes at different p share fields.
Verdict compare_R(double p, int n, double target, const Escalation& esc, std::uint64_t seed,
                  int workers = 0, Estimate* last = nullptr);

struct PstarResult {
  double p = 0.0;   // bracket midpoint
  double lo = 0.5;  // R(lo) <= 1/2 + eps (or unresolved)
  double hi = 1.0;  // R(hi) > 1/2 + eps significantly
  bool resolved = true;
  std::size_t probes = 0;
};

/// Bisection on [1/2, 1] for inf{p : R(p, N) > 1/2 + eps}.
PstarResult estimate_pstar(int n, double eps, const Escalation& esc, double tolerance,
                           std::uint64_t seed, int workers = 0);

struct LResult {
  std::optional<int> n;  // empty when unresolved
  int last_below = 0;    // largest even N tested that did not exceed
  std::size_t probes = 0;
};

/// Smallest even N with R̂(p, N) > 1/2 + eps (3-sigma), by doubling then
/// bisection; ambiguous probes count as not exceeding.
LResult estimate_L(double p, double eps, const Escalation& esc, int n_max, std::uint64_t seed,
                   int workers = 0);

// ---------------------------------------------------------------- scaling

struct ScalingRow {
  double p = 0.0;
  std::optional<int> L;
  Estimate four_arm;    // P̂_{1/2}(A^4(L))
  double product = 0.0;  // (p - 1/2) L^2 P̂
  bool flagged = false;
};
struct ScalingResult {
  std::vector<ScalingRow> rows;
  double max_min_ratio = 0.0;  // over unflagged rows with positive product
};

ScalingResult scaling_check(const std::vector<double>& ps, double eps, const Escalation& esc,
                            int n_max, std::size_t arm_samples, std::uint64_t seed,
                            int workers = 0);

// ---------------------------------------------------------------- length / dimension

struct LengthRow {
  int n = 0;
  double p = 0.0;
  Estimate length;
};
struct LengthResult {
  std::vector<LengthRow> rows;
  PowerFit fit;
};
/// E[l] for each N at p = ps[i]; fits log E[l] against log N.
LengthResult length_experiment(const std::vector<int>& ns, const std::vector<double>& ps,
                               std::size_t samples, std::uint64_t seed, int workers = 0);

struct DimensionRow {
  int lambda = 0;
  Estimate boxes;
};
struct DimensionResult {
  std::vector<DimensionRow> rows;
  PowerFit fit;  // over lambda > 1
};
DimensionResult dimension_experiment(int n, double p, const std::vector<int>& lambdas,
                                     std::size_t samples, std::uint64_t seed, int workers = 0);

// ---------------------------------------------------------------- asymmetry

struct Quantiles {
  double q10 = 0, q25 = 0, q50 = 0, q75 = 0, q90 = 0;
};
Quantiles quantiles_of(const std::vector<double>& values);

struct AsymmetrySummary {
  int n = 0;
  double p = 0.0;
  std::size_t samples = 0;
  Estimate difference;  // l+ - l-
  Estimate ratio;       // (l+ - l-)/l
  Estimate normalized;  // (l+ - l-)/sqrt(l)
  Estimate length;
  Quantiles q_difference, q_ratio, q_normalized;
  double median_abs_difference = 0.0;
};
AsymmetrySummary asymmetry_experiment(int n, double p, std::size_t samples, std::uint64_t seed,
                                      int workers = 0);

// ---------------------------------------------------------------- regime sweep

struct RegimeRow {
  double b = 0.0;
  int n = 0;
  double p = 0.0;
  Estimate R;
};
/// R̂(1/2 + c N^{-b}, N) for every (b, N); p is capped at 1.
std::vector<RegimeRow> regime_sweep(const std::vector<double>& bs, double c,
                                    const std::vector<int>& ns, std::size_t samples,
                                    std::uint64_t seed, int workers = 0);

// ---------------------------------------------------------------- Z(eta)

struct ZResult {
  Estimate z;
  std::vector<double> per_sample;
  std::size_t flagged = 0;  // samples with fewer than K good triangles
  double mean_good = 0.0;
  double mean_very_good = 0.0;
  double mean_f = 0.0;
};
/// Per sample: the first K good triangles of the eta-grid in row-major order
/// contribute 1(very good) - F̂.
ZResult z_statistic(int n, double p, double eta, int k, std::size_t samples,
                    std::size_t f_hat_samples, std::uint64_t seed, int workers = 0,
                    double a = 0.2);

// ---------------------------------------------------------------- coupling

/// Number of flips (p_lo -> p_hi) after which side_outcome moves from Right
/// to Left; re-explores only when a flipped site is next to the path.
std::size_t side_monotonicity_violations(const CouplingField& field, double p_lo, double p_hi);

struct PivotalSummary {
  std::size_t fields = 0;
  std::size_t fields_with_jump = 0;
  std::size_t jumps = 0;
  std::size_t left_to_right = 0;
  std::size_t right_to_left = 0;
  std::size_t arm_checks = 0;
  std::size_t arm_failures = 0;
};
/// Runs pivotal_sweep on `fields` fields and checks four alternating arms
/// from each recorded site to distance min(r N / 2, distance to boundary).
PivotalSummary pivotal_experiment(int n, double p_hi, const Disc& disc, std::size_t fields,
                                  std::uint64_t seed, int workers = 0);

}  // namespace nearcrit
