#include "nearcrit/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nearcrit/good_triangle.hpp"
#include "nearcrit/parallel.hpp"
#include "nearcrit/philox.hpp"

namespace nearcrit {

namespace {

int resolve_workers(int workers) { return workers > 0 ? workers : default_workers(); }

void check_samples(std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
}

double crossing_value(const InterfacePath& path) {
  switch (side_outcome(path)) {
    case SideOutcome::Right: return 1.0;
    case SideOutcome::Left: return 0.0;
    case SideOutcome::Tie: return 0.5;
  }
  return 0.0;
}

}  // namespace

// ---------------------------------------------------------------- crossing

std::vector<double> crossing_values(int n, double p, std::uint64_t seed, std::size_t first,
                                    std::size_t count, int workers) {
  check_probability(p);
  const TriangleDomain domain(n);
  std::vector<double> values(count);
  parallel_for(count, resolve_workers(workers), [&](std::size_t s) {
    const CouplingField field(domain, seed, first + s, StreamTag::Crossing);
    values[s] = crossing_value(explore(domain, Coloring::lazy(field, p)));
  });
  return values;
}

Estimate estimate_R(double p, int n, std::size_t samples, std::uint64_t seed, int workers) {
  check_samples(samples);
  return estimate_from(crossing_values(n, p, seed, 0, samples, workers));
}

// ---------------------------------------------------------------- thresholds

Verdict compare_R(double p, int n, double target, const Escalation& esc, std::uint64_t seed,
                  int workers, Estimate* last) {
  if (esc.initial == 0 || esc.cap < esc.initial)
    throw std::invalid_argument("escalation needs 0 < initial <= cap");
  std::vector<double> values;
  std::size_t want = esc.initial;
  for (;;) {
    const std::vector<double> more = crossing_values(n, p, seed, values.size(),
                                                     want - values.size(), workers);
    values.insert(values.end(), more.begin(), more.end());
    const Estimate e = estimate_from(values);
    if (last) *last = e;
    const double margin = esc.sigmas * e.std_error;
    if (e.mean > target && e.mean - target > margin) return Verdict::Above;
    if (e.mean < target && target - e.mean > margin) return Verdict::Below;
    if (want >= esc.cap) return Verdict::Ambiguous;
    want = std::min(esc.cap, 2 * want);
  }
}

PstarResult estimate_pstar(int n, double eps, const Escalation& esc, double tolerance,
                           std::uint64_t seed, int workers) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  TriangleDomain check(n);
  PstarResult out;
  const double target = 0.5 + eps;
  while (out.hi - out.lo > tolerance) {
    const double mid = 0.5 * (out.lo + out.hi);
    ++out.probes;
    const Verdict v = compare_R(mid, n, target, esc, seed, workers);
    if (v == Verdict::Above) {
      out.hi = mid;
    } else if (v == Verdict::Below) {
      out.lo = mid;
    } else {
      out.resolved = false;
      break;
    }
  }
  out.p = 0.5 * (out.lo + out.hi);
  return out;
}

LResult estimate_L(double p, double eps, const Escalation& esc, int n_max, std::uint64_t seed,
                   int workers) {
  if (!(p > 0.5)) throw std::invalid_argument("correlation length needs p > 1/2");
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");
  LResult out;
  const double target = 0.5 + eps;
  auto exceeds = [&](int n) {
    ++out.probes;
    return compare_R(p, n, target, esc, seed, workers) == Verdict::Above;
  };
  int lo = 0;  // 0: nothing below tested yet
  int hi = 0;
  for (int n = 2;; n *= 2) {
    const int probe = std::min(n, n_max - n_max % 2);
    if (exceeds(probe)) {
      hi = probe;
      break;
    }
    lo = probe;
    if (probe >= n_max - n_max % 2) {
      out.last_below = lo;
      return out;
    }
  }
  while (hi - lo > 2 && lo > 0) {
    int mid = (lo + hi) / 2;
    mid -= mid % 2;
    if (mid <= lo) mid = lo + 2;
    if (exceeds(mid)) hi = mid;
    else lo = mid;
  }
  out.n = hi;
  out.last_below = lo;
  return out;
}

// ---------------------------------------------------------------- scaling

ScalingResult scaling_check(const std::vector<double>& ps, double eps, const Escalation& esc,
                            int n_max, std::size_t arm_samples, std::uint64_t seed, int workers) {
  if (ps.empty()) throw std::invalid_argument("scaling check needs at least one p");
  for (double p : ps)
    if (!(p > 0.5)) throw std::invalid_argument("scaling check needs every p > 1/2");
  ScalingResult out;
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ScalingRow row;
    row.p = ps[i];
    row.L = estimate_L(ps[i], eps, esc, n_max, seed, workers).n;
    if (!row.L) {
      row.flagged = true;
    } else {
      ArmQuery q{ArmPattern::four(), 0, *row.L, {0, 0}};
      row.four_arm = sample_arm_prob(0.5, q, arm_samples, derive_seed(seed, 5, 0), workers);
      const double l = *row.L;
      row.product = (ps[i] - 0.5) * l * l * row.four_arm.mean;
      if (row.product > 0.0) {
        lo = std::min(lo, row.product);
        hi = std::max(hi, row.product);
      } else {
        row.flagged = true;
      }
    }
    out.rows.push_back(row);
  }
  out.max_min_ratio = hi > 0.0 ? hi / lo : 0.0;
  return out;
}

// ---------------------------------------------------------------- length / dimension

LengthResult length_experiment(const std::vector<int>& ns, const std::vector<double>& ps,
                               std::size_t samples, std::uint64_t seed, int workers) {
  if (ns.size() != ps.size()) throw std::invalid_argument("one p per N is required");
  check_samples(samples);
  LengthResult out;
  std::vector<PowerPoint> pts;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    check_probability(ps[i]);
    const TriangleDomain domain(ns[i]);
    std::vector<double> len(samples);
    parallel_for(samples, resolve_workers(workers), [&](std::size_t s) {
      const CouplingField field(domain, derive_seed(seed, static_cast<std::uint64_t>(ns[i]), 0), s,
                                StreamTag::Length);
      len[s] = static_cast<double>(explore(domain, Coloring::lazy(field, ps[i])).length());
    });
    const Estimate e = estimate_from(len);
    out.rows.push_back({ns[i], ps[i], e});
    pts.push_back({static_cast<double>(ns[i]), e.mean, e.std_error});
  }
  if (pts.size() >= 3) out.fit = fit_exponent(pts);
  return out;
}

DimensionResult dimension_experiment(int n, double p, const std::vector<int>& lambdas,
                                     std::size_t samples, std::uint64_t seed, int workers) {
  check_probability(p);
  check_samples(samples);
  for (int l : lambdas)
    if (l < 1 || l > std::max(1, n / 8)) throw std::invalid_argument("lambda must lie in [1, N/8]");
  const TriangleDomain domain(n);
  std::vector<std::vector<double>> counts(lambdas.size(), std::vector<double>(samples));
  parallel_for(samples, resolve_workers(workers), [&](std::size_t s) {
    const CouplingField field(domain, seed, s, StreamTag::Dimension);
    const InterfacePath path = explore(domain, Coloring::lazy(field, p));
    for (std::size_t j = 0; j < lambdas.size(); ++j)
      counts[j][s] = static_cast<double>(box_count(domain, path, lambdas[j]));
  });
  DimensionResult out;
  std::vector<PowerPoint> pts;
  for (std::size_t j = 0; j < lambdas.size(); ++j) {
    const Estimate e = estimate_from(counts[j]);
    out.rows.push_back({lambdas[j], e});
    if (lambdas[j] > 1) pts.push_back({static_cast<double>(lambdas[j]), e.mean, e.std_error});
  }
  if (pts.size() >= 3) out.fit = fit_exponent(pts);
  return out;
}

// ---------------------------------------------------------------- asymmetry

Quantiles quantiles_of(const std::vector<double>& v) {
  return {quantile(v, 0.10), quantile(v, 0.25), quantile(v, 0.50), quantile(v, 0.75),
          quantile(v, 0.90)};
}

AsymmetrySummary asymmetry_experiment(int n, double p, std::size_t samples, std::uint64_t seed,
                                      int workers) {
  check_probability(p);
  check_samples(samples);
  const TriangleDomain domain(n);
  std::vector<double> diff(samples), ratio(samples), normalized(samples), len(samples),
      absdiff(samples);
  parallel_for(samples, resolve_workers(workers), [&](std::size_t s) {
    const CouplingField field(domain, seed, s, StreamTag::Asymmetry);
    const Asymmetry a = asymmetry(explore(domain, Coloring::lazy(field, p)));
    const double d = static_cast<double>(a.difference());
    const double l = static_cast<double>(a.length);
    diff[s] = d;
    ratio[s] = d / l;
    normalized[s] = d / std::sqrt(l);
    len[s] = l;
    absdiff[s] = std::abs(d);
  });
  AsymmetrySummary out;
  out.n = n;
  out.p = p;
  out.samples = samples;
  out.difference = estimate_from(diff);
  out.ratio = estimate_from(ratio);
  out.normalized = estimate_from(normalized);
  out.length = estimate_from(len);
  out.q_difference = quantiles_of(diff);
  out.q_ratio = quantiles_of(ratio);
  out.q_normalized = quantiles_of(normalized);
  out.median_abs_difference = quantile(absdiff, 0.5);
  return out;
}

// ---------------------------------------------------------------- regime sweep

std::vector<RegimeRow> regime_sweep(const std::vector<double>& bs, double c,
                                    const std::vector<int>& ns, std::size_t samples,
                                    std::uint64_t seed, int workers) {
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  check_samples(samples);
  std::vector<RegimeRow> out;
  for (std::size_t bi = 0; bi < bs.size(); ++bi) {
    const double b = bs[bi];
    if (!(b >= 0.0)) throw std::invalid_argument("b must be non-negative");
    for (int n : ns) {
      const TriangleDomain domain(n);
      const double p = std::min(1.0, 0.5 + c * std::pow(static_cast<double>(n), -b));
      const std::uint64_t s_seed = derive_seed(seed, bi, static_cast<std::uint64_t>(n));
      std::vector<double> values(samples);
      parallel_for(samples, resolve_workers(workers), [&](std::size_t s) {
        const CouplingField field(domain, s_seed, s, StreamTag::Regime);
        values[s] = crossing_value(explore(domain, Coloring::lazy(field, p)));
      });
      out.push_back({b, n, p, estimate_from(values)});
    }
  }
  return out;
}

// ---------------------------------------------------------------- Z(eta)

ZResult z_statistic(int n, double p, double eta, int k, std::size_t samples,
                    std::size_t f_hat_samples, std::uint64_t seed, int workers, double a) {
  check_probability(p);
  check_samples(samples);
  check_samples(f_hat_samples);
  if (eta * n < 16.0) throw std::invalid_argument("z statistic needs eta N >= 16");
  const std::vector<SubTriangle> grid = eta_triangulation(eta);
  if (k < 1 || static_cast<std::size_t>(k) > grid.size())
    throw std::invalid_argument("K must lie in [1, number of eta-triangles]");
  const TriangleDomain domain(n);

  std::vector<double> z(samples), good(samples), very(samples), fsum(samples);
  parallel_for(samples, resolve_workers(workers), [&](std::size_t s) {
    const CouplingField field(domain, seed, s, StreamTag::GoodTriangle);
    const InterfacePath path = explore(domain, Coloring::lazy(field, p));
    int found = 0;
    double total = 0.0, vg = 0.0, fs = 0.0;
    for (std::size_t t = 0; t < grid.size() && found < k; ++t) {
      GoodTriangleReport rep = good_triangle_status(domain, path, grid[t], a);
      if (rep.status == TriangleStatus::NotGood) continue;
      rep.triangle_id = static_cast<int>(t);
      ++found;
      const Estimate f = f_hat(domain, path, rep, f_hat_samples, derive_seed(seed, s, t));
      const double v = rep.status == TriangleStatus::VeryGood ? 1.0 : 0.0;
      total += v - f.mean;
      vg += v;
      fs += f.mean;
    }
    z[s] = total;
    good[s] = found;
    very[s] = vg;
    fsum[s] = fs;
  });

  ZResult out;
  out.per_sample = z;
  out.z = estimate_from(z);
  for (std::size_t s = 0; s < samples; ++s) {
    if (good[s] < k) ++out.flagged;
    out.mean_good += good[s];
    out.mean_very_good += very[s];
    out.mean_f += fsum[s];
  }
  out.mean_good /= static_cast<double>(samples);
  out.mean_very_good /= static_cast<double>(samples);
  out.mean_f /= static_cast<double>(samples);
  return out;
}

// ---------------------------------------------------------------- coupling

std::size_t side_monotonicity_violations(const CouplingField& field, double p_lo, double p_hi) {
  const TriangleDomain& domain = field.domain();
  const FlipSchedule schedule = flip_schedule(field, p_lo, p_hi);
  std::vector<std::uint8_t> black = coloring_at(field, p_lo).to_dense_flags();
  InterfacePath path = explore(domain, Coloring::dense(domain, black));
  SideOutcome side = side_outcome(path);
  std::vector<std::uint8_t> on_path(domain.size(), 0);
  auto mark = [&] {
    std::fill(on_path.begin(), on_path.end(), 0);
    for (const Step& s : path.steps) on_path[s.left] = on_path[s.right] = 1;
  };
  mark();
  std::size_t violations = 0;
  for (const Flip& f : schedule.flips) {
    black[f.site] = 1;
    if (!on_path[f.site]) continue;
    path = explore(domain, Coloring::dense(domain, black));
    mark();
    const SideOutcome next = side_outcome(path);
    if (side == SideOutcome::Right && next == SideOutcome::Left) ++violations;
    side = next;
  }
  return violations;
}

PivotalSummary pivotal_experiment(int n, double p_hi, const Disc& disc, std::size_t fields,
                                  std::uint64_t seed, int workers) {
  check_samples(fields);
  const TriangleDomain domain(n);
  struct PerField {
    std::size_t jumps = 0, l2r = 0, r2l = 0, checks = 0, failures = 0;
  };
  std::vector<PerField> per(fields);
  parallel_for(fields, resolve_workers(workers), [&](std::size_t s) {
    const CouplingField field(domain, seed, s, StreamTag::Pivotal);
    const auto jumps = pivotal_sweep(field, p_hi, disc);
    PerField& r = per[s];
    r.jumps = jumps.size();
    if (jumps.empty()) return;
    const auto u = field.values();
    for (const PivotalJump& j : jumps) {
      (j.from == RegionSide::Left ? r.l2r : r.r2l) += 1;
      std::vector<std::uint8_t> black(domain.size());
      for (SiteIndex i = 0; i < domain.size(); ++i)
        black[i] = domain.is_interior(i) ? (u[i] <= j.p ? 1 : 0)
                                         : (domain.boundary_class(i) == BoundaryClass::BlackBoundary);
      const int m = std::min(static_cast<int>(std::floor(disc.radius * n / 2.0)),
                             domain.distance_to_boundary(j.site));
      if (m < 1) continue;
      ++r.checks;
      ArmQuery q{ArmPattern::four(), 0, m, domain.coord(j.site)};
      if (!detect_arms_in_domain(domain, black, q)) ++r.failures;
    }
  });
  PivotalSummary out;
  out.fields = fields;
  for (const PerField& r : per) {
    out.fields_with_jump += r.jumps > 0 ? 1 : 0;
    out.jumps += r.jumps;
    out.left_to_right += r.l2r;
    out.right_to_left += r.r2l;
    out.arm_checks += r.checks;
    out.arm_failures += r.failures;
  }
  return out;
}

}  // namespace nearcrit
