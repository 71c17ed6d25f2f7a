#include "nearcrit/experiments.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nearcrit/arms.hpp"
#include "nearcrit/config.hpp"
#include "nearcrit/estimators.hpp"
#include "nearcrit/svg.hpp"

namespace nearcrit {

const std::vector<ExperimentSpec>& experiment_specs() {
  static const std::vector<ExperimentSpec> specs = {
      {"crossing", "crossing probability R(p, N)",
       {{"n", "", true, "triangle side (even)"},
        {"p", "", true, "percolation parameter"},
        {"samples", "10000", false, "number of fields"},
        {"svg", "", false, "render the first sample to this SVG file"},
        {"path-dump", "", false, "write the first sample's path to this file"}}},
      {"pstar", "near-critical threshold p*(N, eps) by bisection",
       {{"n", "", true, "triangle side (even)"},
        {"eps", "0.1", false, "crossing excess over 1/2"},
        {"samples", "1000", false, "initial samples per probe"},
        {"max-samples", "16000", false, "escalation cap per probe"},
        {"tolerance", "0.005", false, "target bracket width"}}},
      {"corrlen", "correlation length L(p, eps) and the scaling product",
       {{"p-list", "", true, "comma-separated p values > 1/2"},
        {"eps", "0.1", false, "crossing excess over 1/2"},
        {"samples", "2000", false, "initial samples per probe"},
        {"max-samples", "32000", false, "escalation cap per probe"},
        {"n-max", "1024", false, "largest N scanned"},
        {"arm-samples", "0", false, "samples for P(A4(L)); 0 skips the product"}}},
      {"arms", "arm event probabilities",
       {{"pattern", "", true, "1, 2 or 4 (B, BW, BWBW)"},
        {"radii", "", true, "comma-separated outer radii"},
        {"p", "0.5", false, "percolation parameter"},
        {"n-inner", "0", false, "inner radius (0: neighbours of the centre)"},
        {"samples", "10000", false, "number of patches"}}},
      {"quasimult", "quasi-multiplicativity ratio",
       {{"n1", "", true, "inner scale"},
        {"n2", "", true, "outer scale (>= 2 n1)"},
        {"pattern", "2", false, "1, 2 or 4"},
        {"p", "0.5", false, "percolation parameter"},
        {"samples", "10000", false, "patches per factor"}}},
      {"length", "interface length against N",
       {{"n-list", "", true, "comma-separated even N"},
        {"p-mode", "critical", false, "critical, fixed or near-critical"},
        {"p", "0.5", false, "parameter for p-mode fixed"},
        {"eps", "0.1", false, "eps for p-mode near-critical"},
        {"samples", "500", false, "paths per N"},
        {"pstar-samples", "1000", false, "initial samples per p* probe"},
        {"pstar-max-samples", "16000", false, "escalation cap per p* probe"},
        {"tolerance", "0.002", false, "p* bracket width"}}},
      {"dimension", "box counting against lambda",
       {{"n", "", true, "triangle side (even)"},
        {"lambdas", "", true, "comma-separated grid sizes (<= N/8)"},
        {"p", "0.5", false, "percolation parameter"},
        {"samples", "200", false, "paths"}}},
      {"asymmetry", "l+ - l- statistics",
       {{"n", "", true, "triangle side (even)"},
        {"p-mode", "fixed", false, "fixed or near-critical"},
        {"p", "0.5", false, "parameter for p-mode fixed"},
        {"eps", "0.1", false, "eps for p-mode near-critical"},
        {"samples", "1000", false, "paths"},
        {"pstar-samples", "1000", false, "initial samples per p* probe"},
        {"pstar-max-samples", "16000", false, "escalation cap per p* probe"},
        {"tolerance", "0.002", false, "p* bracket width"}}},
      {"regime-sweep", "R(1/2 + c N^-b, N) along N",
       {{"b-list", "", true, "comma-separated exponents b"},
        {"n-list", "", true, "comma-separated even N"},
        {"c", "1", false, "prefactor"},
        {"samples", "10000", false, "fields per point"}}},
      {"pivotal-sweep", "side jumps of a disc while p rises from 1/2",
       {{"n", "", true, "triangle side (even)"},
        {"p-hi", "", true, "final parameter (>= 1/2)"},
        {"disc-x", "0", false, "disc centre x (unit triangle)"},
        {"disc-y", "0.3", false, "disc centre y"},
        {"disc-r", "0.1", false, "disc radius"},
        {"fields", "200", false, "number of fields"}}},
      {"goodtri", "good / very good triangles and Z(eta)",
       {{"n", "", true, "triangle side (even)"},
        {"p", "0.5", false, "percolation parameter"},
        {"eta", "0.125", false, "small triangle side (1/M)"},
        {"k", "16", false, "good triangles counted per sample"},
        {"samples", "200", false, "paths"},
        {"fhat-samples", "100", false, "resamplings per good triangle"},
        {"a", "0.2", false, "half-width of r in units of eta"}}},
      {"enumerate", "exact R and E[l] by enumeration (N <= 6)",
       {{"n", "", true, "triangle side (even, <= 6)"}, {"p", "", true, "percolation parameter"}}},
      {"render", "SVG of one configuration (optionally a coupled pair)",
       {{"n", "", true, "triangle side (even, <= 2048)"},
        {"svg", "", true, "output SVG file"},
        {"p", "0.5", false, "percolation parameter"},
        {"p2", "", false, "second parameter on the same field (coupled pair)"},
        {"stream", "0", false, "field index"},
        {"path-dump", "", false, "write the path to this file"}}},
  };
  return specs;
}

const ExperimentSpec& experiment_spec(const std::string& name) {
  for (const auto& s : experiment_specs())
    if (s.name == name) return s;
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

namespace {

using Params = std::map<std::string, std::string>;

double real(const Params& p, const std::string& k) { return parse_real(p.at(k), k); }
long long integer(const Params& p, const std::string& k) { return parse_int(p.at(k), k); }
std::size_t count(const Params& p, const std::string& k) {
  const long long v = integer(p, k);
  if (v < 1) throw std::invalid_argument(k + " must be >= 1");
  return static_cast<std::size_t>(v);
}
int even_n(const Params& p, const std::string& k) {
  const long long v = integer(p, k);
  if (v < 2 || v % 2 != 0) throw std::invalid_argument(k + " must be an even integer >= 2");
  return static_cast<int>(v);
}
double probability(const Params& p, const std::string& k) {
  const double v = real(p, k);
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(k + " must lie in [0, 1]");
  return v;
}

// Parses every value of a configuration so errors surface before any work.
void check_values(const ExperimentConfig& c) {
  const Params& p = c.params;
  const std::string& e = c.experiment;
  for (const auto& [k, v] : p) {
    if (v.empty()) continue;
    if (k == "n" || k == "n-max") even_n(p, k);
    else if (k == "p" || k == "p2" || k == "p-hi") probability(p, k);
    else if (k == "samples" || k == "max-samples" || k == "fields" || k == "fhat-samples" ||
             k == "pstar-samples" || k == "pstar-max-samples" || k == "k")
      count(p, k);
    else if (k == "arm-samples" || k == "n-inner" || k == "stream" || k == "n1" || k == "n2")
      integer(p, k);
    else if (k == "eps" || k == "tolerance" || k == "c" || k == "eta" || k == "a" ||
             k == "disc-x" || k == "disc-y" || k == "disc-r")
      real(p, k);
    else if (k == "n-list" || k == "radii" || k == "lambdas") parse_int_list(v);
    else if (k == "p-list" || k == "b-list") parse_real_list(v);
    else if (k == "pattern") parse_pattern(v);
    else if (k == "p-mode") {
      const bool ok = v == "fixed" || v == "near-critical" || (e == "length" && v == "critical");
      if (!ok) throw std::invalid_argument("unsupported p-mode '" + v + "'");
    }
  }
  if (p.count("n-list"))
    for (int n : parse_int_list(p.at("n-list")))
      if (n < 2 || n % 2) throw std::invalid_argument("n-list entries must be even and >= 2");
  if (p.count("eps")) {
    const double eps = real(p, "eps");
    if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  }
  if (p.count("max-samples") && count(p, "max-samples") < count(p, "samples"))
    throw std::invalid_argument("max-samples must be >= samples");
  if (e == "enumerate" && even_n(p, "n") > 6)
    throw std::invalid_argument("enumerate supports N <= 6");
  if (e == "render" && even_n(p, "n") > kSvgMaxN)
    throw std::invalid_argument("render supports N <= " + std::to_string(kSvgMaxN));
  if ((e == "crossing" || e == "render") && !p.at("svg").empty() && even_n(p, "n") > kSvgMaxN)
    throw std::invalid_argument("render supports N <= " + std::to_string(kSvgMaxN));
}

std::string fmt(double v) { return format_real(v); }

Table base_table(const ExperimentConfig& c) {
  Table t;
  t.add_meta("experiment", c.experiment);
  for (const auto& [k, v] : c.params)
    if (k != "svg" && k != "path-dump") t.add_meta(k, v);
  t.add_meta("seed", std::to_string(c.seed));
  return t;
}

void add_fit(Table& t, const PowerFit& fit) {
  t.add_meta("fit_slope", fmt(fit.slope));
  t.add_meta("fit_slope_stderr", fmt(fit.slope_stderr));
  t.add_meta("fit_intercept", fmt(fit.intercept));
  t.add_meta("fit_r_squared", fmt(fit.r_squared));
}

Escalation escalation(const Params& p, const std::string& initial, const std::string& cap) {
  return {count(p, initial), count(p, cap), 3.0};
}

void run_crossing(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const double p = probability(c.params, "p");
  const std::size_t samples = count(c.params, "samples");
  const std::vector<double> v = crossing_values(n, p, c.seed, 0, samples, c.workers);
  const Estimate e = estimate_from(v);
  std::int64_t right = 0, left = 0, tie = 0;
  for (double x : v) (x == 1.0 ? right : x == 0.0 ? left : tie) += 1;
  r.table.columns = {"n", "p", "samples", "R", "stderr", "right", "left", "tie"};
  r.table.add_row({std::int64_t{n}, p, static_cast<std::int64_t>(samples), e.mean, e.std_error,
                   right, left, tie});
  r.summary = "R=" + fmt(e.mean) + " stderr=" + fmt(e.std_error);

  const bool want_svg = !c.params.at("svg").empty();
  const bool want_dump = !c.params.at("path-dump").empty();
  if (want_svg || want_dump) {
    const TriangleDomain domain(n);
    const CouplingField field(domain, c.seed, 0, StreamTag::Crossing);
    const std::vector<std::uint8_t> black = coloring_at(field, p).to_dense_flags();
    const InterfacePath path = explore(domain, Coloring::dense(domain, black));
    if (want_svg) {
      SvgScene scene;
      scene.black = &black;
      scene.path = &path;
      r.svg = render_svg(domain, scene);
    }
    if (want_dump) r.path_dump = format_path_dump(domain, path);
  }
}

void run_pstar(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const double eps = real(c.params, "eps");
  const PstarResult res = estimate_pstar(n, eps, escalation(c.params, "samples", "max-samples"),
                                         real(c.params, "tolerance"), c.seed, c.workers);
  r.table.columns = {"n", "eps", "pstar", "lo", "hi", "resolved", "probes"};
  r.table.add_row({std::int64_t{n}, eps, res.p, res.lo, res.hi,
                   std::string(res.resolved ? "yes" : "no"), static_cast<std::int64_t>(res.probes)});
  r.summary = "p*=" + fmt(res.p) + " bracket=[" + fmt(res.lo) + ", " + fmt(res.hi) + "]" +
              (res.resolved ? "" : " (unresolved)");
}

void run_corrlen(const ExperimentConfig& c, ExperimentResult& r) {
  const std::vector<double> ps = parse_real_list(c.params.at("p-list"));
  const double eps = real(c.params, "eps");
  const Escalation esc = escalation(c.params, "samples", "max-samples");
  const int n_max = even_n(c.params, "n-max");
  const long long arm_samples = integer(c.params, "arm-samples");
  r.table.columns = {"p", "L", "resolved", "four_arm", "four_arm_stderr", "product"};
  std::vector<PowerPoint> pts;
  if (arm_samples > 0) {
    const ScalingResult s = scaling_check(ps, eps, esc, n_max,
                                          static_cast<std::size_t>(arm_samples), c.seed, c.workers);
    for (const ScalingRow& row : s.rows) {
      r.table.add_row({row.p, static_cast<std::int64_t>(row.L.value_or(0)),
                       std::string(row.L ? "yes" : "no"), row.four_arm.mean,
                       row.four_arm.std_error, row.product});
      if (row.L) pts.push_back({row.p - 0.5, static_cast<double>(*row.L), 0.0});
    }
    r.table.add_meta("product_max_min_ratio", fmt(s.max_min_ratio));
    r.summary = "product max/min=" + fmt(s.max_min_ratio);
  } else {
    for (double p : ps) {
      const LResult l = estimate_L(p, eps, esc, n_max, c.seed, c.workers);
      r.table.add_row({p, static_cast<std::int64_t>(l.n.value_or(0)),
                       std::string(l.n ? "yes" : "no"), 0.0, 0.0, 0.0});
      if (l.n) pts.push_back({p - 0.5, static_cast<double>(*l.n), 0.0});
    }
  }
  if (pts.size() >= 3) {
    const PowerFit fit = fit_exponent(pts);
    add_fit(r.table, fit);
    r.summary = "L slope=" + fmt(fit.slope) + (r.summary.empty() ? "" : " " + r.summary);
  } else if (r.summary.empty()) {
    r.summary = "fewer than 3 resolved L values";
  }
}

void run_arms(const ExperimentConfig& c, ExperimentResult& r) {
  const ArmPattern pattern = parse_pattern(c.params.at("pattern"));
  const std::vector<int> radii = parse_int_list(c.params.at("radii"));
  const double p = probability(c.params, "p");
  const int n_inner = static_cast<int>(integer(c.params, "n-inner"));
  const std::size_t samples = count(c.params, "samples");
  const std::vector<Estimate> es =
      sample_arm_profile(p, pattern, n_inner, radii, samples, c.seed, c.workers);
  r.table.columns = {"pattern", "n_inner", "n_outer", "p", "estimate", "stderr", "samples"};
  std::vector<PowerPoint> pts;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    r.table.add_row({static_cast<std::int64_t>(pattern.size()), std::int64_t{n_inner},
                     std::int64_t{radii[i]}, p, es[i].mean, es[i].std_error,
                     static_cast<std::int64_t>(samples)});
    if (es[i].mean > 0.0) pts.push_back({static_cast<double>(radii[i]), es[i].mean, es[i].std_error});
  }
  if (pts.size() >= 3) {
    const PowerFit fit = fit_exponent(pts);
    add_fit(r.table, fit);
    r.summary = "slope=" + fmt(fit.slope) + " +- " + fmt(fit.slope_stderr);
  } else {
    r.summary = "P=" + fmt(es.back().mean) + " stderr=" + fmt(es.back().std_error);
  }
}

void run_quasimult(const ExperimentConfig& c, ExperimentResult& r) {
  const int n1 = static_cast<int>(integer(c.params, "n1"));
  const int n2 = static_cast<int>(integer(c.params, "n2"));
  const ArmPattern pattern = parse_pattern(c.params.at("pattern"));
  const double p = probability(c.params, "p");
  const QuasiMultRatio q =
      quasi_mult_ratio(p, n1, n2, pattern, count(c.params, "samples"), c.seed, c.workers);
  r.table.columns = {"n1", "n2", "pattern", "p", "ratio", "stderr", "inner", "outer", "whole",
                     "flagged"};
  r.table.add_row({std::int64_t{n1}, std::int64_t{n2}, static_cast<std::int64_t>(pattern.size()), p,
                   q.ratio.value_or(0.0), q.std_error, q.inner.mean, q.outer.mean, q.whole.mean,
                   std::string(q.ratio ? "no" : "yes")});
  r.summary = q.ratio ? "ratio=" + fmt(*q.ratio) + " stderr=" + fmt(q.std_error)
                      : std::string("denominator estimate is 0; no ratio");
}

double near_critical_p(const ExperimentConfig& c, int n) {
  const PstarResult ps =
      estimate_pstar(n, real(c.params, "eps"), escalation(c.params, "pstar-samples", "pstar-max-samples"),
                     real(c.params, "tolerance"), c.seed, c.workers);
  return ps.p;
}

void run_length(const ExperimentConfig& c, ExperimentResult& r) {
  const std::vector<int> ns = parse_int_list(c.params.at("n-list"));
  const std::string mode = c.params.at("p-mode");
  std::vector<double> ps;
  for (int n : ns) {
    if (mode == "critical") ps.push_back(0.5);
    else if (mode == "fixed") ps.push_back(probability(c.params, "p"));
    else ps.push_back(near_critical_p(c, n));
  }
  const LengthResult res = length_experiment(ns, ps, count(c.params, "samples"), c.seed, c.workers);
  r.table.columns = {"n", "p", "mean_length", "stderr"};
  for (const LengthRow& row : res.rows)
    r.table.add_row({std::int64_t{row.n}, row.p, row.length.mean, row.length.std_error});
  if (res.rows.size() >= 3) {
    add_fit(r.table, res.fit);
    r.summary = "length slope=" + fmt(res.fit.slope) + " +- " + fmt(res.fit.slope_stderr);
  } else {
    r.summary = "E[l]=" + fmt(res.rows.back().length.mean);
  }
}

void run_dimension(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const std::vector<int> lambdas = parse_int_list(c.params.at("lambdas"));
  const DimensionResult res = dimension_experiment(n, probability(c.params, "p"), lambdas,
                                                   count(c.params, "samples"), c.seed, c.workers);
  r.table.columns = {"lambda", "mean_boxes", "stderr"};
  for (const DimensionRow& row : res.rows)
    r.table.add_row({std::int64_t{row.lambda}, row.boxes.mean, row.boxes.std_error});
  std::size_t fitted = 0;
  for (int l : lambdas) fitted += l > 1 ? 1 : 0;
  if (fitted >= 3) {
    add_fit(r.table, res.fit);
    r.summary = "box-counting slope=" + fmt(res.fit.slope) + " +- " + fmt(res.fit.slope_stderr);
  } else {
    r.summary = "fewer than 3 grid sizes above 1; no fit";
  }
}

void run_asymmetry(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const double p = c.params.at("p-mode") == "near-critical" ? near_critical_p(c, n)
                                                           : probability(c.params, "p");
  const AsymmetrySummary s = asymmetry_experiment(n, p, count(c.params, "samples"), c.seed, c.workers);
  r.table.columns = {"statistic", "mean", "stderr", "q10", "q25", "median", "q75", "q90"};
  auto row = [&](const char* name, const Estimate& e, const Quantiles& q) {
    r.table.add_row({std::string(name), e.mean, e.std_error, q.q10, q.q25, q.q50, q.q75, q.q90});
  };
  row("difference", s.difference, s.q_difference);
  row("ratio", s.ratio, s.q_ratio);
  row("normalized", s.normalized, s.q_normalized);
  r.table.add_meta("p_used", fmt(p));
  r.table.add_meta("median_abs_difference", fmt(s.median_abs_difference));
  r.table.add_meta("mean_length", fmt(s.length.mean));
  r.summary = "median(l+ - l-)=" + fmt(s.q_difference.q50) + " mean ratio=" + fmt(s.ratio.mean) +
              " 2(p-1/2)=" + fmt(2 * (p - 0.5));
}

void run_regime(const ExperimentConfig& c, ExperimentResult& r) {
  const auto rows = regime_sweep(parse_real_list(c.params.at("b-list")), real(c.params, "c"),
                                 parse_int_list(c.params.at("n-list")), count(c.params, "samples"),
                                 c.seed, c.workers);
  r.table.columns = {"b", "n", "p", "R", "stderr"};
  for (const RegimeRow& row : rows)
    r.table.add_row({row.b, std::int64_t{row.n}, row.p, row.R.mean, row.R.std_error});
  r.summary = "R at largest N for b=" + fmt(rows.back().b) + ": " + fmt(rows.back().R.mean);
}

void run_pivotal(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const Disc disc{{real(c.params, "disc-x"), real(c.params, "disc-y")}, real(c.params, "disc-r")};
  const PivotalSummary s = pivotal_experiment(n, probability(c.params, "p-hi"), disc,
                                              count(c.params, "fields"), c.seed, c.workers);
  r.table.columns = {"fields", "fields_with_jump", "jumps", "left_to_right", "right_to_left",
                     "arm_checks", "arm_failures"};
  auto i64 = [](std::size_t v) { return static_cast<std::int64_t>(v); };
  r.table.add_row({i64(s.fields), i64(s.fields_with_jump), i64(s.jumps), i64(s.left_to_right),
                   i64(s.right_to_left), i64(s.arm_checks), i64(s.arm_failures)});
  r.summary = "fields with a jump: " + std::to_string(s.fields_with_jump) + "/" +
              std::to_string(s.fields) + ", arm failures " + std::to_string(s.arm_failures);
}

void run_goodtri(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const ZResult z = z_statistic(n, probability(c.params, "p"), real(c.params, "eta"),
                                static_cast<int>(count(c.params, "k")), count(c.params, "samples"),
                                count(c.params, "fhat-samples"), c.seed, c.workers,
                                real(c.params, "a"));
  r.table.columns = {"Z", "stderr", "samples", "flagged", "mean_good", "mean_very_good", "mean_fhat"};
  r.table.add_row({z.z.mean, z.z.std_error, static_cast<std::int64_t>(z.z.n_samples),
                   static_cast<std::int64_t>(z.flagged), z.mean_good, z.mean_very_good, z.mean_f});
  r.summary = "Z=" + fmt(z.z.mean) + " stderr=" + fmt(z.z.std_error) + " (flagged samples " +
              std::to_string(z.flagged) + ")";
}

void run_enumerate(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const double p = probability(c.params, "p");
  const ExactResult e = enumerate_exact(n, p);
  r.table.columns = {"n", "p", "R", "expected_length"};
  r.table.add_row({std::int64_t{n}, p, e.R, e.expected_length});
  std::ostringstream s;
  s << "R=" << e.R << " E[l]=" << e.expected_length;
  r.summary = s.str();
}

void run_render(const ExperimentConfig& c, ExperimentResult& r) {
  const int n = even_n(c.params, "n");
  const double p = probability(c.params, "p");
  const TriangleDomain domain(n);
  const CouplingField field(domain, c.seed, static_cast<std::uint64_t>(integer(c.params, "stream")),
                            StreamTag::Crossing);
  const std::vector<std::uint8_t> black = coloring_at(field, p).to_dense_flags();
  const InterfacePath path = explore(domain, Coloring::dense(domain, black));
  SvgScene scene;
  scene.black = &black;
  scene.path = &path;
  InterfacePath second;
  std::vector<std::uint8_t> black2;
  r.table.columns = {"p", "length", "lplus", "lminus", "side"};
  const Asymmetry a = asymmetry(path);
  r.table.add_row({p, a.length, a.black, a.white, to_string(side_outcome(path))});
  if (!c.params.at("p2").empty()) {
    const double p2 = probability(c.params, "p2");
    black2 = coloring_at(field, p2).to_dense_flags();
    second = explore(domain, Coloring::dense(domain, black2));
    scene.second_path = &second;
    const Asymmetry a2 = asymmetry(second);
    r.table.add_row({p2, a2.length, a2.black, a2.white, to_string(side_outcome(second))});
  }
  r.svg = render_svg(domain, scene);
  if (!c.params.at("path-dump").empty()) r.path_dump = format_path_dump(domain, path);
  r.summary = "rendered " + std::to_string(domain.size()) + " cells, path length " +
              std::to_string(path.length());
}

}  // namespace

void validate_config(ExperimentConfig& config) {
  const ExperimentSpec& spec = experiment_spec(config.experiment);
  Params normalized;
  for (const auto& [k, v] : config.params) {
    const std::string key = normalize_key(k);
    bool known = false;
    for (const KeySpec& ks : spec.keys) known = known || ks.key == key;
    if (!known)
      throw std::invalid_argument("unknown key '" + k + "' for experiment " + config.experiment);
    normalized[key] = v;
  }
  for (const KeySpec& ks : spec.keys) {
    auto it = normalized.find(ks.key);
    if (it == normalized.end() || (ks.required && it->second.empty())) {
      if (ks.required)
        throw std::invalid_argument("missing required key '" + ks.key + "' for experiment " +
                                    config.experiment);
      normalized[ks.key] = ks.default_value;
    }
  }
  if (config.workers < 1) throw std::invalid_argument("workers must be >= 1");
  config.params = normalized;
  check_values(config);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  validate_config(c);
  ExperimentResult r;
  r.experiment = c.experiment;
  r.seed = c.seed;
  for (const auto& kv : c.params) r.parameters.push_back(kv);
  r.table = base_table(c);
  const auto t0 = std::chrono::steady_clock::now();
  const std::string& e = c.experiment;
  if (e == "crossing") run_crossing(c, r);
  else if (e == "pstar") run_pstar(c, r);
  else if (e == "corrlen") run_corrlen(c, r);
  else if (e == "arms") run_arms(c, r);
  else if (e == "quasimult") run_quasimult(c, r);
  else if (e == "length") run_length(c, r);
  else if (e == "dimension") run_dimension(c, r);
  else if (e == "asymmetry") run_asymmetry(c, r);
  else if (e == "regime-sweep") run_regime(c, r);
  else if (e == "pivotal-sweep") run_pivotal(c, r);
  else if (e == "goodtri") run_goodtri(c, r);
  else if (e == "enumerate") run_enumerate(c, r);
  else if (e == "render") run_render(c, r);
  else throw std::invalid_argument("unknown experiment '" + e + "'");
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void write_outputs(const ExperimentConfig& config, const ExperimentResult& result) {
  if (!config.output.empty()) write_csv(config.output, result.table);
  auto it = config.params.find("svg");
  if (it != config.params.end() && !it->second.empty() && !result.svg.empty())
    write_file_atomic(it->second, result.svg);
  it = config.params.find("path-dump");
  if (it != config.params.end() && !it->second.empty() && !result.path_dump.empty())
    write_file_atomic(it->second, result.path_dump);
}

}  // namespace nearcrit
