#include "nearcrit/arms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

#include "nearcrit/parallel.hpp"
#include "nearcrit/philox.hpp"
#include "nearcrit/sampling.hpp"

namespace nearcrit {

void validate_pattern(const ArmPattern& pattern) {
  const auto& c = pattern.colors;
  if (c.size() == 1) return;
  if (c.size() == 2 && c[0] != c[1]) return;
  if (c.size() == 4 && c[0] != c[1] && c[1] != c[2] && c[2] != c[3] && c[3] != c[0]) return;
  throw std::invalid_argument("arm pattern must be [B], [B,W] or [B,W,B,W]");
}

ArmPattern parse_pattern(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ',' && ch != ' ') t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (t == "1" || t == "B") return ArmPattern::one();
  if (t == "2" || t == "BW") return ArmPattern::two();
  if (t == "4" || t == "BWBW") return ArmPattern::four();
  throw std::invalid_argument("unknown arm pattern '" + text + "' (use 1, 2 or 4)");
}

void validate_query(const ArmQuery& query) {
  validate_pattern(query.pattern);
  if (query.n_inner < 0) throw std::invalid_argument("n_inner must be >= 0");
  if (query.n_outer <= query.n_inner) throw std::invalid_argument("n_outer must exceed n_inner");
}

HexPatch::HexPatch(int radius) : radius_(radius) {
  if (radius < 1) throw std::invalid_argument("patch radius must be >= 1");
  const std::size_t side = 2 * static_cast<std::size_t>(radius) + 1;
  cells_.assign(side * side, 0);
}

std::size_t HexPatch::offset(SiteCoord c) const {
  if (!contains(c)) throw std::out_of_range("cell outside the patch");
  const std::size_t side = 2 * static_cast<std::size_t>(radius_) + 1;
  return static_cast<std::size_t>(c.r + radius_) * side + static_cast<std::size_t>(c.q + radius_);
}

double arm_cell_uniform(std::uint64_t seed, std::uint64_t stream, SiteCoord c) {
  auto zigzag = [](int v) -> std::uint64_t {
    return v >= 0 ? 2 * static_cast<std::uint64_t>(v) : 2 * static_cast<std::uint64_t>(-v) - 1;
  };
  return counter_uniform(seed, StreamTag::Arms, stream, (zigzag(c.q) << 32) | zigzag(c.r));
}

HexPatch HexPatch::sample(int radius, double p, std::uint64_t seed, std::uint64_t stream) {
  check_probability(p);
  HexPatch patch(radius);
  for (int r = -radius; r <= radius; ++r)
    for (int q = -radius; q <= radius; ++q)
      patch.set({q, r}, arm_cell_uniform(seed, stream, {q, r}) < p);
  return patch;
}

namespace {

constexpr int kAbsent = -1;

// Component search restricted to the annulus lo <= d <= hi around the centre.
// `color(c)` returns 1 (black), 0 (white) or kAbsent.
template <class ColorFn>
ArmProfile compute_profile(ColorFn&& color, SiteCoord center, int n_inner, int n_max) {
  const int lo = n_inner == 0 ? 1 : n_inner;
  const int side = 2 * n_max + 1;
  auto local = [&](SiteCoord c) {
    return static_cast<std::size_t>(c.r - center.r + n_max) * static_cast<std::size_t>(side) +
           static_cast<std::size_t>(c.q - center.q + n_max);
  };
  std::vector<int> label(static_cast<std::size_t>(side) * static_cast<std::size_t>(side), -1);
  std::vector<int> comp_reach;

  const std::vector<SiteCoord> inner = hex_ring(center, lo);
  ArmProfile profile;
  profile.colors.resize(inner.size(), ArmColor::White);
  profile.reach.assign(inner.size(), kAbsent);

  std::vector<SiteCoord> stack;
  for (std::size_t k = 0; k < inner.size(); ++k) {
    const int col = color(inner[k]);
    if (col == kAbsent) continue;
    profile.colors[k] = col ? ArmColor::Black : ArmColor::White;
    const std::size_t start = local(inner[k]);
    if (label[start] >= 0) {
      profile.reach[k] = comp_reach[static_cast<std::size_t>(label[start])];
      continue;
    }
    const int id = static_cast<int>(comp_reach.size());
    comp_reach.push_back(lo);
    int reach = lo;
    label[start] = id;
    stack.assign(1, inner[k]);
    while (!stack.empty() && reach < n_max) {
      const SiteCoord c = stack.back();
      stack.pop_back();
      for (const SiteCoord& off : kNeighborOffsets) {
        const SiteCoord nb = c + off;
        const int d = hex_distance(nb, center);
        if (d < lo || d > n_max) continue;
        const std::size_t li = local(nb);
        if (label[li] == id) continue;
        if (color(nb) != col) continue;
        if (label[li] >= 0) {
          // Part of a search that stopped early at n_max.
          reach = n_max;
          break;
        }
        label[li] = id;
        reach = std::max(reach, d);
        stack.push_back(nb);
      }
    }
    comp_reach[static_cast<std::size_t>(id)] = reach;
    profile.reach[k] = reach;
  }
  return profile;
}

// Lazily coloured free patch: each cell's uniform is drawn on first use.
class LazyPatch {
 public:
  LazyPatch(int radius, double p, std::uint64_t seed, std::uint64_t stream)
      : radius_(radius), side_(2 * radius + 1), p_(p), seed_(seed), stream_(stream),
        state_(static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_), 2) {}

  int operator()(SiteCoord c) const {
    std::uint8_t& s = state_[static_cast<std::size_t>(c.r + radius_) * static_cast<std::size_t>(side_) +
                             static_cast<std::size_t>(c.q + radius_)];
    if (s == 2) s = arm_cell_uniform(seed_, stream_, c) < p_ ? 1 : 0;
    return s;
  }

 private:
  int radius_;
  int side_;
  double p_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  mutable std::vector<std::uint8_t> state_;
};

}  // namespace

bool profile_event(const ArmProfile& profile, const ArmPattern& pattern, int n_outer) {
  std::vector<ArmColor> good;
  for (std::size_t k = 0; k < profile.reach.size(); ++k)
    if (profile.reach[k] >= n_outer) good.push_back(profile.colors[k]);
  if (good.empty()) return false;
  switch (pattern.size()) {
    case 1:
      return std::find(good.begin(), good.end(), pattern.colors[0]) != good.end();
    case 2:
      return std::find(good.begin(), good.end(), ArmColor::Black) != good.end() &&
             std::find(good.begin(), good.end(), ArmColor::White) != good.end();
    default: {
      std::size_t changes = 0;
      for (std::size_t k = 0; k < good.size(); ++k)
        if (good[k] != good[(k + 1) % good.size()]) ++changes;
      return changes >= pattern.size();
    }
  }
}

bool detect_arms(const HexPatch& patch, const ArmQuery& query) {
  validate_query(query);
  const int reach_needed = hex_distance(query.center, {0, 0}) + query.n_outer;
  if (reach_needed > patch.radius())
    throw std::invalid_argument("patch does not cover the query ball");
  auto color = [&](SiteCoord c) { return patch.black(c) ? 1 : 0; };
  return profile_event(compute_profile(color, query.center, query.n_inner, query.n_outer),
                       query.pattern, query.n_outer);
}

bool detect_arms_in_domain(const TriangleDomain& domain, const std::vector<std::uint8_t>& black,
                           const ArmQuery& query) {
  validate_query(query);
  if (black.size() != domain.size())
    throw std::invalid_argument("colouring size does not match the domain");
  auto color = [&](SiteCoord c) {
    const SiteIndex i = domain.index_of(c);
    return i == kNoSite ? kAbsent : (black[i] ? 1 : 0);
  };
  return profile_event(compute_profile(color, query.center, query.n_inner, query.n_outer),
                       query.pattern, query.n_outer);
}

std::vector<Estimate> sample_arm_profile(double p, const ArmPattern& pattern, int n_inner,
                                         const std::vector<int>& radii, std::size_t samples,
                                         std::uint64_t seed, int workers) {
  check_probability(p);
  validate_pattern(pattern);
  if (radii.empty()) throw std::invalid_argument("no radii given");
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  for (int n : radii)
    if (n <= n_inner || n_inner < 0) throw std::invalid_argument("radii must exceed n_inner");
  const int n_max = *std::max_element(radii.begin(), radii.end());

  std::vector<std::vector<std::uint8_t>> hits(samples);
  parallel_for(samples, workers > 0 ? workers : default_workers(), [&](std::size_t s) {
    LazyPatch patch(n_max, p, seed, s);
    const ArmProfile profile = compute_profile(patch, SiteCoord{0, 0}, n_inner, n_max);
    hits[s].resize(radii.size());
    for (std::size_t j = 0; j < radii.size(); ++j)
      hits[s][j] = profile_event(profile, pattern, radii[j]) ? 1 : 0;
  });

  std::vector<Estimate> out;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    double count = 0.0;
    for (std::size_t s = 0; s < samples; ++s) count += hits[s][j];
    out.push_back(estimate_proportion(count, samples));
  }
  return out;
}

Estimate sample_arm_prob(double p, const ArmQuery& query, std::size_t samples, std::uint64_t seed,
                         int workers) {
  validate_query(query);
  return sample_arm_profile(p, query.pattern, query.n_inner, {query.n_outer}, samples, seed,
                            workers)
      .front();
}

namespace {

// The circle of radius n carries the pattern by itself (annulus of width 0).
Estimate circle_pattern_prob(double p, const ArmPattern& pattern, int n, std::size_t samples,
                             std::uint64_t seed, int workers) {
  std::vector<std::uint8_t> hits(samples);
  parallel_for(samples, workers, [&](std::size_t s) {
    LazyPatch patch(n, p, seed, s);
    hits[s] = profile_event(compute_profile(patch, SiteCoord{0, 0}, n, n), pattern, n) ? 1 : 0;
  });
  double count = 0.0;
  for (auto h : hits) count += h;
  return estimate_proportion(count, samples);
}

}  // namespace

QuasiMultRatio quasi_mult_ratio(double p, int n1, int n2, const ArmPattern& pattern,
                                std::size_t samples, std::uint64_t seed, int workers) {
  check_probability(p);
  validate_pattern(pattern);
  if (n1 < 2) throw std::invalid_argument("quasi-multiplicativity needs n1 >= 2");
  if (2 * n1 > n2) throw std::invalid_argument("quasi-multiplicativity needs 2 n1 <= n2");
  const int w = workers > 0 ? workers : default_workers();

  QuasiMultRatio out;
  out.inner = sample_arm_profile(p, pattern, 0, {n1 / 2}, samples, derive_seed(seed, 1, 0), w)
                  .front();
  out.outer = n2 > 2 * n1
                  ? sample_arm_profile(p, pattern, 2 * n1, {n2}, samples, derive_seed(seed, 2, 0), w)
                        .front()
                  : circle_pattern_prob(p, pattern, n2, samples, derive_seed(seed, 2, 0), w);
  out.whole = sample_arm_profile(p, pattern, 0, {n2}, samples, derive_seed(seed, 3, 0), w).front();
  if (out.whole.mean == 0.0) return out;

  const double r = out.inner.mean * out.outer.mean / out.whole.mean;
  out.ratio = r;
  auto rel2 = [](const Estimate& e) {
    return e.mean > 0.0 ? (e.std_error / e.mean) * (e.std_error / e.mean) : 0.0;
  };
  out.std_error = std::abs(r) * std::sqrt(rel2(out.inner) + rel2(out.outer) + rel2(out.whole));
  return out;
}

}  // namespace nearcrit
