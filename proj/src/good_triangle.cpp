#include "nearcrit/good_triangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nearcrit/philox.hpp"

namespace nearcrit {

std::string to_string(TriangleStatus s) {
  switch (s) {
    case TriangleStatus::NotGood: return "NotGood";
    case TriangleStatus::Good: return "Good";
    case TriangleStatus::VeryGood: return "VeryGood";
  }
  return "?";
}

bool TriangleGeometry::in_t(Point p) const {
  const double h = t.side * std::numbers::sqrt3 / 2.0;
  const double dy = p.y - y0();
  if (dy < 0.0 || dy > h) return false;
  return std::abs(p.x - cx()) <= (t.side / 2.0) * (1.0 - dy / h);
}

bool TriangleGeometry::in_r(Point p) const {
  return std::abs(p.x - cx()) <= a * t.side && p.y >= y0() && p.y <= y_b();
}

namespace {

enum : std::uint8_t { kOther = 0, kInD = 1, kRevealedBlack = 2, kRevealedWhite = 3 };

bool revealed(std::uint8_t m) { return m == kRevealedBlack || m == kRevealedWhite; }

void check_triangle(const TriangleDomain& domain, const SubTriangle& t, double a) {
  validate_region(t);
  if (t.side * domain.n() < 8.0)
    throw std::invalid_argument("triangle must span at least 8 lattice units per side");
  if (!(a > 0.0 && a < 0.5)) throw std::invalid_argument("geometry parameter a must lie in (0, 1/2)");
  const double s3 = std::numbers::sqrt3;
  const double tol = 1e-9;
  const Point c = t.corner;
  const Point corners[3] = {c, {c.x + t.side, c.y}, {c.x + t.side / 2.0, c.y + t.side * s3 / 2.0}};
  for (const Point& p : corners) {
    if (p.y < -tol || p.y > s3 / 2.0 + tol) throw std::invalid_argument("triangle leaves the domain");
    if (std::abs(p.x) > 0.5 * (1.0 - p.y / (s3 / 2.0)) + tol)
      throw std::invalid_argument("triangle leaves the domain");
  }
}

// Classification of a cell next to d, for the boundary walk.
enum class Outside : std::uint8_t { Revealed, Bottom, Side };

}  // namespace

GoodTriangleReport good_triangle_status(const TriangleDomain& domain, const InterfacePath& path,
                                        const SubTriangle& t, double a) {
  check_triangle(domain, t, a);
  const TriangleGeometry g{t, a};
  GoodTriangleReport report;

  // sigma: first vertex in t \ r.
  auto vertex = [&](std::size_t j) { return domain.rescale(step_head(domain, path.steps[j])); };
  std::size_t sigma = kNever;
  bool m_hit = false;
  bool m_hit_before_sigma = false;
  for (std::size_t j = 0; j < path.steps.size(); ++j) {
    const Point v = vertex(j);
    if (!g.in_t(v)) continue;
    if (g.in_r(v)) {
      if (v.y >= g.y_m()) m_hit = true;
      continue;
    }
    sigma = j;
    m_hit_before_sigma = m_hit;
    break;
  }
  if (sigma == kNever || sigma == 0) return report;
  report.sigma_index = sigma;
  const Point prev = vertex(sigma - 1);
  const Point cur = vertex(sigma);
  const bool through_b = g.in_r(prev) && cur.y > g.y_b() && std::abs(cur.x - g.cx()) <= a * t.side;
  if (!through_b || !m_hit_before_sigma) return report;

  // Cells next to the path up to sigma carry their revealed colours.
  std::vector<std::uint8_t> mark(domain.size(), kOther);
  for (std::size_t j = 0; j <= sigma; ++j) {
    mark[path.steps[j].left] = kRevealedBlack;
    mark[path.steps[j].right] = kRevealedWhite;
  }

  // d: unexplored cells of t' connected to the top of t'.
  const double h = t.side * std::numbers::sqrt3 / 2.0;
  std::vector<SiteIndex> candidates;
  SiteIndex top = kNoSite;
  double top_y = -INFINITY;
  for (SiteIndex i = 0; i < domain.size(); ++i) {
    const Point p = domain.rescaled_center(i);
    if (!g.in_t_prime(p) || revealed(mark[i]) || !domain.is_interior(i)) continue;
    candidates.push_back(i);
    if (p.y > top_y) {
      top_y = p.y;
      top = i;
    }
  }
  auto degenerate = [&] {
    report.degenerate = true;
    return report;
  };
  if (top == kNoSite || top_y < t.corner.y + h - 2.0 / domain.n()) return degenerate();
  std::vector<std::uint8_t> cand(domain.size(), 0);
  for (SiteIndex i : candidates) cand[i] = 1;
  std::vector<SiteIndex> stack{top};
  mark[top] = kInD;
  while (!stack.empty()) {
    const SiteIndex i = stack.back();
    stack.pop_back();
    report.d_region.push_back(i);
    for (int k = 0; k < 6; ++k) {
      const SiteIndex j = domain.neighbor_index(i, k);
      if (j == kNoSite || !cand[j] || mark[j] == kInD) continue;
      mark[j] = kInD;
      stack.push_back(j);
    }
  }
  std::sort(report.d_region.begin(), report.d_region.end());

  // Clockwise walk around the outer boundary of d, keeping d on the right.
  // Start below the lowest (then right-most) cell of d.
  SiteIndex start = report.d_region.front();
  for (SiteIndex i : report.d_region) {
    const SiteCoord c = domain.coord(i);
    const SiteCoord s = domain.coord(start);
    if (c.r < s.r || (c.r == s.r && c.q > s.q)) start = i;
  }
  const SiteIndex below = domain.neighbor_index(start, 2);  // SW
  if (below == kNoSite) return degenerate();
  Step walk0{below, start, static_cast<std::uint8_t>(5)};  // start is NE of `below`
  std::vector<SiteIndex> outside;
  {
    SiteIndex left = walk0.left, right = walk0.right;
    int dir = walk0.direction;
    const std::size_t limit = 6 * report.d_region.size() + 12;
    for (std::size_t n = 0;; ++n) {
      if (n > limit) return degenerate();
      if (outside.empty() || outside.back() != left) outside.push_back(left);
      const SiteIndex ahead = domain.neighbor_index(left, (dir + 5) % 6);
      if (ahead == kNoSite) return degenerate();
      if (mark[ahead] == kInD) {
        right = ahead;
        dir = (dir + 5) % 6;
      } else {
        left = ahead;
        dir = (dir + 1) % 6;
      }
      if (left == walk0.left && right == walk0.right && dir == walk0.direction) break;
    }
    if (outside.size() > 1 && outside.front() == outside.back()) outside.pop_back();
  }

  const std::size_t w = outside.size();
  std::vector<Outside> cls(w);
  for (std::size_t k = 0; k < w; ++k) {
    const SiteIndex o = outside[k];
    if (revealed(mark[o])) cls[k] = Outside::Revealed;
    else cls[k] = domain.rescaled_center(o).y < g.y_m() ? Outside::Bottom : Outside::Side;
  }

  // a_0: the Side -> Bottom transition with the right-most bottom cell.
  std::size_t a0 = kNever;
  double a0_x = -INFINITY;
  for (std::size_t k = 0; k < w; ++k) {
    if (cls[(k + w - 1) % w] == Outside::Side && cls[k] == Outside::Bottom) {
      const double x = domain.center(outside[k]).x;
      if (x > a0_x) {
        a0_x = x;
        a0 = k;
      }
    }
  }
  if (a0 == kNever) return degenerate();
  std::rotate(outside.begin(), outside.begin() + static_cast<std::ptrdiff_t>(a0), outside.end());
  std::rotate(cls.begin(), cls.begin() + static_cast<std::ptrdiff_t>(a0), cls.end());

  // Revealed cells meeting the segment m.
  const double half_h = 1.0 / std::numbers::sqrt3;
  auto on_m = [&](SiteIndex i) {
    const Point p = domain.center(i);
    const double ym = g.y_m() * domain.n();
    const double xr = (a * t.side) * domain.n() + 0.5;
    return std::abs(p.y - ym) <= half_h && std::abs(p.x - g.cx() * domain.n()) <= xr;
  };
  std::size_t a1 = kNever, a2 = kNever;
  for (std::size_t k = 0; k < w; ++k) {
    if (cls[k] != Outside::Revealed || !on_m(outside[k])) continue;
    if (a1 == kNever) a1 = k;
    a2 = k;
  }
  const SiteIndex tip_white = path.steps[sigma].right;
  const SiteIndex tip_black = path.steps[sigma].left;
  std::size_t tip = kNever;
  for (std::size_t k = 1; k < w; ++k)
    if (outside[k - 1] == tip_white && outside[k] == tip_black) tip = k;
  if (a1 == kNever || tip == kNever || !(a1 < tip && tip <= a2)) return degenerate();

  std::vector<std::uint8_t> arc(domain.size(), 0);
  for (std::size_t k = 0; k < w; ++k) {
    const SiteIndex o = outside[k];
    if (arc[o]) continue;
    if (k < a1) {
      if (cls[k] != Outside::Revealed) arc[o] = 1;
    } else if (k > a2) {
      if (cls[k] != Outside::Revealed) arc[o] = 2;
    } else if (cls[k] != Outside::Revealed) {
      arc[o] = 4;
    }
    if (k >= tip && k <= a2 && arc[o] == 0) arc[o] = 3;
  }
  for (SiteIndex i = 0; i < domain.size(); ++i) {
    switch (arc[i]) {
      case 1: report.arc1.push_back(i); break;
      case 2: report.arc2.push_back(i); break;
      case 3: report.arc3.push_back(i); break;
      case 4: report.gap.push_back(i); break;
      default: break;
    }
  }
  if (report.arc1.empty() || report.arc2.empty() || report.arc3.empty()) return degenerate();

  // The actual continuation of the path decides "very good": follow the
  // cells looked at after sigma until one is unexplored and outside d.
  report.status = TriangleStatus::Good;
  for (std::size_t j = sigma; j + 1 < path.steps.size(); ++j) {
    const Step& s = path.steps[j];
    const SiteIndex ahead = domain.neighbor_index(s.left, (s.direction + 5) % 6);
    if (mark[ahead] == kInD || revealed(mark[ahead])) continue;
    report.exit_cell = ahead;
    if (arc[ahead] == 1) report.status = TriangleStatus::VeryGood;
    break;
  }
  return report;
}

Estimate f_hat(const TriangleDomain& domain, const InterfacePath& path,
               const GoodTriangleReport& report, std::size_t samples, std::uint64_t seed) {
  if (report.status == TriangleStatus::NotGood || report.sigma_index == kNever)
    throw std::invalid_argument("f_hat needs a good triangle");
  if (report.d_region.empty() || report.arc1.empty() || report.arc2.empty() || report.arc3.empty())
    throw std::invalid_argument("f_hat needs a region d with non-empty boundary arcs");
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");

  std::vector<std::uint8_t> mark(domain.size(), kOther);
  for (std::size_t j = 0; j <= report.sigma_index; ++j) {
    mark[path.steps[j].left] = kRevealedBlack;
    mark[path.steps[j].right] = kRevealedWhite;
  }
  std::vector<std::uint8_t> in_arc1(domain.size(), 0);
  for (SiteIndex i : report.arc1) in_arc1[i] = 1;
  for (SiteIndex i : report.d_region) mark[i] = kInD;

  const Step from = path.steps[report.sigma_index];
  const std::size_t max_steps = 3 * report.d_region.size() + 16;
  std::vector<double> values(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    auto black = [&](SiteIndex i) {
      if (mark[i] == kRevealedBlack) return true;
      if (mark[i] == kRevealedWhite) return false;
      return counter_uniform(seed, StreamTag::FHat, s, i) < 0.5;
    };
    auto stop = [&](SiteIndex i) { return mark[i] == kOther; };
    const SiteIndex exit = continue_exploration(domain, from, black, stop, max_steps);
    values[s] = exit != kNoSite && in_arc1[exit] ? 1.0 : 0.0;
  }
  return estimate_from(values);
}

bool has_crossing(const TriangleDomain& domain, const std::vector<SiteIndex>& region,
                  const std::vector<std::uint8_t>& region_black,
                  const std::vector<SiteIndex>& from, const std::vector<SiteIndex>& to) {
  if (region_black.size() != region.size())
    throw std::invalid_argument("one colour per region cell is required");
  std::vector<std::uint8_t> role(domain.size(), 0);  // 1 from, 2 to, 4 region
  std::vector<std::uint8_t> color(domain.size(), 0);
  for (SiteIndex i : from) role[i] |= 1;
  for (SiteIndex i : to) role[i] |= 2;
  for (std::size_t k = 0; k < region.size(); ++k) {
    role[region[k]] |= 4;
    color[region[k]] = region_black[k];
  }
  for (SiteIndex i : from) {
    if (role[i] & 2) return true;
    for (int k = 0; k < 6; ++k) {
      const SiteIndex j = domain.neighbor_index(i, k);
      if (j != kNoSite && (role[j] & 2)) return true;
    }
  }
  std::vector<std::uint8_t> seen(domain.size(), 0);
  std::vector<SiteIndex> stack;
  for (SiteIndex i : from)
    for (int k = 0; k < 6; ++k) {
      const SiteIndex j = domain.neighbor_index(i, k);
      if (j != kNoSite && (role[j] & 4) && color[j] && !seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  while (!stack.empty()) {
    const SiteIndex i = stack.back();
    stack.pop_back();
    for (int k = 0; k < 6; ++k) {
      const SiteIndex j = domain.neighbor_index(i, k);
      if (j == kNoSite) continue;
      if (role[j] & 2) return true;
      if ((role[j] & 4) && color[j] && !seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  return false;
}

Estimate crossing_estimate(const TriangleDomain& domain, const std::vector<SiteIndex>& region,
                           const std::vector<SiteIndex>& from, const std::vector<SiteIndex>& to,
                           std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  if (from.empty() || to.empty()) throw std::invalid_argument("crossing needs non-empty arcs");
  std::vector<double> values(samples);
  std::vector<std::uint8_t> colors(region.size());
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t k = 0; k < region.size(); ++k)
      colors[k] = counter_uniform(seed, StreamTag::FHat, s, region[k]) < 0.5 ? 1 : 0;
    values[s] = has_crossing(domain, region, colors, from, to) ? 1.0 : 0.0;
  }
  return estimate_from(values);
}

std::vector<SubTriangle> eta_triangulation(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
  const long m = std::lround(1.0 / eta);
  if (m < 1 || std::abs(static_cast<double>(m) * eta - 1.0) > 1e-9)
    throw std::invalid_argument("eta must be 1/M for an integer M");
  const double h = eta * std::numbers::sqrt3 / 2.0;
  std::vector<SubTriangle> out;
  for (long row = 0; row < m; ++row)
    for (long i = 0; i + row < m; ++i)
      out.push_back({{-0.5 + row * eta / 2.0 + i * eta, row * h}, eta});
  return out;
}

}  // namespace nearcrit
