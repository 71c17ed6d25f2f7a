#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nearcrit/explorer.hpp"

namespace nearcrit {

namespace {

constexpr std::uint8_t kFree = 0;
constexpr std::uint8_t kLeftCell = 1;
constexpr std::uint8_t kRightCell = 2;

void validate_interior_disc(const TriangleDomain& domain, const Disc& disc,
                            const std::vector<SiteIndex>& cells) {
  validate_region(disc);
  const double s3 = std::numbers::sqrt3;
  const Point c = disc.center;
  const double d_bottom = c.y;
  const double d_right = (s3 / 2.0 - c.y - s3 * c.x) / 2.0;
  const double d_left = (s3 / 2.0 - c.y + s3 * c.x) / 2.0;
  if (!(disc.radius > 0.0) || d_bottom <= disc.radius || d_right <= disc.radius ||
      d_left <= disc.radius)
    throw std::invalid_argument("disc must lie strictly inside the unit triangle");
  for (SiteIndex i : cells)
    if (!domain.is_interior(i)) throw std::invalid_argument("disc touches the boundary layer");
}

}  // namespace

std::string to_string(RegionSide s) {
  switch (s) {
    case RegionSide::Left: return "Left";
    case RegionSide::Right: return "Right";
    case RegionSide::Hit: return "Hit";
  }
  return "?";
}

RegionSide region_side(const TriangleDomain& domain, const InterfacePath& path, const Disc& disc) {
  std::vector<SiteIndex> cells = domain.sites_in_region(disc);
  validate_interior_disc(domain, disc, cells);

  std::vector<std::uint8_t> mark(domain.size(), kFree);
  for (const Step& s : path.steps) {
    mark[s.left] = kLeftCell;
    mark[s.right] = kRightCell;
  }
  // Hit: some segment of the rescaled polyline comes closer than the radius.
  const double r2 = disc.radius * disc.radius;
  auto dist2 = [&](Point a, Point b) {
    a = domain.rescale(a);
    b = domain.rescale(b);
    const double dx = b.x - a.x, dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((disc.center.x - a.x) * dx + (disc.center.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = a.x + t * dx - disc.center.x, ey = a.y + t * dy - disc.center.y;
    return ex * ex + ey * ey;
  };
  if (!path.steps.empty()) {
    Point prev = step_tail(domain, path.steps.front());
    for (const Step& s : path.steps) {
      const Point head = step_head(domain, s);
      if (dist2(prev, head) < r2) return RegionSide::Hit;
      prev = head;
    }
  }
  for (SiteIndex i : cells) {
    if (mark[i] == kLeftCell) return RegionSide::Left;
    if (mark[i] == kRightCell) return RegionSide::Right;
  }

  if (cells.empty()) {
    // No centre inside the disc: classify the cell nearest to its centre.
    const Point c{disc.center.x * domain.n(), disc.center.y * domain.n()};
    SiteIndex best = 0;
    double best_d = INFINITY;
    for (SiteIndex i = 0; i < domain.size(); ++i) {
      const Point p = domain.center(i);
      const double d = (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (mark[best] == kLeftCell) return RegionSide::Left;
    if (mark[best] == kRightCell) return RegionSide::Right;
    cells.push_back(best);
  }

  // Flood fill through cells not adjacent to the path; the first adjacent
  // path cell found tells the side (left cells are black, right cells white).
  std::vector<std::uint8_t> visited(domain.size(), 0);
  std::vector<SiteIndex> stack(cells.begin(), cells.end());
  for (SiteIndex i : cells) visited[i] = 1;
  while (!stack.empty()) {
    const SiteIndex i = stack.back();
    stack.pop_back();
    for (int k = 0; k < 6; ++k) {
      const SiteIndex j = domain.neighbor_index(i, k);
      if (j == kNoSite || visited[j]) continue;
      if (mark[j] == kLeftCell) return RegionSide::Left;
      if (mark[j] == kRightCell) return RegionSide::Right;
      visited[j] = 1;
      stack.push_back(j);
    }
  }
  // Unreachable for a terminated path: every face is bounded by path cells.
  throw std::logic_error("region is not adjacent to the interface");
}

std::vector<PivotalJump> pivotal_sweep(const CouplingField& field, double p_hi, const Disc& disc) {
  check_probability(p_hi, "p_hi");
  if (p_hi < 0.5) throw std::invalid_argument("pivotal sweep needs p_hi >= 1/2");
  const TriangleDomain& domain = field.domain();
  const FlipSchedule schedule = flip_schedule(field, 0.5, p_hi);

  std::vector<std::uint8_t> black = coloring_at(field, 0.5).to_dense_flags();
  InterfacePath path = explore(domain, Coloring::dense(domain, black));
  RegionSide side = region_side(domain, path, disc);

  std::vector<std::uint8_t> on_path(domain.size(), 0);
  auto mark_path = [&] {
    std::fill(on_path.begin(), on_path.end(), 0);
    for (const Step& s : path.steps) on_path[s.left] = on_path[s.right] = 1;
  };
  mark_path();

  std::vector<PivotalJump> jumps;
  for (const Flip& f : schedule.flips) {
    black[f.site] = 1;
    // The path only depends on the cells adjacent to it.
    if (!on_path[f.site]) continue;
    path = explore(domain, Coloring::dense(domain, black));
    mark_path();
    const RegionSide next = region_side(domain, path, disc);
    if (side != RegionSide::Hit && next != RegionSide::Hit && next != side)
      jumps.push_back({f.threshold, f.site, side, next});
    side = next;
  }
  return jumps;
}

}  // namespace nearcrit
