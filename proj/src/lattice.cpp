#include "nearcrit/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nearcrit {

namespace {

constexpr double kRowHeight = std::numbers::sqrt3 / 2.0;

struct RegionValidator {
  void operator()(const Disc& d) const {
    if (!(d.radius >= 0.0) || !std::isfinite(d.radius))
      throw std::invalid_argument("disc radius must be finite and non-negative");
  }
  void operator()(const Annulus& a) const {
    if (!(a.r_inner >= 0.0) || !(a.r_inner < a.r_outer) || !std::isfinite(a.r_outer))
      throw std::invalid_argument("annulus needs 0 <= r_inner < r_outer");
  }
  void operator()(const SubTriangle& t) const {
    if (!(t.side > 0.0) || !std::isfinite(t.side))
      throw std::invalid_argument("sub-triangle side must be positive");
  }
  void operator()(const Rect& r) const {
    if (!(r.x_lo <= r.x_hi) || !(r.y_lo <= r.y_hi))
      throw std::invalid_argument("rectangle bounds are inverted");
  }
};

double dist2(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

}  // namespace

Point lattice_point(SiteCoord c) {
  return {c.q + 0.5 * c.r, kRowHeight * c.r};
}

std::vector<SiteCoord> hex_ring(SiteCoord center, int radius) {
  if (radius < 0) throw std::invalid_argument("ring radius must be non-negative");
  if (radius == 0) return {center};
  std::vector<SiteCoord> ring;
  ring.reserve(static_cast<std::size_t>(6 * radius));
  // Start at the NW corner and walk E, SE, SW, W, NW, NE: clockwise.
  SiteCoord cur{center.q - radius, center.r + radius};
  for (int side = 0; side < 6; ++side) {
    for (int step = 0; step < radius; ++step) {
      ring.push_back(cur);
      cur = cur + kNeighborOffsets[static_cast<std::size_t>(side)];
    }
  }
  return ring;
}

void validate_region(const Region& region) { std::visit(RegionValidator{}, region); }

bool region_contains(const Region& region, Point p) {
  return std::visit(
      [p](const auto& g) -> bool {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, Disc>) {
          return dist2(p, g.center) < g.radius * g.radius;
        } else if constexpr (std::is_same_v<T, Annulus>) {
          const double d2 = dist2(p, g.center);
          return d2 >= g.r_inner * g.r_inner && d2 < g.r_outer * g.r_outer;
        } else if constexpr (std::is_same_v<T, SubTriangle>) {
          const double s3 = std::numbers::sqrt3;
          const double dx = p.x - g.corner.x;
          const double dy = p.y - g.corner.y;
          return dy >= 0.0 && dy <= s3 * dx && dy <= s3 * (g.side - dx);
        } else {
          return p.x >= g.x_lo && p.x <= g.x_hi && p.y >= g.y_lo && p.y <= g.y_hi;
        }
      },
      region);
}

TriangleDomain::TriangleDomain(int n) : n_(n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("triangle side N must be even and >= 2, got " + std::to_string(n));
  row_start_.resize(static_cast<std::size_t>(n + 1));
  coords_.reserve(triangle_site_count(n));
  classes_.reserve(triangle_site_count(n));
  for (int r = 0; r <= n; ++r) {
    row_start_[static_cast<std::size_t>(r)] = static_cast<SiteIndex>(coords_.size());
    const int len = row_length(r);
    for (int q = 0; q < len; ++q) {
      coords_.push_back({q, r});
      BoundaryClass cls = BoundaryClass::Interior;
      if (r == 0) {
        cls = 2 * q < len ? BoundaryClass::BlackBoundary : BoundaryClass::WhiteBoundary;
      } else if (q == 0) {
        cls = BoundaryClass::BlackBoundary;
      } else if (q == len - 1) {
        cls = BoundaryClass::WhiteBoundary;
      }
      if (cls == BoundaryClass::Interior) ++interior_count_;
      classes_.push_back(cls);
    }
  }
}

SiteIndex TriangleDomain::index(SiteCoord c) const {
  const SiteIndex i = index_of(c);
  if (i == kNoSite)
    throw std::out_of_range("site (" + std::to_string(c.q) + "," + std::to_string(c.r) +
                            ") is outside T_" + std::to_string(n_));
  return i;
}

Side TriangleDomain::side(SiteIndex i) const {
  const SiteCoord c = coords_[i];
  if (c.r == 0) return Side::Bottom;
  if (c.q == 0) return Side::Left;
  if (c.q == row_length(c.r) - 1) return Side::Right;
  return Side::None;
}

Point TriangleDomain::center(SiteCoord c) const {
  return {c.q + 0.5 * c.r - 0.5 * (n_ + 1), kRowHeight * c.r};
}

Point TriangleDomain::rescaled_center(SiteIndex i) const { return rescale(center(coords_[i])); }

std::array<Neighbor, 6> TriangleDomain::neighbors(SiteCoord site) const {
  if (!contains(site)) index(site);  // throws
  std::array<Neighbor, 6> out{};
  for (std::size_t k = 0; k < 6; ++k) {
    const SiteCoord c = site + kNeighborOffsets[k];
    out[k] = {c, index_of(c)};
  }
  return out;
}

std::vector<SiteIndex> TriangleDomain::sites_in_region(const Region& region) const {
  validate_region(region);
  std::vector<SiteIndex> out;
  for (SiteIndex i = 0; i < coords_.size(); ++i)
    if (region_contains(region, rescaled_center(i))) out.push_back(i);
  return out;
}

int TriangleDomain::distance_to_boundary(SiteIndex i) const {
  const SiteCoord c = coords_[i];
  // Distance to the bottom row, to the left column q = 0, and to the right
  // diagonal q = row_length - 1.
  int best = c.r;
  best = std::min(best, c.q);
  best = std::min(best, row_length(c.r) - 1 - c.q);
  return best;
}

}  // namespace nearcrit
