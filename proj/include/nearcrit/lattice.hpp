#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace nearcrit {

/// Axial coordinate of a hexagonal cell (a site of the triangular lattice).
/// `r` is the row counted from the bottom; moving +1 in `q` moves one cell east.
struct SiteCoord {
  int q = 0;
  int r = 0;

  friend constexpr SiteCoord operator+(SiteCoord a, SiteCoord b) { return {a.q + b.q, a.r + b.r}; }
  friend constexpr SiteCoord operator-(SiteCoord a, SiteCoord b) { return {a.q - b.q, a.r - b.r}; }
  friend constexpr auto operator<=>(const SiteCoord&, const SiteCoord&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using SiteIndex = std::uint32_t;
inline constexpr SiteIndex kNoSite = 0xFFFFFFFFu;

/// The six neighbour offsets in clockwise order starting from east:
/// E, SE, SW, W, NW, NE. Every routine that talks about "direction k" uses this
/// table, so the cyclic order is the same at every site.
inline constexpr std::array<SiteCoord, 6> kNeighborOffsets = {{
    {1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}}};

constexpr int opposite_direction(int k) { return (k + 3) % 6; }

/// Planar embedding with unit distance between adjacent cell centres.
Point lattice_point(SiteCoord c);

/// Hex graph distance between two cells.
constexpr int hex_distance(SiteCoord a, SiteCoord b) {
  const int dq = a.q - b.q;
  const int dr = a.r - b.r;
  const int ds = dq + dr;
  return ((dq < 0 ? -dq : dq) + (dr < 0 ? -dr : dr) + (ds < 0 ? -ds : ds)) / 2;
}

/// Cells at hex distance exactly `radius` from `center`, in clockwise order.
/// For radius 1 this is the neighbour list starting from the NW neighbour.
std::vector<SiteCoord> hex_ring(SiteCoord center, int radius);

enum class BoundaryClass : std::uint8_t { Interior, BlackBoundary, WhiteBoundary };

/// Which part of the triangle boundary a cell sits on. The bottom row is
/// neither side; the corners of the bottom row count as bottom.
enum class Side : std::uint8_t { None, Bottom, Left, Right };

/// Regions are given in rescaled coordinates: the triangle has corners
/// (-1/2, 0), (1/2, 0), (0, sqrt(3)/2).
struct Disc {
  Point center;
  double radius = 0.0;
};
struct Annulus {
  Point center;
  double r_inner = 0.0;
  double r_outer = 0.0;
};
/// Upward equilateral triangle given by its bottom-left corner and side length.
struct SubTriangle {
  Point corner;
  double side = 0.0;
};
struct Rect {
  double x_lo = 0.0;
  double x_hi = 0.0;
  double y_lo = 0.0;
  double y_hi = 0.0;
};
using Region = std::variant<Disc, Annulus, SubTriangle, Rect>;

/// Throws std::invalid_argument when the region is malformed.
void validate_region(const Region& region);
bool region_contains(const Region& region, Point p);

struct Neighbor {
  SiteCoord coord;
  SiteIndex index = kNoSite;  // kNoSite when the neighbour lies outside the domain
  bool in_domain() const { return index != kNoSite; }
};

/// The triangle domain T_N for even N.
///
/// Rows r = 0..N hold N+2-r cells each, staggered by half a cell per row so the
/// configuration is mirror-symmetric about x = 0. The bottom row, and the first
/// and last cell of every other row, form a one-cell boundary layer: cells with
/// x < 0 are black, cells with x > 0 are white. No boundary centre lies on the
/// axis (the single-cell apex row is omitted; the two top cells meet at the apex
/// vertex). Interior cell centres lie strictly inside the triangle with corners
/// (-N/2, 0), (N/2, 0), (0, sqrt(3) N / 2), and boundary cells straddle its sides.
class TriangleDomain {
 public:
  explicit TriangleDomain(int n);

  int n() const { return n_; }
  std::size_t size() const { return coords_.size(); }
  std::size_t interior_count() const { return interior_count_; }
  int row_length(int r) const { return n_ + 2 - r; }
  int row_count() const { return n_ + 1; }

  bool contains(SiteCoord c) const {
    return c.r >= 0 && c.r <= n_ && c.q >= 0 && c.q < row_length(c.r);
  }
  SiteIndex index_of(SiteCoord c) const {
    return contains(c) ? row_start_[static_cast<std::size_t>(c.r)] + static_cast<SiteIndex>(c.q)
                       : kNoSite;
  }
  /// Throws std::out_of_range when `c` is not in the domain.
  SiteIndex index(SiteCoord c) const;
  SiteCoord coord(SiteIndex i) const { return coords_[i]; }

  BoundaryClass boundary_class(SiteIndex i) const { return classes_[i]; }
  bool is_interior(SiteIndex i) const { return classes_[i] == BoundaryClass::Interior; }
  Side side(SiteIndex i) const;

  /// Lattice-unit centre (bottom row on y = 0, x = 0 on the symmetry axis).
  Point center(SiteCoord c) const;
  Point center(SiteIndex i) const { return center(coords_[i]); }
  /// Centre divided by N: the unit-triangle embedding used by regions.
  Point rescaled_center(SiteIndex i) const;
  Point rescale(Point lattice) const { return {lattice.x / n_, lattice.y / n_}; }

  /// Six entries in clockwise order (kNeighborOffsets); throws std::out_of_range
  /// when `site` is outside the domain.
  std::array<Neighbor, 6> neighbors(SiteCoord site) const;
  SiteIndex neighbor_index(SiteIndex i, int direction) const {
    return index_of(coords_[i] + kNeighborOffsets[static_cast<std::size_t>(direction)]);
  }

  /// Mirror image across the vertical axis.
  SiteCoord mirror(SiteCoord c) const { return {row_length(c.r) - 1 - c.q, c.r}; }

  /// The two bottom cells adjacent to the origin; the interface starts on the
  /// edge between them.
  SiteIndex origin_black() const { return index({n_ / 2, 0}); }
  SiteIndex origin_white() const { return index({n_ / 2 + 1, 0}); }
  /// The two top cells; the interface ends on the edge between them.
  SiteIndex apex_black() const { return index({0, n_}); }
  SiteIndex apex_white() const { return index({1, n_}); }

  /// Dense indices of the sites whose rescaled centre lies in the region,
  /// ascending. Throws std::invalid_argument for malformed regions.
  std::vector<SiteIndex> sites_in_region(const Region& region) const;

  /// Graph distance from a site to the nearest boundary-layer cell.
  int distance_to_boundary(SiteIndex i) const;

 private:
  int n_;
  std::size_t interior_count_ = 0;
  std::vector<SiteIndex> row_start_;
  std::vector<SiteCoord> coords_;
  std::vector<BoundaryClass> classes_;
};

/// Closed-form site count (N+2)(N+3)/2 - 1.
constexpr std::size_t triangle_site_count(int n) {
  return static_cast<std::size_t>((n + 2) * (n + 3) / 2 - 1);
}

}  // namespace nearcrit
