#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nearcrit/explorer.hpp"
#include "nearcrit/stats.hpp"

namespace nearcrit {

enum class TriangleStatus : std::uint8_t { NotGood, Good, VeryGood };
std::string to_string(TriangleStatus s);

/// The r, m, b, t' sets attached to a small upward triangle t of side eta, in
/// rescaled coordinates: r = [cx - a eta, cx + a eta] x [y0, y0 + eta/4],
/// m at height y0 + eta/8, b at height y0 + eta/4, t' = t ∩ {y >= y_m}.
struct TriangleGeometry {
  SubTriangle t;
  double a = 0.2;

  double cx() const { return t.corner.x + t.side / 2.0; }
  double y0() const { return t.corner.y; }
  double y_m() const { return t.corner.y + t.side / 8.0; }
  double y_b() const { return t.corner.y + t.side / 4.0; }
  bool in_t(Point p) const;
  bool in_r(Point p) const;
  bool in_t_prime(Point p) const { return in_t(p) && p.y >= y_m(); }
};

struct GoodTriangleReport {
  int triangle_id = -1;
  TriangleStatus status = TriangleStatus::NotGood;
  /// Set when the path enters t∖r through b after hitting m but the discrete
  /// boundary of d does not have the expected shape (no corner a_0, no cell of
  /// the path on m, or the tip not on the boundary of d). Such triangles are
  /// reported as NotGood.
  bool degenerate = false;
  std::size_t sigma_index = kNever;
  std::vector<SiteIndex> d_region;  // ascending
  std::vector<SiteIndex> arc1;      // unexplored cells between a_0 and a_1
  std::vector<SiteIndex> arc2;      // unexplored cells between a_2 and a_0
  std::vector<SiteIndex> arc3;      // path cells between the tip and a_2
  std::vector<SiteIndex> gap;       // unexplored cells between a_1 and a_2
  SiteIndex exit_cell = kNoSite;    // first unexplored cell outside d met after sigma
};

/// Status of one triangle for an explored path. Throws std::invalid_argument
/// when t has fewer than 8 lattice units per side or leaves the unit triangle.
GoodTriangleReport good_triangle_status(const TriangleDomain& domain, const InterfacePath& path,
                                        const SubTriangle& t, double a = 0.2);

/// Monte Carlo estimate of the probability, under critical percolation in d
/// and given the path up to sigma, that the continuation of the interface
/// leaves d through arc1. Each sample recolours d with fresh uniforms.
/// Throws std::invalid_argument unless the report is Good or VeryGood with
/// non-empty arcs.
Estimate f_hat(const TriangleDomain& domain, const InterfacePath& path,
               const GoodTriangleReport& report, std::size_t samples, std::uint64_t seed);

/// Probability estimate that critical percolation on `region` has a black
/// path from a cell adjacent to `from` to a cell adjacent to `to`. A cell of
/// `from` that equals or touches a cell of `to` counts as a crossing.
Estimate crossing_estimate(const TriangleDomain& domain, const std::vector<SiteIndex>& region,
                           const std::vector<SiteIndex>& from, const std::vector<SiteIndex>& to,
                           std::size_t samples, std::uint64_t seed);

/// Black crossing test for one colouring of `region` (1 = black per region
/// entry).
bool has_crossing(const TriangleDomain& domain, const std::vector<SiteIndex>& region,
                  const std::vector<std::uint8_t>& region_black,
                  const std::vector<SiteIndex>& from, const std::vector<SiteIndex>& to);

/// The upward triangles of the eta-grid of the unit triangle in row-major
/// order (bottom row first, left to right). eta must be 1/M for an integer M.
std::vector<SubTriangle> eta_triangulation(double eta);

}  // namespace nearcrit
