#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "nearcrit/lattice.hpp"

using namespace nearcrit;

TEST_CASE("T_2 matches the hand count") {
  // Rows of 4, 3 and 2 cells; only (1,1) is interior.
  const TriangleDomain d(2);
  CHECK(d.size() == 9);
  CHECK(d.interior_count() == 1);
  CHECK(d.is_interior(d.index({1, 1})));
  int black = 0, white = 0;
  for (SiteIndex i = 0; i < d.size(); ++i) {
    black += d.boundary_class(i) == BoundaryClass::BlackBoundary;
    white += d.boundary_class(i) == BoundaryClass::WhiteBoundary;
  }
  CHECK(black == 4);
  CHECK(white == 4);
}

TEST_CASE("site counts follow the closed form") {
  for (int n : {2, 4, 6, 16, 64}) {
    const TriangleDomain d(n);
    CHECK(d.size() == triangle_site_count(n));
    CHECK(d.interior_count() == static_cast<std::size_t>(n * (n - 1) / 2));
    std::size_t black = 0, white = 0;
    for (SiteIndex i = 0; i < d.size(); ++i) {
      black += d.boundary_class(i) == BoundaryClass::BlackBoundary;
      white += d.boundary_class(i) == BoundaryClass::WhiteBoundary;
      CHECK(d.index(d.coord(i)) == i);
    }
    CHECK(black == white);
  }
}

TEST_CASE("odd or tiny N is rejected") {
  CHECK_THROWS_AS(TriangleDomain(3), std::invalid_argument);
  CHECK_THROWS_AS(TriangleDomain(0), std::invalid_argument);
  CHECK_THROWS_AS(TriangleDomain(-2), std::invalid_argument);
}

TEST_CASE("boundary colouring is antisymmetric under reflection") {
  const TriangleDomain d(8);
  for (SiteIndex i = 0; i < d.size(); ++i) {
    const SiteIndex j = d.index(d.mirror(d.coord(i)));
    const BoundaryClass a = d.boundary_class(i), b = d.boundary_class(j);
    if (a == BoundaryClass::Interior) CHECK(b == BoundaryClass::Interior);
    else CHECK(a != b);
    CHECK(d.center(i).x == doctest::Approx(-d.center(j).x));
  }
}

TEST_CASE("neighbours") {
  const TriangleDomain d(6);
  SUBCASE("interior sites have six in-domain neighbours") {
    for (SiteIndex i = 0; i < d.size(); ++i) {
      if (!d.is_interior(i)) continue;
      const auto nb = d.neighbors(d.coord(i));
      CHECK(std::all_of(nb.begin(), nb.end(), [](const Neighbor& n) { return n.in_domain(); }));
    }
  }
  SUBCASE("adjacency is symmetric") {
    for (SiteIndex i = 0; i < d.size(); ++i)
      for (const auto& nb : d.neighbors(d.coord(i))) {
        if (!nb.in_domain()) continue;
        const auto back = d.neighbors(nb.coord);
        CHECK(std::any_of(back.begin(), back.end(), [&](const Neighbor& n) { return n.index == i; }));
      }
  }
  SUBCASE("clockwise order by angle") {
    double prev = 0.0;
    for (int k = 0; k < 6; ++k) {
      const Point p = lattice_point(kNeighborOffsets[k]);
      CHECK(std::hypot(p.x, p.y) == doctest::Approx(1.0));
      double angle = std::atan2(p.y, p.x);
      if (k > 0) {
        double turn = prev - angle;
        if (turn < 0) turn += 2 * M_PI;
        CHECK(turn == doctest::Approx(M_PI / 3));
      }
      prev = angle;
    }
  }
  SUBCASE("out of domain query throws") { CHECK_THROWS_AS(d.neighbors({-1, 0}), std::out_of_range); }
}

TEST_CASE("corners of T_2 have at most three neighbours") {
  const TriangleDomain d(2);
  auto count = [&](SiteCoord c) {
    const auto nb = d.neighbors(c);
    return std::count_if(nb.begin(), nb.end(), [](const Neighbor& n) { return n.in_domain(); });
  };
  CHECK(count({0, 0}) == 2);
  CHECK(count({3, 0}) == 2);
  CHECK(count({0, 2}) == 3);
  CHECK(count({1, 2}) == 3);
}

TEST_CASE("hex rings") {
  CHECK(hex_ring({0, 0}, 0).size() == 1);
  for (int r = 1; r <= 5; ++r) {
    const auto ring = hex_ring({2, -1}, r);
    CHECK(ring.size() == static_cast<std::size_t>(6 * r));
    std::set<SiteCoord> unique(ring.begin(), ring.end());
    CHECK(unique.size() == ring.size());
    for (std::size_t i = 0; i < ring.size(); ++i) {
      CHECK(hex_distance(ring[i], {2, -1}) == r);
      CHECK(hex_distance(ring[i], ring[(i + 1) % ring.size()]) == 1);
    }
  }
  // Radius one: the neighbours starting from NW, clockwise.
  const auto one = hex_ring({0, 0}, 1);
  CHECK(one[0] == kNeighborOffsets[4]);
  CHECK(one[1] == kNeighborOffsets[5]);
  CHECK(one[2] == kNeighborOffsets[0]);
}

TEST_CASE("regions") {
  const TriangleDomain d(16);
  CHECK(d.sites_in_region(Disc{{0, 0}, 0.0}).empty());
  CHECK(d.sites_in_region(Disc{{0, 0.4}, 5.0}).size() == d.size());
  const Point c{0.05, 0.3};
  const auto big = d.sites_in_region(Disc{c, 0.25});
  auto small = d.sites_in_region(Disc{c, 0.1});
  const auto ring = d.sites_in_region(Annulus{c, 0.1, 0.25});
  std::set<SiteIndex> u(small.begin(), small.end());
  u.insert(ring.begin(), ring.end());
  for (SiteIndex i : big) CHECK(u.count(i) == 1);
  CHECK_THROWS_AS(d.sites_in_region(Disc{c, -1.0}), std::invalid_argument);
  CHECK_THROWS_AS(d.sites_in_region(Annulus{c, 0.3, 0.2}), std::invalid_argument);
}

TEST_CASE("distance to boundary") {
  const TriangleDomain d(8);
  for (SiteIndex i = 0; i < d.size(); ++i) {
    CHECK((d.distance_to_boundary(i) == 0) == !d.is_interior(i));
    int best = 1 << 20;
    for (SiteIndex j = 0; j < d.size(); ++j)
      if (!d.is_interior(j)) best = std::min(best, hex_distance(d.coord(i), d.coord(j)));
    CHECK(d.distance_to_boundary(i) == best);
  }
}
