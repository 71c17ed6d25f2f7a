#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nearcrit/sampling.hpp"

using namespace nearcrit;

TEST_CASE("coupling field determinism and independence") {
  const TriangleDomain d16(16);
  const CouplingField a(d16, 99, 0), b(d16, 99, 0), c(d16, 99, 1);
  CHECK(a.values() == b.values());
  const auto va = a.values(), vc = c.values();
  std::size_t differ = 0;
  for (std::size_t i = 0; i < va.size(); ++i) differ += va[i] != vc[i];
  CHECK(differ > 0.99 * va.size());

  const TriangleDomain d64(64);
  const auto v = CouplingField(d64, 5, 0).values();
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= v.size();
  CHECK(mean >= 0.45);
  CHECK(mean <= 0.55);
}

TEST_CASE("uniforms pass a Kolmogorov-Smirnov check") {
  const TriangleDomain d(128);
  auto v = CouplingField(d, 17, 3).values();
  std::sort(v.begin(), v.end());
  double ks = 0.0;
  const double n = static_cast<double>(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    ks = std::max({ks, (i + 1) / n - v[i], v[i] - i / n});
  // Critical value at the 0.1% level.
  CHECK(ks * std::sqrt(n) < 1.95);
}

TEST_CASE("colourings") {
  const TriangleDomain d(32);
  const CouplingField f(d, 3, 7);
  const Coloring white = coloring_at(f, 0.0), black = coloring_at(f, 1.0);
  const Coloring lo = coloring_at(f, 0.5), hi = coloring_at(f, 0.6);
  for (SiteIndex i = 0; i < d.size(); ++i) {
    if (!d.is_interior(i)) {
      CHECK(lo.black(i) == (d.boundary_class(i) == BoundaryClass::BlackBoundary));
      continue;
    }
    CHECK_FALSE(white.black(i));
    CHECK(black.black(i));
    if (lo.black(i)) CHECK(hi.black(i));
  }
  const Coloring lazy = Coloring::lazy(f, 0.5);
  CHECK(lazy.evaluated_interior() == 0);
  for (SiteIndex i = 0; i < d.size(); ++i) CHECK(lazy.black(i) == lo.black(i));
  CHECK(lazy.evaluated_interior() == d.interior_count());
  CHECK_THROWS_AS(coloring_at(f, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(coloring_at(f, -0.1), std::invalid_argument);
}

TEST_CASE("black fraction concentrates on p") {
  const TriangleDomain d(64);
  const CouplingField f(d, 11, 0);
  for (double p : {0.2, 0.5, 0.8}) {
    const Coloring c = coloring_at(f, p);
    double k = 0;
    for (SiteIndex i = 0; i < d.size(); ++i)
      if (d.is_interior(i)) k += c.black(i);
    const double n = static_cast<double>(d.interior_count());
    CHECK(std::abs(k - n * p) < 4.0 * std::sqrt(n * p * (1 - p)));
  }
}

TEST_CASE("flip schedules") {
  const TriangleDomain d(64);
  const CouplingField f(d, 1, 2);
  CHECK(flip_schedule(f, 0.5, 0.5).flips.empty());
  const FlipSchedule all = flip_schedule(f, 0.0, 1.0);
  CHECK(all.flips.size() == d.interior_count());
  CHECK(std::is_sorted(all.flips.begin(), all.flips.end(),
                       [](const Flip& a, const Flip& b) { return a.threshold < b.threshold; }));
  const FlipSchedule part = flip_schedule(f, 0.5, 0.6);
  const double n = static_cast<double>(d.interior_count());
  CHECK(std::abs(part.flips.size() - 0.1 * n) < 4.0 * std::sqrt(n * 0.1 * 0.9));
  for (const Flip& fl : part.flips) {
    CHECK(fl.threshold >= 0.5);
    CHECK(fl.threshold < 0.6);
    CHECK(fl.threshold == f.u(fl.site));
    CHECK(d.is_interior(fl.site));
  }
  CHECK_THROWS_AS(flip_schedule(f, 0.6, 0.5), std::invalid_argument);
}
