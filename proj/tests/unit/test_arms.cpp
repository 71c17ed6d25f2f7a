#include <doctest.h>

#include <cmath>
#include <map>

#include "nearcrit/arms.hpp"
#include "nearcrit/philox.hpp"
#include "oracles.hpp"

using namespace nearcrit;

namespace {

HexPatch filled(int radius, bool black) {
  HexPatch p(radius);
  for (int q = -radius; q <= radius; ++q)
    for (int r = -radius; r <= radius; ++r) p.set({q, r}, black);
  return p;
}

const std::vector<ArmPattern> kPatterns{ArmPattern::one(), ArmPattern::two(), ArmPattern::four()};

}  // namespace

TEST_CASE("patterns") {
  CHECK(parse_pattern("1").size() == 1);
  CHECK(parse_pattern("bw").size() == 2);
  CHECK(parse_pattern("BWBW").size() == 4);
  CHECK(parse_pattern("4").colors == ArmPattern::four().colors);
  CHECK_THROWS_AS(parse_pattern("3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern("BB"), std::invalid_argument);
  CHECK_THROWS_AS(validate_query({ArmPattern::one(), 2, 2, {0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_query({ArmPattern::one(), -1, 2, {0, 0}}), std::invalid_argument);
}

TEST_CASE("monochromatic patches") {
  const HexPatch black = filled(6, true);
  for (int n : {1, 3, 6}) {
    CHECK(detect_arms(black, {ArmPattern::one(), 0, n, {0, 0}}));
    CHECK_FALSE(detect_arms(black, {ArmPattern::two(), 0, n, {0, 0}}));
    CHECK_FALSE(detect_arms(black, {ArmPattern::four(), 0, n, {0, 0}}));
  }
  CHECK_THROWS_AS(detect_arms(black, {ArmPattern::one(), 0, 7, {0, 0}}), std::invalid_argument);
}

TEST_CASE("alternating neighbours carry four arms of length one") {
  HexPatch p = filled(1, false);
  const auto ring = hex_ring({0, 0}, 1);
  for (std::size_t i = 0; i < ring.size(); ++i) p.set(ring[i], i % 2 == 0);
  CHECK(detect_arms(p, {ArmPattern::four(), 0, 1, {0, 0}}));
  CHECK(detect_arms(p, {ArmPattern::two(), 0, 1, {0, 0}}));
}

TEST_CASE("arm detection matches exhaustive path search") {
  SUBCASE("every colouring of the radius-1 ball") {
    const auto ring = hex_ring({0, 0}, 1);
    for (std::uint32_t mask = 0; mask < 64; ++mask) {
      HexPatch p(1);
      std::map<SiteCoord, bool> col;
      for (std::size_t i = 0; i < 6; ++i) p.set(ring[i], col[ring[i]] = (mask >> i) & 1u);
      oracle::ArmSearch search(0, 1, [&](SiteCoord c) { return col.at(c); });
      for (const ArmPattern& pat : kPatterns)
        CHECK(detect_arms(p, {pat, 0, 1, {0, 0}}) == search.event(pat.colors));
    }
  }
  SUBCASE("random colourings of the radius-2 and radius-3 balls") {
    std::size_t mismatches = 0;
    for (int radius : {2, 3})
      for (int inner : {0, 1})
        for (std::uint64_t s = 0; s < 500; ++s) {
          const HexPatch p = HexPatch::sample(radius, 0.5, 99, s + 1000 * radius);
          oracle::ArmSearch search(inner, radius, [&](SiteCoord c) { return p.black(c); });
          for (const ArmPattern& pat : kPatterns)
            mismatches += detect_arms(p, {pat, inner, radius, {0, 0}}) != search.event(pat.colors);
        }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("patches of different radii agree where they overlap") {
  const HexPatch small = HexPatch::sample(4, 0.5, 3, 9);
  const HexPatch large = HexPatch::sample(10, 0.5, 3, 9);
  for (int q = -4; q <= 4; ++q)
    for (int r = -4; r <= 4; ++r) CHECK(small.black({q, r}) == large.black({q, r}));
}

TEST_CASE("arms inside the triangle domain") {
  const TriangleDomain d(32);
  std::vector<std::uint8_t> black(d.size(), 1);
  const SiteCoord centre{10, 10};
  const int room = d.distance_to_boundary(d.index(centre));
  CHECK(detect_arms_in_domain(d, black, {ArmPattern::one(), 0, room, centre}));
  CHECK_FALSE(detect_arms_in_domain(d, black, {ArmPattern::two(), 0, room, centre}));
  // Arms cannot leave the domain.
  CHECK_FALSE(detect_arms_in_domain(d, black, {ArmPattern::one(), 0, 40, centre}));
}

TEST_CASE("arm probability estimates") {
  CHECK(sample_arm_prob(1.0, {ArmPattern::one(), 0, 5, {0, 0}}, 200, 1).mean == 1.0);
  const Estimate e = sample_arm_prob(0.5, {ArmPattern::one(), 0, 1, {0, 0}}, 20000, 2);
  CHECK(std::abs(e.mean - (1.0 - 1.0 / 64.0)) <= 3 * e.std_error);
  const auto prof = sample_arm_profile(0.5, ArmPattern::one(), 0, {8, 16}, 4000, 3);
  CHECK(prof[0].mean >= prof[1].mean - 3 * prof[1].std_error);
  CHECK(prof[0].mean >= prof[1].mean);
}

TEST_CASE("profile estimates match direct estimates") {
  const auto prof = sample_arm_profile(0.5, ArmPattern::two(), 0, {2, 4, 8}, 4000, 11);
  for (std::size_t i = 0; i < 3; ++i) {
    const int n = 2 << i;
    const Estimate direct = sample_arm_prob(0.5, {ArmPattern::two(), 0, n, {0, 0}}, 4000, 12);
    CHECK(separation_sigmas(direct, prof[i]) <= 3.5);
  }
}

TEST_CASE("quasi-multiplicativity") {
  const QuasiMultRatio one = quasi_mult_ratio(1.0, 4, 8, ArmPattern::one(), 100, 1);
  REQUIRE(one.ratio);
  CHECK(*one.ratio == 1.0);

  const QuasiMultRatio a = quasi_mult_ratio(0.5, 4, 8, ArmPattern::two(), 8000, 2);
  REQUIRE(a.ratio);
  CHECK(*a.ratio >= 0.2);
  CHECK(*a.ratio <= 5.0);
  const QuasiMultRatio b = quasi_mult_ratio(0.5, 16, 32, ArmPattern::two(), 8000, 3);
  const QuasiMultRatio c = quasi_mult_ratio(0.5, 40, 80, ArmPattern::two(), 8000, 4);
  REQUIRE(b.ratio);
  REQUIRE(c.ratio);
  CHECK(std::abs(*b.ratio - *c.ratio) <= 3 * std::hypot(b.std_error, c.std_error));

  CHECK_THROWS_AS(quasi_mult_ratio(0.5, 4, 6, ArmPattern::two(), 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(quasi_mult_ratio(0.5, 1, 6, ArmPattern::two(), 10, 1), std::invalid_argument);
}
