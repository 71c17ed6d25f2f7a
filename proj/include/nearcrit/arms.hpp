#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nearcrit/lattice.hpp"
#include "nearcrit/stats.hpp"

namespace nearcrit {

enum class ArmColor : std::uint8_t { White = 0, Black = 1 };

/// Cyclic colour sequence of an arm event: [B], [B,W] or [B,W,B,W].
struct ArmPattern {
  std::vector<ArmColor> colors;

  static ArmPattern one() { return {{ArmColor::Black}}; }
  static ArmPattern two() { return {{ArmColor::Black, ArmColor::White}}; }
  static ArmPattern four() {
    return {{ArmColor::Black, ArmColor::White, ArmColor::Black, ArmColor::White}};
  }
  std::size_t size() const { return colors.size(); }
};

/// Throws std::invalid_argument unless the pattern is one of the three above
/// (up to cyclic rotation).
void validate_pattern(const ArmPattern& pattern);

/// Parses "1", "2", "4", "B", "BW", "BWBW" (case-insensitive).
ArmPattern parse_pattern(const std::string& text);

/// Arms of the pattern from the inner circle (the six neighbours of `center`
/// when n_inner = 0) to the circle of radius n_outer, each staying in the
/// closed annulus n_inner <= d <= n_outer (d >= 1 when n_inner = 0). Radii are
/// hex graph distances.
struct ArmQuery {
  ArmPattern pattern = ArmPattern::one();
  int n_inner = 0;
  int n_outer = 1;
  SiteCoord center{0, 0};
};

/// Throws std::invalid_argument for a malformed query (bad pattern, negative
/// radii, n_outer <= n_inner).
void validate_query(const ArmQuery& query);

/// A free-boundary rhombus of side 2*radius+1 around the origin cell; holds
/// the ball of that radius. Default colour white.
class HexPatch {
 public:
  explicit HexPatch(int radius);

  /// Fresh sample: a cell is black iff its uniform is < p. Colours are a pure
  /// function of (seed, stream, cell coordinate), so patches of different
  /// radii drawn with the same seed and stream agree where they overlap.
  static HexPatch sample(int radius, double p, std::uint64_t seed, std::uint64_t stream);

  int radius() const { return radius_; }
  bool contains(SiteCoord c) const {
    return c.q >= -radius_ && c.q <= radius_ && c.r >= -radius_ && c.r <= radius_;
  }
  bool black(SiteCoord c) const { return cells_[offset(c)] != 0; }
  void set(SiteCoord c, bool black) { cells_[offset(c)] = black ? 1 : 0; }

 private:
  std::size_t offset(SiteCoord c) const;

  int radius_;
  std::vector<std::uint8_t> cells_;
};

/// Uniform of a free-lattice cell under (seed, stream); used by HexPatch and
/// by the lazy arm sampler.
double arm_cell_uniform(std::uint64_t seed, std::uint64_t stream, SiteCoord c);

/// Arm event on a patch. Throws std::invalid_argument when the ball of radius
/// n_outer around the query centre is not covered by the patch.
bool detect_arms(const HexPatch& patch, const ArmQuery& query);

/// Arm event in the triangle domain under a dense colouring (1 = black per
/// site index). Cells outside the domain block every arm.
bool detect_arms_in_domain(const TriangleDomain& domain, const std::vector<std::uint8_t>& black,
                           const ArmQuery& query);

/// Per inner-circle site, in clockwise order: its colour and how far (hex
/// distance from the centre, capped at n_max) its monochromatic cluster
/// inside the annulus n_inner..n_max reaches. The event for any
/// n_outer <= n_max follows from these reaches alone.
struct ArmProfile {
  std::vector<ArmColor> colors;
  std::vector<int> reach;
};

/// Whether the pattern occurs with radius n_outer given a profile.
bool profile_event(const ArmProfile& profile, const ArmPattern& pattern, int n_outer);

/// Monte Carlo estimate of P_p(event) with a fresh lazily coloured patch per
/// sample.
Estimate sample_arm_prob(double p, const ArmQuery& query, std::size_t samples, std::uint64_t seed,
                         int workers = 0);

/// One patch per sample at the largest radius gives the event at every radius
/// in `radii`; the estimates are therefore correlated across radii.
std::vector<Estimate> sample_arm_profile(double p, const ArmPattern& pattern, int n_inner,
                                         const std::vector<int>& radii, std::size_t samples,
                                         std::uint64_t seed, int workers = 0);

struct QuasiMultRatio {
  std::optional<double> ratio;  // empty when the denominator estimate is 0
  double std_error = 0.0;
  Estimate inner;   // P(A(n1/2))
  Estimate outer;   // P(A(2 n1, n2))
  Estimate whole;   // P(A(n2))
};

/// [P(A(n1/2)) P(A(2 n1, n2))] / P(A(n2)) with first-order error propagation.
/// When n2 = 2 n1 the middle factor is the probability that the circle of
/// radius 2 n1 itself carries the pattern. Requires n1 >= 2 and 2 n1 <= n2.
QuasiMultRatio quasi_mult_ratio(double p, int n1, int n2, const ArmPattern& pattern,
                                std::size_t samples, std::uint64_t seed, int workers = 0);

}  // namespace nearcrit
