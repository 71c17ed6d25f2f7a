#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nearcrit/lattice.hpp"
#include "nearcrit/sampling.hpp"

namespace nearcrit {

inline constexpr std::size_t kNever = static_cast<std::size_t>(-1);

/// One traversed edge of the dual (honeycomb) lattice. The edge separates
/// `left` (black) from `right` (white); `direction` is the neighbour index of
/// `right` as seen from `left`, so the travel direction is that offset turned
/// 90 degrees counter-clockwise.
struct Step {
  SiteIndex left;
  SiteIndex right;
  std::uint8_t direction;
};

enum class Termination : std::uint8_t { Apex };

/// The explored interface from the origin vertex to the apex vertex.
///
/// `revealed` lists the distinct interior cells adjacent to the path in the
/// order the exploration first looked at them; boundary cells have fixed
/// colours and are not counted. `black_revealed + white_revealed ==
/// revealed.size()` always holds.
struct InterfacePath {
  std::vector<Step> steps;
  std::vector<SiteIndex> revealed;
  std::size_t black_revealed = 0;
  std::size_t white_revealed = 0;
  std::size_t right_hit = kNever;  // first step touching a right-side cell
  std::size_t left_hit = kNever;   // first step touching a left-side cell
  bool terminated = false;

  std::size_t length() const { return steps.size(); }
};

/// Runs the exploration process: at each vertex the cell ahead decides the
/// turn (black: 60 degrees right, white: 60 degrees left), keeping black cells
/// on the left. Lazy colourings are queried at most once per cell.
InterfacePath explore(const TriangleDomain& domain, const Coloring& coloring);

/// Continues an exploration from an arbitrary directed edge until `stop`
/// returns true for a newly looked-at cell or the apex is reached. Used by the
/// good-triangle machinery; `stop` receives the cell ahead before it is
/// coloured. Returns the cell that triggered the stop, or kNoSite.
template <class StopFn, class ColorFn>
SiteIndex continue_exploration(const TriangleDomain& domain, Step from, ColorFn&& black,
                               StopFn&& stop, std::size_t max_steps);

/// Head vertex of a step in lattice units.
Point step_head(const TriangleDomain& domain, const Step& s);
/// Tail vertex of a step in lattice units.
Point step_tail(const TriangleDomain& domain, const Step& s);

enum class SideOutcome : std::uint8_t { Right, Left, Tie };
std::string to_string(SideOutcome s);

/// Right if the first right-side contact strictly precedes the first
/// left-side contact; Tie iff both first happen on the same step.
/// Throws std::logic_error for an unterminated path.
SideOutcome side_outcome(const InterfacePath& path);

struct Asymmetry {
  std::int64_t black;   // l+
  std::int64_t white;   // l-
  std::int64_t length;  // l
  std::int64_t difference() const { return black - white; }
};
Asymmetry asymmetry(const InterfacePath& path);

/// Number of cells of the lambda x lambda sub-triangle grid of the unit triangle
/// visited by the rescaled path (vertices of every step).
std::size_t box_count(const TriangleDomain& domain, const InterfacePath& path, int lambda);

enum class RegionSide : std::uint8_t { Left, Right, Hit };
std::string to_string(RegionSide s);

/// Whether a disc strictly inside the triangle is hit by the path or lies in
/// a left (black side) or right (white side) complementary component.
/// Throws std::invalid_argument when the disc reaches the boundary layer.
RegionSide region_side(const TriangleDomain& domain, const InterfacePath& path, const Disc& disc);

struct PivotalJump {
  double p;        // parameter at which the site flipped
  SiteIndex site;  // the flipped site
  RegionSide from;
  RegionSide to;
};

/// Raises p from 1/2 to p_hi flip by flip and records every change of
/// region_side between consecutive parameters where neither side is Hit.
std::vector<PivotalJump> pivotal_sweep(const CouplingField& field, double p_hi, const Disc& disc);

/// Path dump: one line "step_index q r direction" per step (q r of the left
/// cell), then a trailer "# lplus lminus length side".
std::string format_path_dump(const TriangleDomain& domain, const InterfacePath& path);

// ---------------------------------------------------------------------------

template <class StopFn, class ColorFn>
SiteIndex continue_exploration(const TriangleDomain& domain, Step from, ColorFn&& black,
                               StopFn&& stop, std::size_t max_steps) {
  SiteIndex left = from.left;
  SiteIndex right = from.right;
  int dir = from.direction;
  const SiteIndex apex_l = domain.apex_black();
  const SiteIndex apex_r = domain.apex_white();
  for (std::size_t n = 0; n < max_steps; ++n) {
    if (left == apex_l && right == apex_r) return kNoSite;
    const SiteIndex ahead = domain.neighbor_index(left, (dir + 5) % 6);
    if (ahead == kNoSite) return kNoSite;
    if (stop(ahead)) return ahead;
    if (black(ahead)) {
      left = ahead;
      dir = (dir + 1) % 6;
    } else {
      right = ahead;
      dir = (dir + 5) % 6;
    }
  }
  return kNoSite;
}

}  // namespace nearcrit
