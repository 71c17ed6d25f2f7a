#include "nearcrit/explorer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace nearcrit {

InterfacePath explore(const TriangleDomain& domain, const Coloring& coloring) {
  if (&coloring.domain() != &domain && coloring.domain().n() != domain.n())
    throw std::invalid_argument("colouring belongs to a different domain");
  const SiteIndex start_left = domain.origin_black();
  const SiteIndex start_right = domain.origin_white();
  if (!coloring.black(start_left) || coloring.black(start_right))
    throw std::invalid_argument("boundary has no black/white split at the origin");

  const SiteIndex apex_left = domain.apex_black();
  const SiteIndex apex_right = domain.apex_white();
  // Each dual edge is traversed at most once, and there are fewer than three
  // per cell.
  const std::size_t max_steps = 3 * domain.size() + 8;

  InterfacePath path;
  path.steps.reserve(std::min<std::size_t>(max_steps, 4096));
  std::vector<std::uint8_t> seen(domain.size(), 0);

  SiteIndex left = start_left;
  SiteIndex right = start_right;
  int dir = 0;
  for (;;) {
    const std::size_t k = path.steps.size();
    path.steps.push_back({left, right, static_cast<std::uint8_t>(dir)});
    if (path.right_hit == kNever && domain.side(right) == Side::Right) path.right_hit = k;
    if (path.left_hit == kNever && domain.side(left) == Side::Left) path.left_hit = k;
    if (left == apex_left && right == apex_right) {
      path.terminated = true;
      break;
    }
    if (k >= max_steps) throw std::logic_error("exploration failed to terminate");

    const SiteIndex ahead = domain.neighbor_index(left, (dir + 5) % 6);
    if (ahead == kNoSite) throw std::logic_error("exploration left the domain");
    const bool is_black = coloring.black(ahead);
    if (!seen[ahead] && domain.is_interior(ahead)) {
      seen[ahead] = 1;
      path.revealed.push_back(ahead);
      ++(is_black ? path.black_revealed : path.white_revealed);
    }
    if (is_black) {
      left = ahead;
      dir = (dir + 1) % 6;
    } else {
      right = ahead;
      dir = (dir + 5) % 6;
    }
  }
  return path;
}

namespace {

Point centroid(const TriangleDomain& domain, SiteCoord a, SiteCoord b, SiteCoord c) {
  const Point pa = domain.center(a);
  const Point pb = domain.center(b);
  const Point pc = domain.center(c);
  return {(pa.x + pb.x + pc.x) / 3.0, (pa.y + pb.y + pc.y) / 3.0};
}

}  // namespace

Point step_head(const TriangleDomain& domain, const Step& s) {
  const SiteCoord l = domain.coord(s.left);
  const SiteCoord r = domain.coord(s.right);
  return centroid(domain, l, r, l + kNeighborOffsets[(s.direction + 5) % 6]);
}

Point step_tail(const TriangleDomain& domain, const Step& s) {
  const SiteCoord l = domain.coord(s.left);
  const SiteCoord r = domain.coord(s.right);
  return centroid(domain, l, r, l + kNeighborOffsets[(s.direction + 1) % 6]);
}

std::string to_string(SideOutcome s) {
  switch (s) {
    case SideOutcome::Right: return "Right";
    case SideOutcome::Left: return "Left";
    case SideOutcome::Tie: return "Tie";
  }
  return "?";
}

SideOutcome side_outcome(const InterfacePath& path) {
  if (!path.terminated) throw std::logic_error("side outcome of an unterminated path");
  if (path.right_hit < path.left_hit) return SideOutcome::Right;
  if (path.left_hit < path.right_hit) return SideOutcome::Left;
  return SideOutcome::Tie;
}

Asymmetry asymmetry(const InterfacePath& path) {
  return {static_cast<std::int64_t>(path.black_revealed),
          static_cast<std::int64_t>(path.white_revealed),
          static_cast<std::int64_t>(path.steps.size())};
}

std::size_t box_count(const TriangleDomain& domain, const InterfacePath& path, int lambda) {
  if (lambda < 1) throw std::invalid_argument("box_count needs lambda >= 1");
  if (path.steps.empty()) throw std::invalid_argument("box_count of an empty path");
  const double lam = lambda;
  const double inv_s3 = 1.0 / std::numbers::sqrt3;
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(2 * lambda * lambda), 0);
  std::size_t count = 0;
  auto visit = [&](Point lattice) {
    const Point p = domain.rescale(lattice);
    // Skew coordinates: a along the bottom side, b along the left side.
    double a = lam * (p.x + 0.5 - p.y * inv_s3);
    double b = lam * (2.0 * p.y * inv_s3);
    a = std::max(a, 0.0);
    b = std::clamp(b, 0.0, lam);
    if (a + b > lam) a = lam - b;
    int i = std::min(static_cast<int>(a), lambda - 1);
    int j = std::min(static_cast<int>(b), lambda - 1);
    if (i + j > lambda - 1) i = lambda - 1 - j;
    const bool up = (a - i) + (b - j) < 1.0 || i + j == lambda - 1;
    const std::size_t id = (static_cast<std::size_t>(j) * lambda + i) * 2 + (up ? 0 : 1);
    if (!hit[id]) {
      hit[id] = 1;
      ++count;
    }
  };
  visit(step_tail(domain, path.steps.front()));
  for (const Step& s : path.steps) visit(step_head(domain, s));
  return count;
}

std::string format_path_dump(const TriangleDomain& domain, const InterfacePath& path) {
  std::ostringstream out;
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    const SiteCoord c = domain.coord(path.steps[k].left);
    out << k << ' ' << c.q << ' ' << c.r << ' ' << int(path.steps[k].direction) << '\n';
  }
  const Asymmetry a = asymmetry(path);
  out << "# " << a.black << ' ' << a.white << ' ' << a.length << ' '
      << (path.terminated ? to_string(side_outcome(path)) : std::string("Unterminated")) << '\n';
  return out.str();
}

}  // namespace nearcrit
