#pragma once

#include <cstdint>
#include <vector>

#include "nearcrit/lattice.hpp"
#include "nearcrit/philox.hpp"

namespace nearcrit {

/// One uniform per site, realizing every percolation parameter at once: a site
/// is black at parameter p iff u < p. Values are a pure function of
/// (master_seed, tag, stream_id, site index), so the field never depends on
/// evaluation order or worker scheduling. The domain must outlive the field.
class CouplingField {
 public:
  CouplingField(const TriangleDomain& domain, std::uint64_t master_seed, std::uint64_t stream_id,
                StreamTag tag = StreamTag::Crossing);

  const TriangleDomain& domain() const { return *domain_; }
  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  StreamTag tag() const { return tag_; }

  double u(SiteIndex i) const { return counter_uniform(seed_, tag_, stream_, i); }
  /// All site values, by dense index.
  std::vector<double> values() const;

 private:
  const TriangleDomain* domain_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  StreamTag tag_;
};

/// A black/white assignment of the domain. Boundary cells always carry their
/// boundary colour; interior cells follow the field (or an explicit array).
///
/// The lazy form evaluates a site's uniform the first time it is queried and
/// memoizes it. A lazy coloring is meant for one exploration at a time: use a
/// separate instance per concurrent sample.
class Coloring {
 public:
  /// Dense from explicit interior colours (`black[i]` for every site index;
  /// entries for boundary sites are ignored).
  static Coloring dense(const TriangleDomain& domain, std::vector<std::uint8_t> black);
  static Coloring dense(const CouplingField& field, double p);
  static Coloring lazy(const CouplingField& field, double p);

  const TriangleDomain& domain() const { return *domain_; }
  double p() const { return p_; }
  bool is_lazy() const { return field_ != nullptr; }

  bool black(SiteIndex i) const {
    std::uint8_t s = state_[i];
    if (s == kUnknown) {
      s = field_->u(i) < p_ ? kBlack : kWhite;
      state_[i] = s;
    }
    return s == kBlack;
  }
  /// Number of interior sites whose colour has been evaluated (lazy) or the
  /// interior count (dense).
  std::size_t evaluated_interior() const;

  /// Materialized copy (1 = black) by dense index.
  std::vector<std::uint8_t> to_dense_flags() const;

 private:
  static constexpr std::uint8_t kWhite = 0;
  static constexpr std::uint8_t kBlack = 1;
  static constexpr std::uint8_t kUnknown = 2;

  Coloring(const TriangleDomain& domain, const CouplingField* field, double p);

  const TriangleDomain* domain_;
  const CouplingField* field_;  // null for dense colourings
  double p_;
  mutable std::vector<std::uint8_t> state_;
};

/// Throws std::invalid_argument unless 0 <= p <= 1.
void check_probability(double p, const char* what = "p");

/// Dense colouring of the field at parameter p.
Coloring coloring_at(const CouplingField& field, double p);

struct Flip {
  double threshold;  // the parameter value at which the site turns black
  SiteIndex site;
};

/// Interior sites that turn black while the parameter moves from p_lo to p_hi,
/// i.e. p_lo <= u < p_hi under the "black iff u < p" rule, sorted by
/// threshold (ties by site index).
struct FlipSchedule {
  double p_lo = 0.0;
  double p_hi = 0.0;
  std::vector<Flip> flips;
};

FlipSchedule flip_schedule(const CouplingField& field, double p_lo, double p_hi);

}  // namespace nearcrit
