#include "nearcrit/sampling.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nearcrit {

CouplingField::CouplingField(const TriangleDomain& domain, std::uint64_t master_seed,
                             std::uint64_t stream_id, StreamTag tag)
    : domain_(&domain), seed_(master_seed), stream_(stream_id), tag_(tag) {}

std::vector<double> CouplingField::values() const {
  const std::size_t n = domain_->size();
  std::vector<double> out(n);
  const PhiloxKey key{seed_, static_cast<std::uint64_t>(tag_)};
  for (std::size_t block = 0; block * 4 < n; ++block) {
    const auto bits = philox4x64({block, stream_, 0, 0}, key);
    for (std::size_t lane = 0; lane < 4 && block * 4 + lane < n; ++lane)
      out[block * 4 + lane] = bits_to_unit(bits[lane]);
  }
  return out;
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " +
                                std::to_string(p));
}

Coloring::Coloring(const TriangleDomain& domain, const CouplingField* field, double p)
    : domain_(&domain), field_(field), p_(p), state_(domain.size(), kUnknown) {
  for (SiteIndex i = 0; i < domain.size(); ++i) {
    switch (domain.boundary_class(i)) {
      case BoundaryClass::BlackBoundary: state_[i] = kBlack; break;
      case BoundaryClass::WhiteBoundary: state_[i] = kWhite; break;
      case BoundaryClass::Interior: break;
    }
  }
}

Coloring Coloring::dense(const TriangleDomain& domain, std::vector<std::uint8_t> black) {
  if (black.size() != domain.size())
    throw std::invalid_argument("dense colouring needs one entry per site");
  Coloring c(domain, nullptr, 0.5);
  for (SiteIndex i = 0; i < domain.size(); ++i)
    if (domain.is_interior(i)) c.state_[i] = black[i] ? kBlack : kWhite;
  return c;
}

Coloring Coloring::dense(const CouplingField& field, double p) {
  check_probability(p);
  const TriangleDomain& domain = field.domain();
  Coloring c(domain, nullptr, p);
  const auto u = field.values();
  for (SiteIndex i = 0; i < domain.size(); ++i)
    if (domain.is_interior(i)) c.state_[i] = u[i] < p ? kBlack : kWhite;
  return c;
}

Coloring Coloring::lazy(const CouplingField& field, double p) {
  check_probability(p);
  return Coloring(field.domain(), &field, p);
}

std::size_t Coloring::evaluated_interior() const {
  std::size_t count = 0;
  for (SiteIndex i = 0; i < domain_->size(); ++i)
    if (domain_->is_interior(i) && state_[i] != kUnknown) ++count;
  return count;
}

std::vector<std::uint8_t> Coloring::to_dense_flags() const {
  std::vector<std::uint8_t> out(domain_->size());
  for (SiteIndex i = 0; i < domain_->size(); ++i) out[i] = black(i) ? 1 : 0;
  return out;
}

Coloring coloring_at(const CouplingField& field, double p) { return Coloring::dense(field, p); }

FlipSchedule flip_schedule(const CouplingField& field, double p_lo, double p_hi) {
  check_probability(p_lo, "p_lo");
  check_probability(p_hi, "p_hi");
  if (p_lo > p_hi) throw std::invalid_argument("flip schedule needs p_lo <= p_hi");
  FlipSchedule schedule{p_lo, p_hi, {}};
  const TriangleDomain& domain = field.domain();
  const auto u = field.values();
  for (SiteIndex i = 0; i < domain.size(); ++i) {
    if (!domain.is_interior(i)) continue;
    if (u[i] >= p_lo && u[i] < p_hi) schedule.flips.push_back({u[i], i});
  }
  std::sort(schedule.flips.begin(), schedule.flips.end(), [](const Flip& a, const Flip& b) {
    return a.threshold != b.threshold ? a.threshold < b.threshold : a.site < b.site;
  });
  return schedule;
}

}  // namespace nearcrit
