#include <cmath>
#include <stdexcept>

#include "nearcrit/estimators.hpp"

namespace nearcrit {

namespace {

double poly_eval(const std::vector<double>& coeff, std::size_t m, double p) {
  double total = 0.0;
  for (std::size_t k = 0; k <= m; ++k) {
    if (coeff[k] == 0.0) continue;
    total += coeff[k] * std::pow(p, static_cast<double>(k)) *
             std::pow(1.0 - p, static_cast<double>(m - k));
  }
  return total;
}

}  // namespace

double ExactPolynomial::R(double p) const {
  check_probability(p);
  return poly_eval(right_weight, interior, p);
}

double ExactPolynomial::expected_length(double p) const {
  check_probability(p);
  return poly_eval(length_sum, interior, p);
}

ExactPolynomial enumerate_polynomial(int n) {
  const TriangleDomain domain(n);
  std::vector<SiteIndex> interior;
  for (SiteIndex i = 0; i < domain.size(); ++i)
    if (domain.is_interior(i)) interior.push_back(i);
  const std::size_t m = interior.size();
  if (m > 20) throw std::invalid_argument("exact enumeration supports at most 20 interior sites");

  ExactPolynomial poly;
  poly.n = n;
  poly.interior = m;
  poly.count.assign(m + 1, 0.0);
  poly.right_weight.assign(m + 1, 0.0);
  poly.length_sum.assign(m + 1, 0.0);

  std::vector<std::uint8_t> flags(domain.size(), 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::size_t k = 0;
    for (std::size_t b = 0; b < m; ++b) {
      const bool black = (mask >> b) & 1u;
      flags[interior[b]] = black ? 1 : 0;
      k += black ? 1 : 0;
    }
    const InterfacePath path = explore(domain, Coloring::dense(domain, flags));
    const SideOutcome side = side_outcome(path);
    poly.count[k] += 1.0;
    poly.right_weight[k] += side == SideOutcome::Right ? 1.0 : side == SideOutcome::Tie ? 0.5 : 0.0;
    poly.length_sum[k] += static_cast<double>(path.length());
  }
  return poly;
}

ExactResult enumerate_exact(int n, double p) {
  check_probability(p);
  const ExactPolynomial poly = enumerate_polynomial(n);
  return {poly.R(p), poly.expected_length(p)};
}

}  // namespace nearcrit
