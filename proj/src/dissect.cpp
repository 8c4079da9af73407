#include "spt2/dissect.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace spt2 {

Series dissect(const Series& a, DissectionSpec spec) {
  if (spec.m < 1) throw std::invalid_argument("dissect: m must be >= 1");
  if (spec.r >= spec.m) throw std::invalid_argument("dissect: residue must satisfy 0 <= r < m");
  const std::size_t n = a.order() > spec.r ? (a.order() - spec.r + spec.m - 1) / spec.m : 0;
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    std::vector<Integer> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = x[spec.m * i + spec.r];
    return Series::from_integers(a.ring(), std::move(c));
  }
  auto x = a.residues();
  std::vector<std::uint64_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = x[spec.m * i + spec.r];
  return Series::from_residues(a.ring(), std::move(c));
}

Series reassemble(const std::vector<Series>& parts, std::size_t m) {
  if (m < 1 || parts.size() != m) {
    throw std::invalid_argument("reassemble: expected " + std::to_string(m) + " parts, got " +
                                std::to_string(parts.size()));
  }
  const CoeffRing ring = parts[0].ring();
  std::size_t order = std::numeric_limits<std::size_t>::max();
  for (std::size_t r = 0; r < m; ++r) {
    if (parts[r].ring() != ring) throw RingMismatch("reassemble: parts live in different rings");
    order = std::min(order, m * parts[r].order() + r);
  }
  std::vector<Integer> c(order);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; m * i + r < order; ++i) c[m * i + r] = parts[r].coefficient(i);
  }
  return Series::from_integers(ring, std::move(c));
}

CheckReport check_series_congruence(const Series& lhs, const Series& rhs, std::uint64_t m,
                                    std::string name) {
  if (lhs.order() != rhs.order()) {
    throw std::invalid_argument("check_series_congruence: orders differ (" +
                                std::to_string(lhs.order()) + " vs " +
                                std::to_string(rhs.order()) + ")");
  }
  CheckReport rep;
  rep.name = std::move(name);
  rep.order = lhs.order();
  rep.modulus = m;
  const Series a = m == 0 ? lhs : reduce_mod(lhs, m);
  const Series b = m == 0 ? rhs : reduce_mod(rhs, m);
  if (m == 0 && a.ring() != b.ring()) throw RingMismatch("check_series_congruence: ring mismatch");
  for (std::size_t i = 0; i < a.order(); ++i) {
    Integer x = a.coefficient(i), y = b.coefficient(i);
    if (x != y) {
      rep.first_bad_exponent = i;
      rep.lhs_coeff = x;
      rep.rhs_coeff = y;
      return rep;
    }
  }
  rep.pass = true;
  return rep;
}

CheckReport check_identity(const IdentityClaim& c) {
  if (c.order < 1) throw std::invalid_argument("check_identity: order must be >= 1");
  const CoeffRing ring = c.modulus == 0 ? CoeffRing::integers() : CoeffRing::modulo(c.modulus);
  const Series lhs = expand_expr(c.lhs, ring, c.order);
  const Series rhs = expand_expr(c.rhs, ring, c.order);
  return check_series_congruence(lhs, rhs, c.modulus, c.name);
}

}  // namespace spt2
