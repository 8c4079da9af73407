#pragma once

// m-dissection of q-series and the identity / congruence checkers built on it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spt2/products.hpp"
#include "spt2/series.hpp"

namespace spt2 {

struct DissectionSpec {
  std::size_t m = 1;
  std::size_t r = 0;
};

// c'_n = c_{m n + r}; order ceil((order - r) / m), zero when r >= order.
Series dissect(const Series& a, DissectionSpec spec);

// Inverse of dissect over all residues: sum_r q^r * parts[r](q^m).
Series reassemble(const std::vector<Series>& parts, std::size_t m);

struct IdentityClaim {
  std::string name;
  ProductExpr lhs;
  ProductExpr rhs;
  std::uint64_t modulus = 0;  // 0 = exact
  std::size_t order = 300;
};

struct CheckReport {
  std::string name;
  bool pass = false;
  std::size_t order = 0;
  std::uint64_t modulus = 0;
  std::optional<std::size_t> first_bad_exponent;
  std::optional<Integer> lhs_coeff;
  std::optional<Integer> rhs_coeff;
};

CheckReport check_identity(const IdentityClaim& c);

// Coefficientwise comparison modulo m (m = 0 compares exactly). The series
// must have equal order; they may be over ZZ or over a ring that reduces to ZZ/m.
CheckReport check_series_congruence(const Series& lhs, const Series& rhs, std::uint64_t m,
                                    std::string name = {});

}  // namespace spt2
