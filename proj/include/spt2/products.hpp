#pragma once

// Eta-quotient monomials c * q^s * prod f_k^{e_k}, where f_k = (q^k; q^k)_inf,
// and the Ramanujan theta functions phi and psi as sparse sums.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "spt2/series.hpp"

namespace spt2 {

struct EtaMonomial {
  Integer coeff = 1;
  std::int64_t qshift = 0;
  std::map<int, int> factors;  // level k -> exponent, zero exponents absent

  EtaMonomial& multiply_by(const EtaMonomial& other);
  // Same q-shift and eta factors, ignoring the coefficient.
  bool same_shape(const EtaMonomial& other) const;

  friend bool operator==(const EtaMonomial&, const EtaMonomial&) = default;
};

EtaMonomial eta_power(int level, int exponent);

// Formal sum of monomials; no terms is the zero series.
struct ProductExpr {
  std::vector<EtaMonomial> terms;

  static ProductExpr constant(const Integer& c);
  static ProductExpr single(EtaMonomial m);

  // Merges like monomials, drops zero coefficients and sorts into a canonical order.
  ProductExpr& normalize();

  friend bool operator==(const ProductExpr&, const ProductExpr&) = default;
};

ProductExpr operator+(const ProductExpr& a, const ProductExpr& b);
ProductExpr operator-(const ProductExpr& a);
ProductExpr operator-(const ProductExpr& a, const ProductExpr& b);
ProductExpr operator*(const ProductExpr& a, const ProductExpr& b);

// Human-readable rendering in expression-language syntax, e.g. "f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8".
std::string to_string(const EtaMonomial& m);
std::string to_string(const ProductExpr& e);

// Euler's pentagonal number theorem: f_k = sum_n (-1)^n q^{k n(3n-1)/2}.
Series expand_eta(int level, std::size_t order, CoeffRing ring = CoeffRing::integers());

// Memo for f_k^e expansions. Thread-safe.
class EtaCache {
 public:
  Series power(int level, int exponent, std::size_t order, CoeffRing ring);
  std::size_t size() const;
  void clear();

 private:
  using Key = std::tuple<int, int, std::size_t, std::uint64_t>;
  mutable std::mutex mutex_;
  std::map<Key, Series> cache_;
};

EtaCache& default_eta_cache();

Series expand_monomial(const EtaMonomial& m, CoeffRing ring, std::size_t order,
                       EtaCache& cache = default_eta_cache());
Series expand_expr(const ProductExpr& e, CoeffRing ring, std::size_t order,
                   EtaCache& cache = default_eta_cache());

// sign = +1 gives phi(q) = 1 + 2 sum q^{n^2}; sign = -1 gives phi(-q).
Series theta_phi(int sign, std::size_t order, CoeffRing ring = CoeffRing::integers());
// sign = +1 gives psi(q) = sum_{n>=0} q^{n(n+1)/2}; sign = -1 gives psi(-q).
Series theta_psi(int sign, std::size_t order, CoeffRing ring = CoeffRing::integers());
// f_1^3 = sum_{n>=0} (-1)^n (2n+1) q^{n(n+1)/2}.
Series cube_f1(std::size_t order, CoeffRing ring = CoeffRing::integers());

// Product forms of the theta functions with q replaced by +-q^m.
ProductExpr phi_product(int sign, int m = 1);
ProductExpr psi_product(int sign, int m = 1);

}  // namespace spt2
