#include "spt2/products.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace spt2 {

// ---- EtaMonomial / ProductExpr ------------------------------------------------

EtaMonomial& EtaMonomial::multiply_by(const EtaMonomial& other) {
  coeff *= other.coeff;
  qshift += other.qshift;
  for (const auto& [k, e] : other.factors) {
    int& slot = factors[k];
    slot += e;
    if (slot == 0) factors.erase(k);
  }
  return *this;
}

bool EtaMonomial::same_shape(const EtaMonomial& other) const {
  return qshift == other.qshift && factors == other.factors;
}

EtaMonomial eta_power(int level, int exponent) {
  if (level < 1) throw std::invalid_argument("eta level must be positive");
  EtaMonomial m;
  if (exponent != 0) m.factors[level] = exponent;
  return m;
}

ProductExpr ProductExpr::constant(const Integer& c) {
  EtaMonomial m;
  m.coeff = c;
  return single(std::move(m));
}

ProductExpr ProductExpr::single(EtaMonomial m) {
  ProductExpr e;
  e.terms.push_back(std::move(m));
  return e.normalize();
}

ProductExpr& ProductExpr::normalize() {
  auto shape_less = [](const EtaMonomial& a, const EtaMonomial& b) {
    if (a.qshift != b.qshift) return a.qshift < b.qshift;
    return a.factors < b.factors;
  };
  std::stable_sort(terms.begin(), terms.end(), shape_less);
  std::vector<EtaMonomial> merged;
  for (auto& t : terms) {
    if (!merged.empty() && merged.back().same_shape(t)) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const EtaMonomial& m) { return sgn(m.coeff) == 0; });
  terms = std::move(merged);
  return *this;
}

ProductExpr operator+(const ProductExpr& a, const ProductExpr& b) {
  ProductExpr r = a;
  r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
  return r.normalize();
}

ProductExpr operator-(const ProductExpr& a) {
  ProductExpr r = a;
  for (auto& t : r.terms) t.coeff = -t.coeff;
  return r;
}

ProductExpr operator-(const ProductExpr& a, const ProductExpr& b) { return a + (-b); }

ProductExpr operator*(const ProductExpr& a, const ProductExpr& b) {
  ProductExpr r;
  for (const auto& x : a.terms) {
    for (const auto& y : b.terms) {
      EtaMonomial m = x;
      m.multiply_by(y);
      r.terms.push_back(std::move(m));
    }
  }
  return r.normalize();
}

namespace {

std::string factor_list(const std::vector<std::pair<int, int>>& fs) {
  std::string s;
  for (const auto& [k, e] : fs) {
    if (!s.empty()) s += "*";
    s += "f" + std::to_string(k);
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string to_string(const EtaMonomial& m) {
  std::vector<std::pair<int, int>> num, den;
  for (const auto& [k, e] : m.factors) {
    (e > 0 ? num : den).emplace_back(k, std::abs(e));
  }
  std::vector<std::string> parts;
  Integer mag = abs(m.coeff);
  if (mag != 1 || (m.qshift == 0 && num.empty())) parts.push_back(mag.get_str());
  if (m.qshift != 0) {
    parts.push_back(m.qshift == 1 ? std::string("q") : "q^" + std::to_string(m.qshift));
  }
  if (!num.empty()) parts.push_back(factor_list(num));
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : "*") + p;
  if (!den.empty()) {
    s += "/";
    s += den.size() > 1 || den[0].second != 1 ? "(" + factor_list(den) + ")"
                                              : factor_list(den);
  }
  return sgn(m.coeff) < 0 ? "-" + s : s;
}

std::string to_string(const ProductExpr& e) {
  if (e.terms.empty()) return "0";
  std::string s;
  for (const auto& t : e.terms) {
    std::string body = to_string(t);
    if (s.empty()) {
      s = body;
    } else if (body[0] == '-') {
      s += " - " + body.substr(1);
    } else {
      s += " + " + body;
    }
  }
  return s;
}

// ---- expansions ---------------------------------------------------------------

Series expand_eta(int level, std::size_t order, CoeffRing ring) {
  if (level < 1) throw std::invalid_argument("expand_eta: level must be >= 1");
  std::vector<std::pair<std::size_t, Integer>> terms;
  const std::uint64_t k = static_cast<std::uint64_t>(level);
  terms.emplace_back(0, 1);
  for (std::uint64_t n = 1;; ++n) {
    const std::uint64_t lo = k * (n * (3 * n - 1) / 2);
    if (lo >= order) break;
    const std::uint64_t hi = k * (n * (3 * n + 1) / 2);
    const long sign = (n % 2 == 0) ? 1 : -1;
    terms.emplace_back(lo, sign);
    if (hi < order) terms.emplace_back(hi, sign);
  }
  return Series::from_terms(ring, order, terms);
}

Series EtaCache::power(int level, int exponent, std::size_t order, CoeffRing ring) {
  const Key key{level, exponent, order, ring.modulus()};
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  Series value;
  if (exponent == 0) {
    value = Series::one(ring, order);
  } else if (exponent == 1) {
    value = expand_eta(level, order, ring);
  } else if (exponent == -1) {
    value = invert(expand_eta(level, order, ring));
  } else {
    const int unit = exponent > 0 ? 1 : -1;
    value = spt2::pow(power(level, unit, order, ring),
                      static_cast<unsigned>(std::abs(exponent)));
  }
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(key, std::move(value)).first->second;
}

std::size_t EtaCache::size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

void EtaCache::clear() {
  std::lock_guard lock(mutex_);
  cache_.clear();
}

EtaCache& default_eta_cache() {
  static EtaCache cache;
  return cache;
}

Series expand_monomial(const EtaMonomial& m, CoeffRing ring, std::size_t order,
                       EtaCache& cache) {
  if (m.qshift < 0) {
    throw std::domain_error("expand_monomial: negative power of q in " + to_string(m));
  }
  const auto s = static_cast<std::size_t>(m.qshift);
  if (s >= order) return Series(ring, order);
  // Only order - s coefficients of the eta part survive the shift.
  const std::size_t inner = order - s;
  Series acc = Series::one(ring, inner);
  for (const auto& [k, e] : m.factors) {
    acc = mul(acc, cache.power(k, e, inner, ring));
  }
  acc = scale(acc, m.coeff);
  if (s == 0) return acc;
  auto c = acc.coefficients();
  std::vector<Integer> shifted(order);
  std::move(c.begin(), c.end(), shifted.begin() + s);
  return Series::from_integers(ring, std::move(shifted));
}

Series expand_expr(const ProductExpr& e, CoeffRing ring, std::size_t order,
                   EtaCache& cache) {
  if (order == 0) throw std::invalid_argument("expand_expr: order must be >= 1");
  Series total(ring, order);
  for (const auto& t : e.terms) total = add(total, expand_monomial(t, ring, order, cache));
  return total;
}

namespace {

Series sparse_theta(std::size_t order, CoeffRing ring,
                    const std::vector<std::pair<std::size_t, Integer>>& terms) {
  return Series::from_terms(ring, order, terms);
}

}  // namespace

Series theta_phi(int sign, std::size_t order, CoeffRing ring) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("theta_phi: sign must be +1 or -1");
  std::vector<std::pair<std::size_t, Integer>> terms{{0, 1}};
  for (std::size_t n = 1; n * n < order; ++n) {
    long c = (sign < 0 && n % 2 == 1) ? -2 : 2;
    terms.emplace_back(n * n, c);
  }
  return sparse_theta(order, ring, terms);
}

Series theta_psi(int sign, std::size_t order, CoeffRing ring) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("theta_psi: sign must be +1 or -1");
  std::vector<std::pair<std::size_t, Integer>> terms;
  for (std::size_t n = 0; n * (n + 1) / 2 < order; ++n) {
    const std::size_t t = n * (n + 1) / 2;
    // (-q)^t carries the sign of t's parity.
    long c = (sign < 0 && t % 2 == 1) ? -1 : 1;
    terms.emplace_back(t, c);
  }
  return sparse_theta(order, ring, terms);
}

Series cube_f1(std::size_t order, CoeffRing ring) {
  std::vector<std::pair<std::size_t, Integer>> terms;
  for (std::size_t n = 0; n * (n + 1) / 2 < order; ++n) {
    long c = static_cast<long>(2 * n + 1);
    terms.emplace_back(n * (n + 1) / 2, n % 2 == 0 ? c : -c);
  }
  return sparse_theta(order, ring, terms);
}

ProductExpr phi_product(int sign, int m) {
  if (m < 1) throw std::invalid_argument("phi_product: m must be >= 1");
  EtaMonomial mono;
  if (sign > 0) {
    mono = eta_power(2 * m, 5).multiply_by(eta_power(m, -2)).multiply_by(eta_power(4 * m, -2));
  } else {
    mono = eta_power(m, 2).multiply_by(eta_power(2 * m, -1));
  }
  return ProductExpr::single(std::move(mono));
}

ProductExpr psi_product(int sign, int m) {
  if (m < 1) throw std::invalid_argument("psi_product: m must be >= 1");
  EtaMonomial mono;
  if (sign > 0) {
    mono = eta_power(2 * m, 2).multiply_by(eta_power(m, -1));
  } else {
    mono = eta_power(m, 1).multiply_by(eta_power(4 * m, 1)).multiply_by(eta_power(2 * m, -1));
  }
  return ProductExpr::single(std::move(mono));
}

}  // namespace spt2
