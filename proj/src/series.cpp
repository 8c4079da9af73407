#include "spt2/series.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace spt2 {

namespace {

using u128 = unsigned __int128;

constexpr std::size_t kKroneckerThreshold = 64;

std::uint64_t add_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return x >= m - y ? x - (m - y) : x + y;
}

std::uint64_t sub_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return x >= y ? x - y : x + (m - y);
}

std::uint64_t mul_mod(std::uint64_t x, std::uint64_t y, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(x) * y % m);
}

std::uint64_t residue_of(const Integer& z, std::uint64_t m) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(z.get_mpz_t(), m);
}

Integer integer_of(std::uint64_t r) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(r), 0, 0, &r);
  return z;
}

// Inverse of x modulo m, or 0 when gcd(x, m) != 1.
std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t m) {
  __int128 r0 = m, r1 = x % m, t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) return 0;
  if (t0 < 0) t0 += m;
  return static_cast<std::uint64_t>(t0);
}

void require_same_ring(const Series& a, const Series& b, const char* op) {
  if (a.ring() != b.ring()) {
    throw RingMismatch(std::string(op) + ": ring mismatch (" + a.ring().name() +
                       " vs " + b.ring().name() + ")");
  }
}

// ---- Kronecker substitution -------------------------------------------------
//
// Nonnegative coefficient vectors are packed into one big integer with a slot of
// `limbs` machine words per coefficient, multiplied by GMP, and unpacked. Slots
// are wide enough that no carry crosses a slot boundary.

using Limbs = std::vector<mp_limb_t>;

std::size_t bit_length(const Integer& z) {
  return sgn(z) == 0 ? 0 : mpz_sizeinbase(z.get_mpz_t(), 2);
}

Integer pack(std::span<const Integer> mags, std::size_t limbs) {
  Limbs buf(mags.size() * limbs, 0);
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (sgn(mags[i]) == 0) continue;
    std::size_t count = 0;
    mpz_export(&buf[i * limbs], &count, -1, sizeof(mp_limb_t), 0, 0,
               mags[i].get_mpz_t());
  }
  Integer packed;
  if (!buf.empty()) {
    mpz_import(packed.get_mpz_t(), buf.size(), -1, sizeof(mp_limb_t), 0, 0,
               buf.data());
  }
  return packed;
}

std::vector<Integer> unpack(const Integer& packed, std::size_t limbs,
                            std::size_t count) {
  Limbs buf(mpz_size(packed.get_mpz_t()) + 1, 0);
  std::size_t written = 0;
  mpz_export(buf.data(), &written, -1, sizeof(mp_limb_t), 0, 0,
             packed.get_mpz_t());
  std::vector<Integer> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t begin = k * limbs;
    if (begin >= written) break;
    std::size_t n = std::min(limbs, written - begin);
    mpz_import(out[k].get_mpz_t(), n, -1, sizeof(mp_limb_t), 0, 0,
               &buf[begin]);
  }
  return out;
}

std::size_t max_bits(std::span<const Integer> v) {
  std::size_t b = 0;
  for (const auto& z : v) b = std::max(b, bit_length(z));
  return b;
}

bool all_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& z) { return sgn(z) == 0; });
}

// Truncated product of nonnegative vectors (each already cut to `order`).
std::vector<Integer> kronecker_product(std::span<const Integer> a,
                                       std::span<const Integer> b,
                                       std::size_t limbs, std::size_t order) {
  if (all_zero(a) || all_zero(b)) return std::vector<Integer>(order);
  Integer pa = pack(a, limbs);
  Integer pb = pack(b, limbs);
  Integer prod = pa * pb;
  return unpack(prod, limbs, order);
}

std::size_t slot_limbs(std::size_t bits_a, std::size_t bits_b, std::size_t len) {
  std::size_t bits = bits_a + bits_b + std::bit_width(len) + 1;
  return std::max<std::size_t>(1, (bits + 63) / 64);
}

}  // namespace

// ---- CoeffRing --------------------------------------------------------------

CoeffRing CoeffRing::modulo(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("CoeffRing: modulus must be 0 or >= 2");
  return CoeffRing(m);
}

std::string CoeffRing::name() const {
  return exact() ? std::string("ZZ") : "ZZ/" + std::to_string(modulus_);
}

// ---- Series -----------------------------------------------------------------

Series::Series(CoeffRing ring, std::size_t order) : ring_(ring), order_(order) {
  if (ring.exact()) {
    exact_.resize(order);
  } else {
    residues_.assign(order, 0);
  }
}

Series Series::from_integers(CoeffRing ring, std::vector<Integer> coeffs) {
  Series s;
  s.ring_ = ring;
  s.order_ = coeffs.size();
  if (ring.exact()) {
    s.exact_ = std::move(coeffs);
  } else {
    s.residues_.resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      s.residues_[i] = residue_of(coeffs[i], ring.modulus());
    }
  }
  return s;
}

Series Series::from_integers(CoeffRing ring, std::initializer_list<long> coeffs) {
  std::vector<Integer> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return from_integers(ring, std::move(v));
}

Series Series::from_residues(CoeffRing ring, std::vector<std::uint64_t> residues) {
  if (ring.exact()) {
    std::vector<Integer> v;
    v.reserve(residues.size());
    for (auto r : residues) v.push_back(integer_of(r));
    return from_integers(ring, std::move(v));
  }
  Series s;
  s.ring_ = ring;
  s.order_ = residues.size();
  s.residues_ = std::move(residues);
  for (auto& r : s.residues_) r %= ring.modulus();
  return s;
}

Series Series::from_terms(CoeffRing ring, std::size_t order,
                          std::span<const std::pair<std::size_t, Integer>> terms) {
  Series s(ring, order);
  for (const auto& [e, c] : terms) {
    if (e >= order) continue;
    if (ring.exact()) {
      s.exact_[e] += c;
    } else {
      s.residues_[e] = add_mod(s.residues_[e], residue_of(c, ring.modulus()),
                               ring.modulus());
    }
  }
  return s;
}

Series Series::one(CoeffRing ring, std::size_t order) {
  Series s(ring, order);
  if (order > 0) {
    if (ring.exact()) {
      s.exact_[0] = 1;
    } else {
      s.residues_[0] = 1;
    }
  }
  return s;
}

Integer Series::coefficient(std::size_t n) const {
  if (n >= order_) {
    throw OutOfTruncation("coefficient: exponent " + std::to_string(n) +
                          " is beyond the truncation order " +
                          std::to_string(order_));
  }
  return ring_.exact() ? exact_[n] : integer_of(residues_[n]);
}

std::vector<Integer> Series::coefficients() const {
  if (ring_.exact()) return exact_;
  std::vector<Integer> out;
  out.reserve(order_);
  for (auto r : residues_) out.push_back(integer_of(r));
  return out;
}

bool Series::is_zero() const {
  if (ring_.exact()) return all_zero(exact_);
  return std::all_of(residues_.begin(), residues_.end(),
                     [](std::uint64_t r) { return r == 0; });
}

std::span<const Integer> Series::exact_coeffs() const {
  if (!ring_.exact()) throw RingMismatch("exact_coeffs: series is modular");
  return exact_;
}

std::span<const std::uint64_t> Series::residues() const {
  if (ring_.exact()) throw RingMismatch("residues: series is exact");
  return residues_;
}

bool operator==(const Series& a, const Series& b) {
  return a.ring_ == b.ring_ && a.order_ == b.order_ && a.exact_ == b.exact_ &&
         a.residues_ == b.residues_;
}

// ---- ring operations ----------------------------------------------------------

Series add(const Series& a, const Series& b) {
  require_same_ring(a, b, "add");
  const std::size_t n = std::min(a.order(), b.order());
  if (a.ring().exact()) {
    auto x = a.exact_coeffs(), y = b.exact_coeffs();
    std::vector<Integer> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = x[i] + y[i];
    return Series::from_integers(a.ring(), std::move(c));
  }
  const auto m = a.ring().modulus();
  auto x = a.residues(), y = b.residues();
  std::vector<std::uint64_t> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = add_mod(x[i], y[i], m);
  return Series::from_residues(a.ring(), std::move(c));
}

Series negate(const Series& a) {
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    std::vector<Integer> c(x.begin(), x.end());
    for (auto& z : c) z = -z;
    return Series::from_integers(a.ring(), std::move(c));
  }
  const auto m = a.ring().modulus();
  auto x = a.residues();
  std::vector<std::uint64_t> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = sub_mod(0, x[i], m);
  return Series::from_residues(a.ring(), std::move(c));
}

Series sub(const Series& a, const Series& b) {
  require_same_ring(a, b, "sub");
  return add(a, negate(b));
}

Series scale(const Series& a, const Integer& k) {
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    std::vector<Integer> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = x[i] * k;
    return Series::from_integers(a.ring(), std::move(c));
  }
  const auto m = a.ring().modulus();
  const auto kr = residue_of(k, m);
  auto x = a.residues();
  std::vector<std::uint64_t> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) c[i] = mul_mod(x[i], kr, m);
  return Series::from_residues(a.ring(), std::move(c));
}

Series mul_schoolbook(const Series& a, const Series& b) {
  require_same_ring(a, b, "mul");
  const std::size_t n = std::min(a.order(), b.order());
  if (a.ring().exact()) {
    auto x = a.exact_coeffs(), y = b.exact_coeffs();
    std::vector<Integer> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; i + j < n; ++j) {
        mpz_addmul(c[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
      }
    }
    return Series::from_integers(a.ring(), std::move(c));
  }
  const auto m = a.ring().modulus();
  const bool small = m <= (std::uint64_t{1} << 32);
  auto x = a.residues(), y = b.residues();
  std::vector<u128> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      u128 p = static_cast<u128>(x[i]) * y[j];
      acc[i + j] += small ? p : p % m;
    }
  }
  std::vector<std::uint64_t> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = static_cast<std::uint64_t>(acc[k] % m);
  return Series::from_residues(a.ring(), std::move(c));
}

Series mul_kronecker(const Series& a, const Series& b) {
  require_same_ring(a, b, "mul");
  const std::size_t n = std::min(a.order(), b.order());
  if (n == 0) return Series(a.ring(), 0);

  if (!a.ring().exact()) {
    auto to_int = [n](std::span<const std::uint64_t> r) {
      std::vector<Integer> v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = integer_of(r[i]);
      return v;
    };
    auto x = to_int(a.residues()), y = to_int(b.residues());
    auto limbs = slot_limbs(max_bits(x), max_bits(y), n);
    auto prod = kronecker_product(x, y, limbs, n);
    return Series::from_integers(a.ring(), std::move(prod));
  }

  // Split into positive and negative magnitudes: a = ap - an, b = bp - bn.
  auto split = [n](std::span<const Integer> v) {
    std::pair<std::vector<Integer>, std::vector<Integer>> parts{
        std::vector<Integer>(n), std::vector<Integer>(n)};
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn(v[i]) > 0) parts.first[i] = v[i];
      else if (sgn(v[i]) < 0) parts.second[i] = -v[i];
    }
    return parts;
  };
  auto [ap, an] = split(a.exact_coeffs());
  auto [bp, bn] = split(b.exact_coeffs());
  auto limbs = slot_limbs(std::max(max_bits(ap), max_bits(an)),
                          std::max(max_bits(bp), max_bits(bn)), n);

  auto pp = kronecker_product(ap, bp, limbs, n);
  auto nn = kronecker_product(an, bn, limbs, n);
  auto pn = kronecker_product(ap, bn, limbs, n);
  auto np = kronecker_product(an, bp, limbs, n);
  std::vector<Integer> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = pp[k] + nn[k] - pn[k] - np[k];
  return Series::from_integers(a.ring(), std::move(c));
}

Series mul(const Series& a, const Series& b) {
  if (std::min(a.order(), b.order()) >= kKroneckerThreshold) return mul_kronecker(a, b);
  return mul_schoolbook(a, b);
}

Series invert(const Series& a) {
  const std::size_t n = a.order();
  if (n == 0) return a;

  // Only nonzero coefficients of a take part in the recurrence; eta products
  // are sparse, which keeps this close to linear for them.
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    if (x[0] != 1 && x[0] != -1) {
      throw NotAUnit("invert: constant term " + x[0].get_str() +
                     " is not a unit in ZZ");
    }
    std::vector<std::size_t> support;
    for (std::size_t k = 1; k < n; ++k) {
      if (sgn(x[k]) != 0) support.push_back(k);
    }
    std::vector<Integer> c(n);
    c[0] = x[0];
    Integer acc;
    for (std::size_t i = 1; i < n; ++i) {
      acc = 0;
      for (auto k : support) {
        if (k > i) break;
        mpz_addmul(acc.get_mpz_t(), x[k].get_mpz_t(), c[i - k].get_mpz_t());
      }
      c[i] = x[0] > 0 ? Integer(-acc) : acc;
    }
    return Series::from_integers(a.ring(), std::move(c));
  }

  const auto m = a.ring().modulus();
  auto x = a.residues();
  const auto inv0 = inverse_mod(x[0], m);
  if (inv0 == 0) {
    throw NotAUnit("invert: constant term " + std::to_string(x[0]) +
                   " is not a unit in " + a.ring().name());
  }
  std::vector<std::size_t> support;
  for (std::size_t k = 1; k < n; ++k) {
    if (x[k] != 0) support.push_back(k);
  }
  std::vector<std::uint64_t> c(n);
  c[0] = inv0;
  for (std::size_t i = 1; i < n; ++i) {
    u128 acc = 0;
    for (auto k : support) {
      if (k > i) break;
      acc += static_cast<u128>(x[k]) * c[i - k] % m;
    }
    c[i] = mul_mod(sub_mod(0, static_cast<std::uint64_t>(acc % m), m), inv0, m);
  }
  return Series::from_residues(a.ring(), std::move(c));
}

Series pow(const Series& a, unsigned exponent) {
  Series result = Series::one(a.ring(), a.order());
  Series base = a;
  while (exponent > 0) {
    if (exponent & 1u) result = mul(result, base);
    exponent >>= 1;
    if (exponent > 0) base = mul(base, base);
  }
  return result;
}

Series substitute_power(const Series& a, std::size_t m) {
  if (m == 0) throw std::invalid_argument("substitute_power: m must be >= 1");
  const std::size_t n = a.order();
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    std::vector<Integer> c(n);
    for (std::size_t i = 0; i * m < n; ++i) c[i * m] = x[i];
    return Series::from_integers(a.ring(), std::move(c));
  }
  auto x = a.residues();
  std::vector<std::uint64_t> c(n, 0);
  for (std::size_t i = 0; i * m < n; ++i) c[i * m] = x[i];
  return Series::from_residues(a.ring(), std::move(c));
}

Series shift(const Series& a, std::size_t s) {
  const std::size_t n = a.order();
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    std::vector<Integer> c(n);
    for (std::size_t i = s; i < n; ++i) c[i] = x[i - s];
    return Series::from_integers(a.ring(), std::move(c));
  }
  auto x = a.residues();
  std::vector<std::uint64_t> c(n, 0);
  for (std::size_t i = s; i < n; ++i) c[i] = x[i - s];
  return Series::from_residues(a.ring(), std::move(c));
}

Series truncate(const Series& a, std::size_t order) {
  order = std::min(order, a.order());
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    return Series::from_integers(a.ring(), std::vector<Integer>(x.begin(), x.begin() + order));
  }
  auto x = a.residues();
  return Series::from_residues(a.ring(),
                               std::vector<std::uint64_t>(x.begin(), x.begin() + order));
}

Series reduce_mod(const Series& a, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("reduce_mod: modulus must be >= 2");
  const auto ring = CoeffRing::modulo(m);
  if (a.ring().exact()) {
    auto x = a.exact_coeffs();
    std::vector<std::uint64_t> c(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) c[i] = residue_of(x[i], m);
    return Series::from_residues(ring, std::move(c));
  }
  if (a.ring().modulus() % m != 0) {
    throw std::invalid_argument("reduce_mod: " + a.ring().name() +
                                " does not reduce to ZZ/" + std::to_string(m));
  }
  auto x = a.residues();
  return Series::from_residues(ring, std::vector<std::uint64_t>(x.begin(), x.end()));
}

std::string to_string(const Series& a, std::size_t max_terms) {
  std::ostringstream os;
  std::size_t shown = 0;
  for (std::size_t i = 0; i < a.order() && shown < max_terms; ++i) {
    Integer c = a.coefficient(i);
    if (sgn(c) == 0) continue;
    if (shown > 0) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    Integer mag = abs(c);
    if (i == 0 || mag != 1) os << mag;
    if (i > 0) os << "q" << (i > 1 ? "^" + std::to_string(i) : "");
    ++shown;
  }
  if (shown == 0) os << "0";
  os << " + O(q^" << a.order() << ")";
  if (!a.ring().exact()) os << " over " << a.ring().name();
  return os.str();
}

}  // namespace spt2
