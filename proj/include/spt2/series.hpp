#pragma once

// Truncated formal power series in q with exact integer coefficients or
// machine-word residues modulo M.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace spt2 {

using Integer = mpz_class;

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class OutOfTruncation : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Coefficient ring: ZZ when modulus() == 0, otherwise ZZ/MZZ with 2 <= M < 2^64.
class CoeffRing {
 public:
  constexpr CoeffRing() = default;

  static constexpr CoeffRing integers() { return CoeffRing{}; }
  static CoeffRing modulo(std::uint64_t m);

  constexpr bool exact() const { return modulus_ == 0; }
  constexpr std::uint64_t modulus() const { return modulus_; }

  std::string name() const;

  friend constexpr bool operator==(CoeffRing, CoeffRing) = default;

 private:
  explicit constexpr CoeffRing(std::uint64_t m) : modulus_(m) {}
  std::uint64_t modulus_ = 0;
};

// Immutable value type. Coefficients for exponents 0 .. order()-1 are known
// exactly; nothing is known beyond. Exact series keep GMP integers, modular
// series keep residues in [0, M).
class Series {
 public:
  Series() = default;
  Series(CoeffRing ring, std::size_t order);

  static Series from_integers(CoeffRing ring, std::vector<Integer> coeffs);
  static Series from_integers(CoeffRing ring, std::initializer_list<long> coeffs);
  static Series from_residues(CoeffRing ring, std::vector<std::uint64_t> residues);
  // Zero series of the given order with the listed (exponent, coeff) terms
  // added in; exponents at or above order are dropped.
  static Series from_terms(CoeffRing ring, std::size_t order,
                           std::span<const std::pair<std::size_t, Integer>> terms);
  static Series one(CoeffRing ring, std::size_t order);

  CoeffRing ring() const { return ring_; }
  std::size_t order() const { return order_; }

  Integer coefficient(std::size_t n) const;
  std::vector<Integer> coefficients() const;
  bool is_zero() const;

  // Raw storage; exact_coeffs() requires ring().exact(), residues() the opposite.
  std::span<const Integer> exact_coeffs() const;
  std::span<const std::uint64_t> residues() const;

  friend bool operator==(const Series& a, const Series& b);

 private:
  CoeffRing ring_;
  std::size_t order_ = 0;
  std::vector<Integer> exact_;
  std::vector<std::uint64_t> residues_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& a);
Series scale(const Series& a, const Integer& c);

// Cauchy product truncated to min(a.order(), b.order()). Dispatches to the
// Kronecker-substitution path above a size threshold; the two are required to
// agree bit for bit.
Series mul(const Series& a, const Series& b);
Series mul_schoolbook(const Series& a, const Series& b);
Series mul_kronecker(const Series& a, const Series& b);

// Multiplicative inverse; the constant term must be a unit of the ring.
Series invert(const Series& a);
Series pow(const Series& a, unsigned exponent);

// Sum c_n q^n  ->  Sum c_n q^{mn}, same order.
Series substitute_power(const Series& a, std::size_t m);
// Multiply by q^s, keeping the order.
Series shift(const Series& a, std::size_t s);
Series truncate(const Series& a, std::size_t order);
Series reduce_mod(const Series& a, std::uint64_t m);

inline Integer coefficient(const Series& a, std::size_t n) { return a.coefficient(n); }

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return negate(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

std::string to_string(const Series& a, std::size_t max_terms = 12);

}  // namespace spt2
