#pragma once

// Elementary number theory behind the prime-power family: the Jacobi symbol,
// p-adic valuations and representations by x^2 + 2y^2.

#include <cstdint>
#include <optional>
#include <utility>

namespace spt2 {

// (a/n) for odd n >= 1, by quadratic reciprocity. Throws std::domain_error otherwise.
int jacobi(std::int64_t a, std::int64_t n);

// Largest e with p^e | n. Requires n >= 1 and p prime.
int padic_valuation(std::uint64_t n, std::uint64_t p);

bool is_prime(std::uint64_t n);

struct QuadFormWitness {
  std::uint64_t n = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> rep;  // x^2 + 2y^2 = n

  bool representable() const { return rep.has_value(); }
};

// Exhaustive search over x <= sqrt(n); returns the representation with the smallest x.
QuadFormWitness represent_x2_2y2(std::uint64_t n);

// Representation with x and y both odd, if any.
QuadFormWitness represent_x2_2y2_odd(std::uint64_t n);

}  // namespace spt2
