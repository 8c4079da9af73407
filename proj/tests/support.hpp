#pragma once

#include <cstdint>
#include <random>

#include "spt2/series.hpp"
#include "spt2/spt.hpp"

namespace testsupport {

// Set from --seed by test_main.cpp.
std::uint64_t seed();
void set_seed(std::uint64_t s);

// Shared exact table, built on first use.
const spt2::Spt2Table& table_10000();

inline spt2::Integer random_integer(std::mt19937_64& rng, int bits) {
  spt2::Integer z = 0;
  for (int b = 0; b < bits; b += 32) {
    z <<= 32;
    z += static_cast<unsigned long>(rng() & 0xffffffffu);
  }
  if (bits % 32) z >>= (32 - bits % 32);
  if (rng() & 1) z = -z;
  return z;
}

// Random series over ring with coefficients of up to `bits` bits; about a
// quarter of the coefficients are zero to exercise sparse paths.
inline spt2::Series random_series(std::mt19937_64& rng, spt2::CoeffRing ring, std::size_t order,
                                  int bits = 40) {
  std::vector<spt2::Integer> c(order);
  for (auto& x : c) {
    if (rng() % 4 == 0) continue;
    x = random_integer(rng, 1 + static_cast<int>(rng() % bits));
  }
  return spt2::Series::from_integers(ring, std::move(c));
}

// Random series whose constant term is +-1, hence a unit in every ring.
inline spt2::Series random_unit_series(std::mt19937_64& rng, spt2::CoeffRing ring,
                                       std::size_t order, int bits = 12) {
  std::vector<spt2::Integer> c(order);
  for (std::size_t i = 1; i < order; ++i) c[i] = random_integer(rng, 1 + static_cast<int>(rng() % bits));
  c[0] = (rng() & 1) ? 1 : -1;
  return spt2::Series::from_integers(ring, std::move(c));
}

}  // namespace testsupport
