#include "spt2/arith.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spt2 {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

QuadFormWitness search(std::uint64_t n, bool odd_only) {
  QuadFormWitness w{n, std::nullopt};
  for (std::uint64_t x = 0; x * x <= n; ++x) {
    if (odd_only && x % 2 == 0) continue;
    const std::uint64_t rest = n - x * x;
    if (rest % 2 != 0) continue;
    const std::uint64_t y = isqrt(rest / 2);
    if (y * y != rest / 2) continue;
    if (odd_only && y % 2 == 0) continue;
    w.rep.emplace(x, y);
    break;
  }
  return w;
}

}  // namespace

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) {
    throw std::domain_error("jacobi: n must be odd and positive, got " + std::to_string(n));
  }
  // Work with a mod n in [0, n); (a/n) depends only on a mod n.
  std::int64_t x = a % n;
  if (x < 0) x += n;
  std::int64_t m = n;
  int result = 1;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

int padic_valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("padic_valuation: n must be positive");
  if (!is_prime(p)) throw std::domain_error("padic_valuation: " + std::to_string(p) + " is not prime");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

QuadFormWitness represent_x2_2y2(std::uint64_t n) { return search(n, false); }

QuadFormWitness represent_x2_2y2_odd(std::uint64_t n) { return search(n, true); }

}  // namespace spt2
