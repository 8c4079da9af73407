#include "spt2/spt.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace spt2 {

int Overpartition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

namespace {

void check_limit(int n, int limit) {
  if (n < 0) throw std::invalid_argument("overpartitions: n must be nonnegative");
  if (n > limit) {
    throw EnumerationLimitExceeded("overpartitions: n = " + std::to_string(n) +
                                   " exceeds the enumeration limit " + std::to_string(limit));
  }
}

struct Enumerator {
  const std::function<void(const Overpartition&)>& visit;
  Overpartition current;
  std::vector<int> distinct;

  void emit() {
    distinct.clear();
    for (auto it = current.parts.rbegin(); it != current.parts.rend(); ++it) {
      if (distinct.empty() || distinct.back() != *it) distinct.push_back(*it);
    }
    const std::size_t d = distinct.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
      current.overlined.clear();
      for (std::size_t i = 0; i < d; ++i) {
        if (mask >> i & 1u) current.overlined.push_back(distinct[i]);
      }
      visit(current);
    }
  }

  // Appends parts of size at most max_part summing to remaining.
  void partitions(int remaining, int max_part) {
    if (remaining == 0) {
      emit();
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.parts.push_back(p);
      partitions(remaining - p, p);
      current.parts.pop_back();
    }
  }
};

// Multiplies c (length L) in place by 1/(1 - q^s).
template <typename T, typename AddTo>
void divide_one_minus(std::vector<T>& c, std::size_t s, AddTo add_to) {
  for (std::size_t n = s; n < c.size(); ++n) add_to(c[n], c[n - s]);
}

// Multiplies c in place by (1 + q^s).
template <typename T, typename AddTo>
void multiply_one_plus(std::vector<T>& c, std::size_t s, AddTo add_to) {
  for (std::size_t n = c.size(); n-- > s;) add_to(c[n], c[n - s]);
}

template <typename T, typename AddTo>
std::vector<T> smallest_part_sum(std::size_t order, T zero, T one, AddTo add_to) {
  std::vector<T> tail(order, zero);  // prod_{j>s} (1+q^j)/(1-q^j)
  std::vector<T> result(order, zero);
  std::vector<T> term(order, zero);
  if (order > 0) tail[0] = one;
  for (std::size_t s = order; s-- > 1;) {
    if (s % 2 == 0) {
      // q^s/(1-q^s)^2 * tail, restricted to exponents >= s.
      for (std::size_t n = s; n < order; ++n) term[n] = tail[n - s];
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t n = 2 * s; n < order; ++n) add_to(term[n], term[n - s]);
      }
      for (std::size_t n = s; n < order; ++n) add_to(result[n], term[n]);
    }
    multiply_one_plus(tail, s, add_to);
    divide_one_minus(tail, s, add_to);
  }
  return result;
}

}  // namespace

void for_each_overpartition(int n, const std::function<void(const Overpartition&)>& visit,
                            int limit) {
  check_limit(n, limit);
  Enumerator e{visit, {}, {}};
  e.partitions(n, n);
}

std::vector<Overpartition> enumerate_overpartitions(int n, int limit) {
  std::vector<Overpartition> out;
  for_each_overpartition(n, [&out](const Overpartition& p) { out.push_back(p); }, limit);
  return out;
}

int spt2_weight(const Overpartition& p) {
  if (p.parts.empty()) return 0;
  const int smallest = p.parts.back();
  if (smallest % 2 != 0) return 0;
  if (!p.overlined.empty() && p.overlined.front() == smallest) return 0;
  return static_cast<int>(std::count(p.parts.begin(), p.parts.end(), smallest));
}

Integer spt2_enum(int n, int limit) {
  Integer total = 0;
  for_each_overpartition(n, [&total](const Overpartition& p) { total += spt2_weight(p); }, limit);
  return total;
}

Series spt2_series(std::size_t order, CoeffRing ring) {
  if (order == 0) throw std::invalid_argument("spt2_series: order must be >= 1");
  if (ring.exact()) {
    auto v = smallest_part_sum<Integer>(order, Integer(0), Integer(1),
                                        [](Integer& a, const Integer& b) { a += b; });
    return Series::from_integers(ring, std::move(v));
  }
  const std::uint64_t m = ring.modulus();
  auto v = smallest_part_sum<std::uint64_t>(
      order, 0, 1 % m, [m](std::uint64_t& a, std::uint64_t b) { a = a >= m - b ? a - (m - b) : a + b; });
  return Series::from_residues(ring, std::move(v));
}

const char* to_string(Oracle o) {
  return o == Oracle::Enumeration ? "enumeration" : "genfunc";
}

const Integer& Spt2Table::operator[](std::size_t n) const {
  if (n >= values.size()) {
    throw TableTooSmall("spt2 table: index " + std::to_string(n) + " beyond N = " +
                        std::to_string(max_index()));
  }
  return values[n];
}

Spt2Table build_table(std::size_t max_index) {
  Series s = spt2_series(max_index + 1);
  return Spt2Table{s.coefficients(), Oracle::GenFunc};
}

Spt2Table build_table_by_enumeration(int max_index, int limit) {
  check_limit(max_index, limit);
  Spt2Table t;
  t.oracle = Oracle::Enumeration;
  for (int n = 0; n <= max_index; ++n) t.values.push_back(spt2_enum(n, limit));
  return t;
}

Spt2Table truncate_table(const Spt2Table& t, std::size_t max_index) {
  if (max_index > t.max_index()) {
    throw TableTooSmall("truncate_table: table has N = " + std::to_string(t.max_index()));
  }
  return Spt2Table{std::vector<Integer>(t.values.begin(), t.values.begin() + max_index + 1),
                   t.oracle};
}

Series progression_series(const Spt2Table& t, std::size_t step, std::size_t offset,
                          std::size_t order, CoeffRing ring) {
  if (step == 0) throw std::invalid_argument("progression_series: step must be >= 1");
  if (order > 0 && step * (order - 1) + offset > t.max_index()) {
    throw TableTooSmall("progression_series: spt2(" + std::to_string(step) + "n+" +
                        std::to_string(offset) + ") to order " + std::to_string(order) +
                        " needs N >= " + std::to_string(step * (order - 1) + offset) +
                        ", table has N = " + std::to_string(t.max_index()));
  }
  std::vector<Integer> c(order);
  for (std::size_t n = 0; n < order; ++n) c[n] = t.values[step * n + offset];
  return Series::from_integers(ring, std::move(c));
}

}  // namespace spt2
