#pragma once

// spt2(n): the number of smallest parts in the overpartitions of n whose
// smallest part is even and not overlined. Two independent oracles: brute-force
// enumeration of overpartitions, and a generating function summed over the
// smallest part.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spt2/series.hpp"

namespace spt2 {

inline constexpr int kDefaultEnumerationLimit = 40;

class EnumerationLimitExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class TableTooSmall : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct Overpartition {
  std::vector<int> parts;      // nonincreasing
  std::vector<int> overlined;  // increasing, each a distinct value of parts

  int size() const;
  friend bool operator==(const Overpartition&, const Overpartition&) = default;
  friend auto operator<=>(const Overpartition&, const Overpartition&) = default;
};

// Calls visit once for every overpartition of n. The reference is only valid
// during the call.
void for_each_overpartition(int n, const std::function<void(const Overpartition&)>& visit,
                            int limit = kDefaultEnumerationLimit);
std::vector<Overpartition> enumerate_overpartitions(int n, int limit = kDefaultEnumerationLimit);

// Multiplicity of the smallest part if it is even and not overlined, else 0.
int spt2_weight(const Overpartition& p);
Integer spt2_enum(int n, int limit = kDefaultEnumerationLimit);

// sum_{s even} q^s/(1-q^s)^2 * prod_{j>s} (1+q^j)/(1-q^j), truncated to order.
Series spt2_series(std::size_t order, CoeffRing ring = CoeffRing::integers());

enum class Oracle { Enumeration, GenFunc };

const char* to_string(Oracle o);

struct Spt2Table {
  std::vector<Integer> values;  // values[n] = spt2(n), n = 0 .. N
  Oracle oracle = Oracle::GenFunc;

  std::size_t max_index() const { return values.empty() ? 0 : values.size() - 1; }
  const Integer& operator[](std::size_t n) const;
};

Spt2Table build_table(std::size_t max_index);
Spt2Table build_table_by_enumeration(int max_index, int limit = kDefaultEnumerationLimit);
Spt2Table truncate_table(const Spt2Table& t, std::size_t max_index);

// Series whose n-th coefficient is spt2(step*n + offset), n < order.
Series progression_series(const Spt2Table& t, std::size_t step, std::size_t offset,
                          std::size_t order, CoeffRing ring = CoeffRing::integers());

}  // namespace spt2
