#pragma once

// Identity fixtures: one claim per line,
//
//   name : LHS == RHS [mod M] [order N] [xfail]
//
// where each side is an operand followed by optional pipeline stages
// "| dissect m r". Operands are expression-language strings, spt2
// progressions "spt2(a n + b)", or sparse theta sums "sum[phi(q)]",
// "sum[phi(-q)]", "sum[psi(q)]", "sum[psi(-q)]", "sum[f1^3]". `order` is the
// number of coefficients compared after the pipeline. `#` starts a comment.

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spt2/dissect.hpp"
#include "spt2/spt.hpp"

namespace spt2 {

inline constexpr std::size_t kDefaultFixtureOrder = 150;

class FixtureError : public std::runtime_error {
 public:
  FixtureError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class SumKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus, CubeF1 };

struct FixtureOperand {
  enum class Kind { Expression, Progression, Sum };
  Kind kind = Kind::Expression;
  std::string text;
  ProductExpr expr;          // Expression
  std::size_t step = 1;      // Progression: spt2(step*n + offset)
  std::size_t offset = 0;
  SumKind sum = SumKind::PhiPlus;
};

struct FixtureSide {
  FixtureOperand operand;
  std::vector<DissectionSpec> stages;
};

struct Fixture {
  std::string name;
  FixtureSide lhs;
  FixtureSide rhs;
  std::uint64_t modulus = 0;
  std::size_t order = kDefaultFixtureOrder;
  bool expect_fail = false;
  std::size_t line = 0;
};

std::vector<Fixture> parse_fixtures(std::string_view text);
const std::vector<Fixture>& builtin_fixtures();
std::string_view builtin_fixture_text();

// Length of the source series a side must be expanded to so that `order`
// coefficients survive its dissection stages.
std::size_t source_order(const FixtureSide& side, std::size_t order);

// Largest spt2 index the fixture reads at the given order, if it reads any.
std::optional<std::size_t> spt2_index_needed(const Fixture& f, std::size_t order);

// Supplies spt2(0 .. L-1) in a given ring, from an exact table when one is
// large enough and otherwise from the generating function in that ring.
class Spt2Source {
 public:
  explicit Spt2Source(const Spt2Table* table = nullptr) : table_(table) {}
  Series prefix(CoeffRing ring, std::size_t length);

 private:
  const Spt2Table* table_;
  std::mutex mutex_;
  std::map<std::uint64_t, Series> computed_;
};

Series evaluate_side(const FixtureSide& side, CoeffRing ring, std::size_t order,
                     Spt2Source& spt2);

// Raw comparison result; expect_fail is interpreted by the caller.
CheckReport run_fixture(const Fixture& f, Spt2Source& spt2,
                        std::optional<std::size_t> order_override = std::nullopt);

}  // namespace spt2
