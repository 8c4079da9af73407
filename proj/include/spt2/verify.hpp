#pragma once

// Congruence claims spt2(a n + b) = 0 (mod M) and their verifiers: single
// progressions, the 2^j-scaled families, the prime-power family, a scanner
// for new progressions, and a replay of the induction step used for the
// families.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spt2/spt.hpp"

namespace spt2 {

class InvalidClaim : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CongruenceClaim {
  std::uint64_t step = 1;    // a
  std::uint64_t offset = 0;  // b
  std::uint64_t modulus = 4;
  std::uint64_t n_max = 0;

  std::uint64_t largest_argument() const { return step * n_max + offset; }
  friend bool operator==(const CongruenceClaim&, const CongruenceClaim&) = default;
};

struct Violation {
  std::uint64_t n = 0;
  std::uint64_t value_mod = 0;
};

struct ClaimReport {
  CongruenceClaim claim;
  std::string label;
  bool pass = false;
  std::uint64_t witnesses_checked = 0;
  std::vector<Violation> violations;
};

ClaimReport verify_claim(const CongruenceClaim& c, const Spt2Table& t, std::string label = {});

// a(j) = base_step * 2^j, b(j) = base_offset * 2^j.
struct FamilyClaim {
  std::string name;
  std::uint64_t base_step = 1;
  std::uint64_t base_offset = 0;
  unsigned j_max = 0;
  std::uint64_t n_max = 0;
  std::uint64_t modulus = 4;

  CongruenceClaim instance(unsigned j) const;
};

struct FamilyReport {
  FamilyClaim family;
  bool pass = false;
  std::vector<ClaimReport> instances;  // index j
};

FamilyReport verify_family(const FamilyClaim& f, const Spt2Table& t);

// The six 2^j families in a fixed order, with the given bounds.
std::vector<FamilyClaim> theorem2_families(unsigned j_max, std::uint64_t n_max);

struct InductionRow {
  std::uint64_t n = 0;
  std::uint64_t argument = 0;  // A, the (j+1)-instance argument
  bool u_integral = false;
  std::uint64_t u = 0;                 // (A - 10) / 16 when integral
  bool lower_is_instance = false;      // 8u + 5 equals the j-instance argument
  bool internal_congruence = false;    // spt2(16u+10) = spt2(8u+5) (mod 4)
  bool doubling = false;               // spt2(A) = spt2(A/2) (mod 4)
};

enum class InductionStatus { Pass, Fail, Invalid };

const char* to_string(InductionStatus s);

struct InductionStepReport {
  std::string family;
  unsigned j = 0;
  InductionStatus status = InductionStatus::Invalid;
  std::string reason;
  std::vector<InductionRow> rows;
  bool doubling_holds = false;
};

// Replays the induction step from instance j to j+1 for n <= n_max: writes
// A = 16u + 10, requires u integral and 8u + 5 equal to the j-instance
// argument, and checks spt2(16u+10) = spt2(8u+5) (mod 4). Non-integral u
// yields status Invalid. Also records whether spt2(A) = spt2(A/2) (mod 4).
InductionStepReport verify_induction_step(const FamilyClaim& f, unsigned j, std::uint64_t n_max,
                                          const Spt2Table& t);

struct PrimeFamilyClaim {
  std::uint64_t p = 5;
  unsigned k_max = 0;
  std::uint64_t m_max = 10;
  std::uint64_t modulus = 4;
};

struct PrimeInstance {
  unsigned k = 0;
  std::uint64_t m = 0;
  std::uint64_t argument = 0;    // 32 p^{2k+1} m + 24 p^{2k+2}
  std::uint64_t n_prime = 0;     // (argument - 24) / 32
  std::uint64_t form_value = 0;  // 4 n' + 3 = p^{2k+1} (4m + 3p)
  std::uint64_t value_mod = 0;
  bool congruence = false;
  bool representable = false;    // 4n'+3 = x^2 + 2y^2
  int valuation = 0;             // nu_p(4n'+3)
  bool pass = false;
};

struct PrimeFamilyReport {
  PrimeFamilyClaim claim;
  bool pass = false;
  std::vector<PrimeInstance> instances;
};

// Throws InvalidClaim unless p is prime with p = 5 or 7 (mod 8).
void validate_prime_family(const PrimeFamilyClaim& f);
PrimeFamilyReport verify_prime_family(const PrimeFamilyClaim& f, const Spt2Table& t);
std::uint64_t prime_family_largest_argument(const PrimeFamilyClaim& f);

struct ScanHit {
  CongruenceClaim claim;  // n_max = largest n covered by the table
  std::optional<std::pair<std::uint64_t, std::uint64_t>> subsumed_by;
};

// All (a, b) with a <= a_max, b < a, at least n_min witnesses, and
// spt2(a n + b) = 0 (mod M) for every n the table covers. Sorted by (a, b).
std::vector<ScanHit> scan(std::uint64_t modulus, std::uint64_t a_max, std::uint64_t n_min,
                          const Spt2Table& t, unsigned threads = 1);

// Flags (a, b) when another hit (a', b') has a' < a, a' | a and b = b' (mod a').
void flag_subsumed(std::vector<ScanHit>& hits);

// Progressions from the literature: mod 3, mod 5 and the three mod-4 ones.
std::vector<std::pair<std::string, CongruenceClaim>> prior_claims(std::uint64_t max_argument);
std::vector<std::pair<std::string, CongruenceClaim>> theorem1_claims(std::uint64_t n_max);

}  // namespace spt2
