#pragma once

// JSON-lines and plain-text renderings of verifier reports.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spt2/dissect.hpp"
#include "spt2/verify.hpp"

namespace spt2 {

using Json = nlohmann::ordered_json;

// A JSON number when it fits in int64, otherwise a decimal string.
Json integer_json(const Integer& z);

// status is "pass", "fail", "xfail" or "xpass".
Json fixture_json(const CheckReport& r, const std::string& status);
Json claim_json(const ClaimReport& r);
Json family_json(const FamilyReport& r);
Json induction_json(const InductionStepReport& r);
Json prime_family_json(const PrimeFamilyReport& r);
Json scan_hit_json(const ScanHit& h);

// Column-aligned table; the first row is the header.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header);
  void add_row(std::vector<std::string> row);
  void render(std::ostream& out) const;

 private:
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace spt2
