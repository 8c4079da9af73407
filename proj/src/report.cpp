#include "spt2/report.hpp"

#include <algorithm>
#include <limits>

namespace spt2 {

Json integer_json(const Integer& z) {
  if (z >= std::numeric_limits<long>::min() && z <= std::numeric_limits<long>::max()) {
    return static_cast<std::int64_t>(z.get_si());
  }
  return z.get_str();
}

Json fixture_json(const CheckReport& r, const std::string& status) {
  Json j;
  j["name"] = r.name;
  j["status"] = status;
  if (r.first_bad_exponent) j["first_bad_exponent"] = *r.first_bad_exponent;
  if (r.lhs_coeff) j["lhs_coeff"] = integer_json(*r.lhs_coeff);
  if (r.rhs_coeff) j["rhs_coeff"] = integer_json(*r.rhs_coeff);
  j["order"] = r.order;
  j["modulus"] = r.modulus;
  return j;
}

namespace {

Json claim_header(const CongruenceClaim& c) {
  return Json{{"a", c.step}, {"b", c.offset}, {"M", c.modulus}};
}

}  // namespace

Json claim_json(const ClaimReport& r) {
  Json j;
  if (!r.label.empty()) j["label"] = r.label;
  j["claim"] = claim_header(r.claim);
  j["status"] = r.pass ? "pass" : "fail";
  j["n_max"] = r.claim.n_max;
  j["witnesses_checked"] = r.witnesses_checked;
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back(Json{{"n", x.n}, {"value_mod_M", x.value_mod}});
  j["violations"] = std::move(v);
  return j;
}

Json family_json(const FamilyReport& r) {
  Json j;
  j["family"] = r.family.name;
  j["a0"] = r.family.base_step;
  j["b0"] = r.family.base_offset;
  j["M"] = r.family.modulus;
  j["j_max"] = r.family.j_max;
  j["n_max"] = r.family.n_max;
  j["status"] = r.pass ? "pass" : "fail";
  Json inst = Json::array();
  for (const auto& c : r.instances) inst.push_back(claim_json(c));
  j["instances"] = std::move(inst);
  return j;
}

Json induction_json(const InductionStepReport& r) {
  Json j;
  j["family"] = r.family;
  j["j"] = r.j;
  j["status"] = to_string(r.status);
  if (!r.reason.empty()) j["reason"] = r.reason;
  j["doubling_holds"] = r.doubling_holds;
  Json rows = Json::array();
  for (const auto& x : r.rows) {
    Json row{{"n", x.n}, {"A", x.argument}, {"u_integral", x.u_integral}};
    if (x.u_integral) {
      row["u"] = x.u;
      row["lower_is_instance"] = x.lower_is_instance;
      row["internal_congruence"] = x.internal_congruence;
    }
    row["doubling"] = x.doubling;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Json prime_family_json(const PrimeFamilyReport& r) {
  Json j;
  j["p"] = r.claim.p;
  j["k_max"] = r.claim.k_max;
  j["m_max"] = r.claim.m_max;
  j["M"] = r.claim.modulus;
  j["status"] = r.pass ? "pass" : "fail";
  Json inst = Json::array();
  for (const auto& x : r.instances) {
    inst.push_back(Json{{"k", x.k},
                        {"m", x.m},
                        {"argument", x.argument},
                        {"form_value", x.form_value},
                        {"value_mod_M", x.value_mod},
                        {"representable", x.representable},
                        {"valuation", x.valuation},
                        {"status", x.pass ? "pass" : "fail"}});
  }
  j["instances"] = std::move(inst);
  return j;
}

Json scan_hit_json(const ScanHit& h) {
  Json j;
  j["claim"] = claim_header(h.claim);
  j["witnesses_checked"] = h.claim.n_max + 1;
  if (h.subsumed_by) {
    j["subsumed_by"] = Json{{"a", h.subsumed_by->first}, {"b", h.subsumed_by->second}};
  } else {
    j["subsumed_by"] = nullptr;
  }
  return j;
}

TextTable::TextTable(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

void TextTable::add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

void TextTable::render(std::ostream& out) const {
  std::vector<std::size_t> width;
  for (const auto& row : rows_) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : rows_) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    line.erase(line.find_last_not_of(' ') + 1);
    out << line << '\n';
  }
}

}  // namespace spt2
