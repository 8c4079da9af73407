#include "spt2/verify.hpp"

#include <algorithm>
#include <thread>

#include "spt2/arith.hpp"

namespace spt2 {

namespace {

std::uint64_t residue(const Integer& z, std::uint64_t m) { return mpz_fdiv_ui(z.get_mpz_t(), m); }

void require_covered(const Spt2Table& t, std::uint64_t argument, const std::string& what) {
  if (argument > t.max_index()) {
    throw TableTooSmall(what + " needs spt2(" + std::to_string(argument) + "), table has N = " +
                        std::to_string(t.max_index()));
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  if (p >> 64) throw std::overflow_error("argument overflows 64 bits");
  return static_cast<std::uint64_t>(p);
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

}  // namespace

// ---- single progressions ------------------------------------------------------

ClaimReport verify_claim(const CongruenceClaim& c, const Spt2Table& t, std::string label) {
  if (c.step < 1 || c.modulus < 2) throw InvalidClaim("claim needs a >= 1 and M >= 2");
  require_covered(t, c.largest_argument(), "claim " + std::to_string(c.step) + "n+" +
                                                std::to_string(c.offset));
  ClaimReport rep{c, std::move(label), false, c.n_max + 1, {}};
  for (std::uint64_t n = 0; n <= c.n_max; ++n) {
    const auto r = residue(t.values[c.step * n + c.offset], c.modulus);
    if (r != 0) rep.violations.push_back({n, r});
  }
  rep.pass = rep.violations.empty();
  return rep;
}

// ---- 2^j families -------------------------------------------------------------

CongruenceClaim FamilyClaim::instance(unsigned j) const {
  const std::uint64_t scale = ipow(2, j);
  return {checked_mul(base_step, scale), checked_mul(base_offset, scale), modulus, n_max};
}

FamilyReport verify_family(const FamilyClaim& f, const Spt2Table& t) {
  require_covered(t, f.instance(f.j_max).largest_argument(), "family " + f.name);
  FamilyReport rep{f, true, {}};
  for (unsigned j = 0; j <= f.j_max; ++j) {
    rep.instances.push_back(verify_claim(f.instance(j), t, f.name + " j=" + std::to_string(j)));
    rep.pass = rep.pass && rep.instances.back().pass;
  }
  return rep;
}

std::vector<FamilyClaim> theorem2_families(unsigned j_max, std::uint64_t n_max) {
  // (name, a(0), b(0)) read off 2^{j+4} n + 7*2^{j+1}, 2^{j+2}*9 n + 15*2^{j+1}, ...
  const std::vector<std::tuple<const char*, std::uint64_t, std::uint64_t>> base{
      {"2j-16n14", 16, 14}, {"2j-36n30", 36, 30}, {"2j-48n34", 48, 34},
      {"2j-72n42", 72, 42}, {"2j-80n34", 80, 34}, {"2j-80n66", 80, 66}};
  std::vector<FamilyClaim> out;
  for (const auto& [name, a, b] : base) out.push_back({name, a, b, j_max, n_max, 4});
  return out;
}

const char* to_string(InductionStatus s) {
  switch (s) {
    case InductionStatus::Pass: return "pass";
    case InductionStatus::Fail: return "fail";
    case InductionStatus::Invalid: return "invalid";
  }
  return "invalid";
}

InductionStepReport verify_induction_step(const FamilyClaim& f, unsigned j, std::uint64_t n_max,
                                          const Spt2Table& t) {
  const CongruenceClaim lower = f.instance(j);
  const CongruenceClaim upper = f.instance(j + 1);
  require_covered(t, upper.step * n_max + upper.offset, "induction step " + f.name);

  InductionStepReport rep;
  rep.family = f.name;
  rep.j = j;
  rep.doubling_holds = true;
  bool all_integral = true;
  bool legs_pass = true;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    InductionRow row;
    row.n = n;
    row.argument = upper.step * n + upper.offset;
    const std::uint64_t lower_arg = lower.step * n + lower.offset;
    row.doubling = row.argument == 2 * lower_arg &&
                   residue(t.values[row.argument], 4) == residue(t.values[lower_arg], 4);
    rep.doubling_holds = rep.doubling_holds && row.doubling;
    row.u_integral = row.argument >= 10 && (row.argument - 10) % 16 == 0;
    if (row.u_integral) {
      row.u = (row.argument - 10) / 16;
      row.lower_is_instance = 8 * row.u + 5 == lower_arg;
      row.internal_congruence =
          residue(t.values[16 * row.u + 10], 4) == residue(t.values[8 * row.u + 5], 4);
      legs_pass = legs_pass && row.lower_is_instance && row.internal_congruence;
    } else if (all_integral) {
      all_integral = false;
      const std::int64_t num = static_cast<std::int64_t>(row.argument) - 10;
      rep.reason = "u = (A - 10)/16 = " + std::to_string(num) + "/16 is not an integer at n = " +
                   std::to_string(n) + " (A = " + std::to_string(row.argument) + ")";
    }
    rep.rows.push_back(row);
  }
  if (!all_integral) {
    rep.status = InductionStatus::Invalid;
  } else if (!legs_pass) {
    rep.status = InductionStatus::Fail;
    rep.reason = "a congruence leg failed";
  } else {
    rep.status = InductionStatus::Pass;
  }
  return rep;
}

// ---- prime-power family -------------------------------------------------------

void validate_prime_family(const PrimeFamilyClaim& f) {
  if (f.p % 8 != 5 && f.p % 8 != 7) {
    throw InvalidClaim("p must be ≡ 5 or 7 (mod 8), got p = " + std::to_string(f.p));
  }
  if (!is_prime(f.p)) throw InvalidClaim("p must be prime, got p = " + std::to_string(f.p));
}

std::uint64_t prime_family_largest_argument(const PrimeFamilyClaim& f) {
  validate_prime_family(f);
  std::uint64_t m = f.m_max;
  while (m > 0 && m % f.p == 0) --m;
  if (m == 0) return 0;
  const std::uint64_t odd = ipow(f.p, 2 * f.k_max + 1);
  return checked_mul(checked_mul(32, odd), m) + checked_mul(24, checked_mul(odd, f.p));
}

PrimeFamilyReport verify_prime_family(const PrimeFamilyClaim& f, const Spt2Table& t) {
  validate_prime_family(f);
  require_covered(t, prime_family_largest_argument(f), "prime family p = " + std::to_string(f.p));
  PrimeFamilyReport rep{f, true, {}};
  for (unsigned k = 0; k <= f.k_max; ++k) {
    const std::uint64_t odd = ipow(f.p, 2 * k + 1);
    for (std::uint64_t m = 1; m <= f.m_max; ++m) {
      if (m % f.p == 0) continue;
      PrimeInstance in;
      in.k = k;
      in.m = m;
      in.argument = checked_mul(checked_mul(32, odd), m) + checked_mul(24, checked_mul(odd, f.p));
      in.n_prime = (in.argument - 24) / 32;
      in.form_value = 4 * in.n_prime + 3;
      in.value_mod = residue(t.values[in.argument], f.modulus);
      in.congruence = in.value_mod == 0;
      in.representable = represent_x2_2y2(in.form_value).representable();
      in.valuation = padic_valuation(in.form_value, f.p);
      in.pass = in.congruence && !in.representable && in.valuation % 2 == 1 &&
                in.form_value == checked_mul(odd, 4 * m + 3 * f.p);
      rep.pass = rep.pass && in.pass;
      rep.instances.push_back(in);
    }
  }
  return rep;
}

// ---- scanner ------------------------------------------------------------------

void flag_subsumed(std::vector<ScanHit>& hits) {
  std::sort(hits.begin(), hits.end(), [](const ScanHit& x, const ScanHit& y) {
    return std::pair(x.claim.step, x.claim.offset) < std::pair(y.claim.step, y.claim.offset);
  });
  for (auto& h : hits) {
    h.subsumed_by.reset();
    for (const auto& g : hits) {
      if (g.claim.step >= h.claim.step) break;
      if (h.claim.step % g.claim.step == 0 && h.claim.offset % g.claim.step == g.claim.offset) {
        h.subsumed_by.emplace(g.claim.step, g.claim.offset);
        break;
      }
    }
  }
}

std::vector<ScanHit> scan(std::uint64_t modulus, std::uint64_t a_max, std::uint64_t n_min,
                          const Spt2Table& t, unsigned threads) {
  if (modulus < 2) throw InvalidClaim("scan: modulus must be >= 2");
  const std::uint64_t N = t.max_index();
  if (a_max < 1 || N < checked_mul(a_max, n_min)) {
    throw TableTooSmall("scan: table N = " + std::to_string(N) + " does not cover a_max * n_min = " +
                        std::to_string(a_max * n_min));
  }
  std::vector<std::uint64_t> res(t.values.size());
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = residue(t.values[i], modulus);

  threads = std::max(1u, threads);
  std::vector<std::vector<ScanHit>> partial(threads);
  auto work = [&](unsigned id) {
    for (std::uint64_t a = 1 + id; a <= a_max; a += threads) {
      for (std::uint64_t b = 0; b < a && b <= N; ++b) {
        const std::uint64_t last = (N - b) / a;
        if (last + 1 < n_min) continue;
        bool ok = true;
        for (std::uint64_t n = 0; n <= last && ok; ++n) ok = res[a * n + b] == 0;
        if (ok) partial[id].push_back({{a, b, modulus, last}, std::nullopt});
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  std::vector<ScanHit> hits;
  for (auto& p : partial) hits.insert(hits.end(), p.begin(), p.end());
  flag_subsumed(hits);
  return hits;
}

// ---- claim catalogues -----------------------------------------------------------

namespace {

std::vector<std::pair<std::string, CongruenceClaim>> up_to(
    std::initializer_list<std::tuple<const char*, std::uint64_t, std::uint64_t, std::uint64_t>> items,
    std::uint64_t max_argument) {
  std::vector<std::pair<std::string, CongruenceClaim>> out;
  for (const auto& [name, a, b, m] : items) {
    out.emplace_back(name, CongruenceClaim{a, b, m, max_argument >= b ? (max_argument - b) / a : 0});
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::string, CongruenceClaim>> prior_claims(std::uint64_t max_argument) {
  return up_to({{"3n-mod3", 3, 0, 3},
                {"3n+1-mod3", 3, 1, 3},
                {"5n+3-mod5", 5, 3, 5},
                {"8n+3-mod4", 8, 3, 4},
                {"16n+14-mod4", 16, 14, 4},
                {"32n+28-mod4", 32, 28, 4}},
               max_argument);
}

std::vector<std::pair<std::string, CongruenceClaim>> theorem1_claims(std::uint64_t n_max) {
  std::vector<std::pair<std::string, CongruenceClaim>> out;
  for (const auto& [name, a, b] :
       std::initializer_list<std::tuple<const char*, std::uint64_t, std::uint64_t>>{
           {"36n30", 36, 30}, {"48n34", 48, 34}, {"64n56", 64, 56},
           {"72n42", 72, 42}, {"80n34", 80, 34}, {"80n66", 80, 66}}) {
    out.emplace_back(name, CongruenceClaim{a, b, 4, n_max});
  }
  return out;
}

}  // namespace spt2
