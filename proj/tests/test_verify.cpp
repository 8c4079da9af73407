#include <gtest/gtest.h>

#include "spt2/verify.hpp"
#include "support.hpp"

using namespace spt2;

namespace {

const Spt2Table& table() { return testsupport::table_10000(); }

bool contains(const std::vector<ScanHit>& hits, std::uint64_t a, std::uint64_t b) {
  return std::any_of(hits.begin(), hits.end(),
                     [&](const ScanHit& h) { return h.claim.step == a && h.claim.offset == b; });
}

ScanHit hit(std::uint64_t a, std::uint64_t b) { return ScanHit{{a, b, 4, 10}, std::nullopt}; }

}  // namespace

TEST(VerifyClaim, KnownCongruencesPass) {
  auto r = verify_claim({8, 3, 4, 500}, table());
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.witnesses_checked, 501u);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(verify_claim({64, 56, 4, 150}, table()).pass);
  EXPECT_TRUE(verify_claim({3, 0, 3, 3000}, table()).pass);
  EXPECT_TRUE(verify_claim({5, 3, 5, 1000}, table()).pass);
}

TEST(VerifyClaim, NegativeControlListsViolations) {
  auto r = verify_claim({8, 2, 4, 100}, table());
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.violations.empty());
  // spt2(2) = 1
  EXPECT_EQ(r.violations[0].n, 0u);
  EXPECT_EQ(r.violations[0].value_mod, 1u);
  for (const auto& v : r.violations) {
    EXPECT_EQ(v.value_mod, mpz_fdiv_ui(table()[8 * v.n + 2].get_mpz_t(), 4));
    EXPECT_NE(v.value_mod, 0u);
  }
  // violations inside the enumeration range are confirmed by the enumeration oracle
  Spt2Table e = build_table_by_enumeration(40);
  for (const auto& v : r.violations) {
    if (8 * v.n + 2 > 40) break;
    EXPECT_EQ(mpz_fdiv_ui(e[8 * v.n + 2].get_mpz_t(), 4), v.value_mod);
  }
}

TEST(VerifyClaim, Preconditions) {
  EXPECT_THROW(verify_claim({8, 3, 4, 1250}, table()), TableTooSmall);
  EXPECT_THROW(verify_claim({0, 3, 4, 10}, table()), InvalidClaim);
  EXPECT_THROW(verify_claim({8, 3, 1, 10}, table()), InvalidClaim);
}

TEST(Theorem1, AllSixHold) {
  for (const auto& [name, c] : theorem1_claims(50)) {
    EXPECT_TRUE(verify_claim(c, table(), name).pass) << name;
  }
  EXPECT_EQ(theorem1_claims(50)[5].second.largest_argument(), 4066u);
}

TEST(PriorClaims, HoldToThreeThousand) {
  for (const auto& [name, c] : prior_claims(3000)) {
    EXPECT_LE(c.largest_argument(), 3000u);
    EXPECT_GT(c.largest_argument() + c.step, 3000u);
    EXPECT_TRUE(verify_claim(c, table(), name).pass) << name;
  }
}

TEST(Families, InstancesAndVerification) {
  const auto fams = theorem2_families(3, 10);
  ASSERT_EQ(fams.size(), 6u);
  const FamilyClaim& last = fams[5];
  EXPECT_EQ(last.name, "2j-80n66");
  EXPECT_EQ(last.instance(0), (CongruenceClaim{80, 66, 4, 10}));
  // (2j-16n14) at j: 2^{j+4} n + 7 * 2^{j+1}
  for (unsigned j = 0; j <= 3; ++j) {
    EXPECT_EQ(fams[0].instance(j).step, 1u << (j + 4));
    EXPECT_EQ(fams[0].instance(j).offset, 7u << (j + 1));
    // (2j-36n30) at j: 2^{j+2} 9 n + 15 * 2^{j+1}
    EXPECT_EQ(fams[1].instance(j).step, 9u << (j + 2));
    EXPECT_EQ(fams[1].instance(j).offset, 15u << (j + 1));
  }
  std::uint64_t largest = 0;
  for (const auto& f : fams) {
    auto r = verify_family(f, table());
    EXPECT_TRUE(r.pass) << f.name;
    EXPECT_EQ(r.instances.size(), 4u);
    largest = std::max(largest, f.instance(3).largest_argument());
  }
  EXPECT_EQ(largest, 640u * 10 + 528);
  EXPECT_THROW(verify_family(FamilyClaim{"big", 80, 66, 7, 10, 4}, table()), TableTooSmall);
}

TEST(InductionReplay, NonIntegralUIsReportedInvalid) {
  for (const auto& f : theorem2_families(3, 10)) {
    for (unsigned j = 0; j <= 2; ++j) {
      auto r = verify_induction_step(f, j, 10, table());
      EXPECT_EQ(r.status, InductionStatus::Invalid) << f.name << " j=" << j;
      EXPECT_FALSE(r.reason.empty());
      ASSERT_EQ(r.rows.size(), 11u);
      for (const auto& row : r.rows) {
        // A is a multiple of 4, so A - 10 = 2 (mod 4) is never divisible by 16.
        EXPECT_EQ(row.argument % 4, 0u);
        EXPECT_FALSE(row.u_integral);
      }
      // the doubling relation between consecutive instances holds numerically
      EXPECT_TRUE(r.doubling_holds) << f.name << " j=" << j;
    }
  }
  EXPECT_STREQ(to_string(InductionStatus::Invalid), "invalid");
}

TEST(InductionReplay, RowsCarryTheInstanceArguments) {
  const auto f = theorem2_families(3, 10)[2];  // (2j-48n34): 48 * 2^j n + 34 * 2^j
  auto r = verify_induction_step(f, 0, 10, table());
  for (const auto& row : r.rows) EXPECT_EQ(row.argument, 96 * row.n + 68);
  EXPECT_NE(r.reason.find("A = 68"), std::string::npos);
}

TEST(PrimeFamily, ThreeFiveSevenThirteen) {
  for (std::uint64_t p : {5u, 7u, 13u}) {
    PrimeFamilyClaim c{p, 0, 10, 4};
    auto r = verify_prime_family(c, table());
    EXPECT_TRUE(r.pass) << p;
    EXPECT_EQ(r.instances.size(), p <= 10 ? 10u - 10u / p : 10u);
    for (const auto& x : r.instances) {
      EXPECT_EQ(x.argument, 32 * p * x.m + 24 * p * p);
      EXPECT_EQ(x.form_value, 4 * x.n_prime + 3);
      EXPECT_FALSE(x.representable);
      EXPECT_EQ(x.valuation % 2, 1);
      EXPECT_NE(x.m % p, 0u);
    }
  }
  EXPECT_EQ(prime_family_largest_argument({13, 0, 10, 4}), 32u * 13 * 10 + 24 * 169);
}

TEST(PrimeFamily, InvalidPrimesAreRejected) {
  for (std::uint64_t p : {3u, 11u, 17u, 2u, 15u, 21u}) {
    EXPECT_THROW(validate_prime_family({p, 0, 10, 4}), InvalidClaim) << p;
  }
  try {
    validate_prime_family({3, 0, 10, 4});
  } catch (const InvalidClaim& e) {
    EXPECT_NE(std::string(e.what()).find("p must be ≡ 5 or 7 (mod 8)"), std::string::npos);
  }
  EXPECT_THROW(verify_prime_family({5, 1, 10, 4}, table()), TableTooSmall);
}

TEST(Scan, FindsKnownProgressions) {
  auto mod4 = scan(4, 16, 200, table());
  EXPECT_TRUE(contains(mod4, 8, 3));
  EXPECT_TRUE(contains(mod4, 16, 14));
  auto mod3 = scan(3, 3, 200, table());
  EXPECT_TRUE(contains(mod3, 3, 0));
  EXPECT_TRUE(contains(mod3, 3, 1));
  EXPECT_TRUE(std::is_sorted(mod4.begin(), mod4.end(), [](const ScanHit& x, const ScanHit& y) {
    return std::pair(x.claim.step, x.claim.offset) < std::pair(y.claim.step, y.claim.offset);
  }));
}

TEST(Scan, ThreadCountDoesNotChangeResult) {
  auto one = scan(4, 40, 100, table(), 1);
  auto four = scan(4, 40, 100, table(), 4);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].claim, four[i].claim);
    EXPECT_EQ(one[i].subsumed_by, four[i].subsumed_by);
  }
}

TEST(Scan, ConsistentWithVerifyClaim) {
  // every passing claim inside the search box is reported, and every reported
  // hit passes verify_claim over its full range
  const auto hits = scan(4, 48, 100, table());
  for (std::uint64_t a = 1; a <= 48; ++a) {
    for (std::uint64_t b = 0; b < a; ++b) {
      const std::uint64_t n_max = (table().max_index() - b) / a;
      const bool pass = verify_claim({a, b, 4, n_max}, table()).pass;
      EXPECT_EQ(pass, contains(hits, a, b)) << a << "n+" << b;
    }
  }
}

TEST(Scan, Preconditions) {
  EXPECT_THROW(scan(4, 200, 100, table()), TableTooSmall);
  EXPECT_THROW(scan(1, 10, 10, table()), InvalidClaim);
}

TEST(Subsumption, ConstructedCases) {
  std::vector<ScanHit> hits{hit(16, 14), hit(8, 3), hit(16, 11), hit(32, 28), hit(48, 14),
                            hit(24, 19), hit(5, 3), hit(15, 8)};
  flag_subsumed(hits);
  auto find = [&](std::uint64_t a, std::uint64_t b) {
    return *std::find_if(hits.begin(), hits.end(), [&](const ScanHit& h) {
      return h.claim.step == a && h.claim.offset == b;
    });
  };
  EXPECT_FALSE(find(8, 3).subsumed_by);
  EXPECT_FALSE(find(16, 14).subsumed_by);
  EXPECT_EQ(find(16, 11).subsumed_by, std::make_pair(std::uint64_t{8}, std::uint64_t{3}));
  // 32n+28: 28 = 12 (mod 16), not 14, and 28 = 4 (mod 8): not subsumed
  EXPECT_FALSE(find(32, 28).subsumed_by);
  EXPECT_EQ(find(48, 14).subsumed_by, std::make_pair(std::uint64_t{16}, std::uint64_t{14}));
  EXPECT_EQ(find(24, 19).subsumed_by, std::make_pair(std::uint64_t{8}, std::uint64_t{3}));
  EXPECT_EQ(find(15, 8).subsumed_by, std::make_pair(std::uint64_t{5}, std::uint64_t{3}));
  EXPECT_FALSE(find(5, 3).subsumed_by);
}
