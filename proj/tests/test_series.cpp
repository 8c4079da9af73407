#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spt2/series.hpp"
#include "support.hpp"

using namespace spt2;

namespace {

std::vector<Integer> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

const CoeffRing kRings[] = {CoeffRing::integers(), CoeffRing::modulo(2), CoeffRing::modulo(4),
                            CoeffRing::modulo(1000003), CoeffRing::modulo(~0ULL)};

}  // namespace

TEST(CoeffRing, Names) {
  EXPECT_EQ(CoeffRing::integers().name(), "ZZ");
  EXPECT_EQ(CoeffRing::modulo(4).name(), "ZZ/4");
  EXPECT_THROW(CoeffRing::modulo(1), std::invalid_argument);
  EXPECT_THROW(CoeffRing::modulo(0), std::invalid_argument);
}

TEST(Series, ConstructionAndAccess) {
  Series a = Series::from_integers(CoeffRing::integers(), {1, -2, 3});
  EXPECT_EQ(a.order(), 3u);
  EXPECT_EQ(a.coefficient(1), -2);
  EXPECT_THROW(a.coefficient(3), OutOfTruncation);

  Series b = Series::from_integers(CoeffRing::modulo(4), {1, -2, 7});
  EXPECT_EQ(b.coefficients(), ints({1, 2, 3}));
  EXPECT_THROW(b.exact_coeffs(), RingMismatch);
  EXPECT_FALSE(b.is_zero());
  EXPECT_TRUE(Series(CoeffRing::modulo(4), 5).is_zero());

  std::vector<std::pair<std::size_t, Integer>> terms{{0, 1}, {2, 5}, {2, -1}, {9, 4}};
  Series c = Series::from_terms(CoeffRing::integers(), 4, terms);
  EXPECT_EQ(c.coefficients(), ints({1, 0, 4, 0}));
}

TEST(Series, SmallArithmetic) {
  const auto Z = CoeffRing::integers();
  Series a = Series::from_integers(Z, {1, 1});
  Series b = Series::from_integers(Z, {1, -1, 0, 0});
  // truncation to the smaller order
  EXPECT_EQ((a * b).coefficients(), ints({1, 0}));
  EXPECT_EQ((a + b).order(), 2u);
  EXPECT_EQ((b - b).is_zero(), true);
  EXPECT_EQ(scale(b, -3).coefficients(), ints({-3, 3, 0, 0}));
  EXPECT_EQ(pow(Series::from_integers(Z, {1, 1, 0, 0, 0}), 4).coefficients(), ints({1, 4, 6, 4, 1}));
  EXPECT_EQ(shift(b, 2).coefficients(), ints({0, 0, 1, -1}));
  EXPECT_EQ(substitute_power(Series::from_integers(Z, {1, 2, 3, 4, 5}), 2).coefficients(),
            ints({1, 0, 2, 0, 3}));
  EXPECT_THROW(substitute_power(b, 0), std::invalid_argument);
}

TEST(Series, RingMismatchIsRejected) {
  Series a = Series::one(CoeffRing::integers(), 4);
  Series b = Series::one(CoeffRing::modulo(4), 4);
  EXPECT_THROW(a + b, RingMismatch);
  EXPECT_THROW(a * b, RingMismatch);
  EXPECT_THROW(sub(Series::one(CoeffRing::modulo(3), 4), b), RingMismatch);
}

TEST(Series, InverseOfOneMinusQIsGeometric) {
  for (auto ring : kRings) {
    Series g = invert(Series::from_integers(ring, {1, -1, 0, 0, 0, 0, 0}));
    EXPECT_EQ(g, Series::from_integers(ring, {1, 1, 1, 1, 1, 1, 1})) << ring.name();
  }
}

TEST(Series, NonUnitsAreRejected) {
  EXPECT_THROW(invert(Series::from_integers(CoeffRing::integers(), {2, 1})), NotAUnit);
  EXPECT_THROW(invert(Series::from_integers(CoeffRing::integers(), {0, 1})), NotAUnit);
  EXPECT_THROW(invert(Series::from_integers(CoeffRing::modulo(4), {2, 1})), NotAUnit);
  // 3 is a unit mod 4; 3 * 3 = 1.
  Series u = invert(Series::from_integers(CoeffRing::modulo(4), {3, 0, 0}));
  EXPECT_EQ(u.coefficients(), ints({3, 0, 0}));
  // -1 is a unit over ZZ.
  EXPECT_EQ(invert(Series::from_integers(CoeffRing::integers(), {-1, 1, 0})).coefficients(),
            ints({-1, -1, -1}));
}

TEST(Series, ReduceModCompatibility) {
  Series a = Series::from_integers(CoeffRing::integers(), {-5, 6, 7});
  EXPECT_EQ(reduce_mod(a, 4).coefficients(), ints({3, 2, 3}));
  Series b = Series::from_integers(CoeffRing::modulo(12), {5, 6, 7});
  EXPECT_EQ(reduce_mod(b, 4).ring(), CoeffRing::modulo(4));
  EXPECT_EQ(reduce_mod(b, 4).coefficients(), ints({1, 2, 3}));
  EXPECT_THROW(reduce_mod(b, 5), std::invalid_argument);
  EXPECT_THROW(reduce_mod(a, 1), std::invalid_argument);
}

TEST(Series, ToString) {
  Series a = Series::from_integers(CoeffRing::integers(), {1, -2, 0, 3});
  EXPECT_EQ(to_string(a), "1 - 2q + 3q^3 + O(q^4)");
  EXPECT_EQ(to_string(Series(CoeffRing::integers(), 2)), "0 + O(q^2)");
}

// ---- against the naive product oracle -----------------------------------------

TEST(SeriesOracle, MultiplicationMatchesNaiveProduct) {
  std::mt19937_64 rng(testsupport::seed());
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t order = 1 + rng() % 150;
    Series a = testsupport::random_series(rng, CoeffRing::integers(), order, 200);
    Series b = testsupport::random_series(rng, CoeffRing::integers(), order, 200);
    EXPECT_EQ((a * b).coefficients(), oracle::mul(a.coefficients(), b.coefficients(), order));
  }
}

TEST(SeriesOracle, InverseMatchesNaiveInverse) {
  std::mt19937_64 rng(testsupport::seed() + 1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t order = 1 + rng() % 120;
    Series a = testsupport::random_unit_series(rng, CoeffRing::integers(), order);
    EXPECT_EQ(invert(a).coefficients(), oracle::naive_inverse(a.coefficients(), order));
  }
}

// ---- Kronecker substitution agrees with schoolbook --------------------------------

TEST(Kronecker, AgreesWithSchoolbookOverIntegers) {
  std::mt19937_64 rng(testsupport::seed() + 2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t order = 1 + rng() % 400;
    const int bits = 1 + static_cast<int>(rng() % 300);
    Series a = testsupport::random_series(rng, CoeffRing::integers(), order, bits);
    Series b = testsupport::random_series(rng, CoeffRing::integers(), order + rng() % 5, bits);
    EXPECT_EQ(mul_kronecker(a, b), mul_schoolbook(a, b)) << "order " << order << " bits " << bits;
  }
}

TEST(Kronecker, AgreesWithSchoolbookModM) {
  std::mt19937_64 rng(testsupport::seed() + 3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint64_t m = trial % 3 == 0 ? 4 : (trial % 3 == 1 ? ~0ULL - 58 : 2 + rng() % 1000000);
    const auto ring = CoeffRing::modulo(m);
    const std::size_t order = 1 + rng() % 400;
    Series a = testsupport::random_series(rng, ring, order, 64);
    Series b = testsupport::random_series(rng, ring, order, 64);
    EXPECT_EQ(mul_kronecker(a, b), mul_schoolbook(a, b)) << "M = " << m;
  }
}

TEST(Kronecker, ExtremeCoefficients) {
  // all coefficients equal to M-1, and all equal to -(2^200)
  const auto ring = CoeffRing::modulo(~0ULL);
  Series a = Series::from_residues(ring, std::vector<std::uint64_t>(300, ~0ULL - 1));
  EXPECT_EQ(mul_kronecker(a, a), mul_schoolbook(a, a));
  Integer big = -(Integer(1) << 200);
  Series z = Series::from_integers(CoeffRing::integers(), std::vector<Integer>(300, big));
  EXPECT_EQ(mul_kronecker(z, z), mul_schoolbook(z, z));
}

// ---- ring-law properties on random inputs ----------------------------------------

class RingLaws : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RingLaws, HoldOnRandomSeries) {
  const auto ring = GetParam() == 0 ? CoeffRing::integers() : CoeffRing::modulo(GetParam());
  std::mt19937_64 rng(testsupport::seed() + GetParam());
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t order = 1 + rng() % 80;
    Series a = testsupport::random_series(rng, ring, order);
    Series b = testsupport::random_series(rng, ring, order);
    Series c = testsupport::random_series(rng, ring, order);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Series(ring, order));
    EXPECT_EQ(a * Series::one(ring, order), a);
    Series u = testsupport::random_unit_series(rng, ring, order);
    EXPECT_EQ(u * invert(u), Series::one(ring, order));
    EXPECT_EQ(invert(invert(u)), u);
  }
}

INSTANTIATE_TEST_SUITE_P(Rings, RingLaws, ::testing::Values(0, 2, 4, 97, 1ULL << 40, ~0ULL));

TEST(SeriesProperties, ReductionIsAHomomorphism) {
  std::mt19937_64 rng(testsupport::seed() + 4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t m = 2 + rng() % 50;
    const std::size_t order = 1 + rng() % 100;
    Series a = testsupport::random_series(rng, CoeffRing::integers(), order, 80);
    Series b = testsupport::random_series(rng, CoeffRing::integers(), order, 80);
    EXPECT_EQ(reduce_mod(a * b, m), reduce_mod(a, m) * reduce_mod(b, m));
    EXPECT_EQ(reduce_mod(a - b, m), reduce_mod(a, m) - reduce_mod(b, m));
    Series u = testsupport::random_unit_series(rng, CoeffRing::integers(), order);
    EXPECT_EQ(reduce_mod(invert(u), m), invert(reduce_mod(u, m)));
    // through an intermediate ring
    EXPECT_EQ(reduce_mod(reduce_mod(a, m * 3), m), reduce_mod(a, m));
  }
}

TEST(SeriesProperties, SubstitutionComposesAndIsMultiplicative) {
  std::mt19937_64 rng(testsupport::seed() + 5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t order = 1 + rng() % 100;
    const std::size_t m = 1 + rng() % 5, k = 1 + rng() % 5;
    Series a = testsupport::random_series(rng, CoeffRing::integers(), order);
    Series b = testsupport::random_series(rng, CoeffRing::integers(), order);
    EXPECT_EQ(substitute_power(substitute_power(a, m), k), substitute_power(a, m * k));
    EXPECT_EQ(substitute_power(a * b, m), substitute_power(a, m) * substitute_power(b, m));
    EXPECT_EQ(pow(a, 3), a * a * a);
  }
}
