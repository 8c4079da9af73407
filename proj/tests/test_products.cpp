#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spt2/exprlang.hpp"
#include "spt2/products.hpp"

using namespace spt2;

TEST(Pentagonal, MatchesNaiveProductForAllLevels) {
  const std::size_t order = 300;
  for (int k = 1; k <= 72; ++k) {
    EXPECT_EQ(expand_eta(k, order).coefficients(), oracle::naive_eta(k, order)) << "f" << k;
  }
}

TEST(Pentagonal, FirstCoefficients) {
  // 1 - q - q^2 + q^5 + q^7 - q^12 - q^15
  std::vector<Integer> want(16, 0);
  for (auto [e, c] : std::vector<std::pair<int, int>>{{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}, {12, -1}, {15, -1}}) {
    want[e] = c;
  }
  EXPECT_EQ(expand_eta(1, 16).coefficients(), want);
}

TEST(Pentagonal, ModularExpansionIsReduction) {
  for (int k : {1, 2, 5, 9}) {
    EXPECT_EQ(expand_eta(k, 200, CoeffRing::modulo(4)), reduce_mod(expand_eta(k, 200), 4));
  }
}

TEST(EtaPowers, MatchNaivePowers) {
  EtaCache cache;
  for (int k : {1, 2, 3, 8}) {
    for (int e : {-7, -2, -1, 1, 3, 5}) {
      const auto want = oracle::naive_pow(oracle::naive_eta(k, 120), e, 120);
      EXPECT_EQ(cache.power(k, e, 120, CoeffRing::integers()).coefficients(), want)
          << "f" << k << "^" << e;
    }
  }
  EXPECT_EQ(cache.power(3, 0, 10, CoeffRing::integers()), Series::one(CoeffRing::integers(), 10));
}

TEST(EtaPowers, CacheIsKeyedByRingAndOrder) {
  EtaCache cache;
  cache.power(2, 3, 50, CoeffRing::integers());
  cache.power(2, 3, 50, CoeffRing::integers());
  const auto n = cache.size();
  cache.power(2, 3, 50, CoeffRing::modulo(4));
  cache.power(2, 3, 60, CoeffRing::integers());
  EXPECT_GT(cache.size(), n);
  cache.clear();
  EXPECT_EQ(cache.size(), 0u);
}

TEST(Theta, SparseSumsMatchNaiveSums) {
  const std::size_t order = 400;
  EXPECT_EQ(theta_phi(1, order).coefficients(), oracle::theta_phi(1, order));
  EXPECT_EQ(theta_phi(-1, order).coefficients(), oracle::theta_phi(-1, order));
  EXPECT_EQ(theta_psi(1, order).coefficients(), oracle::theta_psi(1, order));
  EXPECT_EQ(theta_psi(-1, order).coefficients(), oracle::theta_psi(-1, order));
}

TEST(Theta, ProductFormsMatchSums) {
  const std::size_t order = 300;
  const auto Z = CoeffRing::integers();
  EXPECT_EQ(expand_expr(phi_product(1), Z, order), theta_phi(1, order));
  EXPECT_EQ(expand_expr(phi_product(-1), Z, order), theta_phi(-1, order));
  EXPECT_EQ(expand_expr(psi_product(1), Z, order), theta_psi(1, order));
  EXPECT_EQ(expand_expr(psi_product(-1), Z, order), theta_psi(-1, order));
  EXPECT_EQ(expand_expr(phi_product(1, 3), Z, order), substitute_power(theta_phi(1, order), 3));
  EXPECT_EQ(expand_expr(psi_product(-1, 2), Z, order), substitute_power(theta_psi(-1, order), 2));
}

TEST(Theta, CubeOfF1) {
  const auto Z = CoeffRing::integers();
  EXPECT_EQ(cube_f1(500), pow(expand_eta(1, 500), 3));
  EXPECT_EQ(cube_f1(100, CoeffRing::modulo(4)), reduce_mod(cube_f1(100, Z), 4));
}

TEST(ProductExpr, NormalizationMergesAndDropsTerms) {
  ProductExpr a = ProductExpr::single(eta_power(2, 3)) + ProductExpr::single(eta_power(2, 3));
  a.normalize();
  ASSERT_EQ(a.terms.size(), 1u);
  EXPECT_EQ(a.terms[0].coeff, 2);
  ProductExpr z = a - a;
  z.normalize();
  EXPECT_TRUE(z.terms.empty());
  EXPECT_EQ(to_string(z), "0");
}

TEST(ProductExpr, MultiplicationAddsExponents) {
  ProductExpr a = ProductExpr::single(eta_power(1, 2)) * ProductExpr::single(eta_power(1, -2));
  a.normalize();
  ASSERT_EQ(a.terms.size(), 1u);
  EXPECT_TRUE(a.terms[0].factors.empty());
  EXPECT_EQ(to_string(a), "1");
}

TEST(ProductExpr, Rendering) {
  EXPECT_EQ(to_string(parse_product("f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8")),
            "f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8");
  EXPECT_EQ(to_string(parse_product("-q^3/f1")), "-q^3/f1");
}

TEST(ExpandExpr, NegativeShiftAndZeroOrderAreRejected) {
  EtaMonomial m;
  m.qshift = -1;
  EXPECT_THROW(expand_monomial(m, CoeffRing::integers(), 10), std::domain_error);
  EXPECT_THROW(expand_expr(parse_product("f1"), CoeffRing::integers(), 0), std::invalid_argument);
}

TEST(ExpandExpr, ShiftBeyondOrderIsZero) {
  Series s = expand_expr(parse_product("q^20*f1"), CoeffRing::integers(), 10);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(s.order(), 10u);
}
