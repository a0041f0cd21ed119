#include <gtest/gtest.h>

#include "qtoda/qnum.hpp"

using namespace qtoda;

TEST(Qnum, ParseRational) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("a/2"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Qnum, PowersAndPochhammer) {
  Rational q(1, 2);
  EXPECT_EQ(qpow(q, 3), Rational(1, 8));
  EXPECT_EQ(qpow(q, -2), Rational(4));
  EXPECT_EQ(q_pochhammer(q, q, 0), Rational(1));
  // (1/2;1/2)_3 = 1/2 * 3/4 * 7/8
  EXPECT_EQ(q_pochhammer(q, q, 3), Rational(21, 64));
}

TEST(Qnum, GaussianBinomial) {
  Rational q(1, 2);
  EXPECT_EQ(q_binomial(4, 2, q), Rational(35, 16));
  EXPECT_EQ(q_binomial(4, 0, q), Rational(1));
  EXPECT_EQ(q_binomial(3, 5, q), Rational(0));
  EXPECT_EQ(q_binomial(3, -1, q), Rational(0));
  // Pascal rule [n,k] = [n-1,k-1] + q^k [n-1,k]
  for (int n = 1; n <= 7; ++n)
    for (int k = 1; k < n; ++k)
      EXPECT_EQ(q_binomial(n, k, q), q_binomial(n - 1, k - 1, q) + qpow(q, k) * q_binomial(n - 1, k, q));
}

TEST(Drift, Validation) {
  EXPECT_THROW(Drift(Rational(0)), std::invalid_argument);
  EXPECT_THROW(Drift(Rational(1)), std::invalid_argument);
  EXPECT_THROW(Drift(Rational(1, 2), {1, -1}), std::invalid_argument);
  Drift d(Rational(1, 2));
  EXPECT_TRUE(d.trivial());
}

TEST(Drift, PrefixSumsAndZ) {
  Drift d(Rational(1, 2), {1, 0, 2});
  EXPECT_EQ(d.S(0), 0);
  EXPECT_EQ(d.S(3), 3);
  EXPECT_EQ(d.S(9), 3);  // zero-extended
  EXPECT_EQ(d.beta(2, 2), 2);
  EXPECT_EQ(d.beta(2, 0), 0);
  EXPECT_EQ(d.z(0, 3), Rational(1, 8));
  EXPECT_EQ(d.zk(3), Rational(1, 4));
  // z_{i,i+j-1} = q^{beta_{i+1,j-1}}
  for (int i = 0; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) EXPECT_EQ(d.z(i, i + j - 1), d.qp(d.beta(i + 1, j - 1)));
}

TEST(Drift, InversePochhammerContinuation) {
  Drift d(Rational(1, 3));
  EXPECT_EQ(d.inv_poch(1, 2), 1 / ((1 - Rational(1, 3)) * (1 - Rational(1, 9))));
  // negative length contains the factor (1 - q^0)
  EXPECT_EQ(d.inv_poch(1, -1), Rational(0));
  // (q^a;q)_d / (q^a;q)_{d-1} style continuation: 1/(q^3;q)_{-2} = (1-q)(1-q^2)
  EXPECT_EQ(d.inv_poch(3, -2), (1 - Rational(1, 3)) * (1 - Rational(1, 9)));
  EXPECT_EQ(d.qfac(3), q_pochhammer(Rational(1, 3), Rational(1, 3), 3));
  EXPECT_EQ(d.binom(4, 2), q_binomial(4, 2, Rational(1, 3)));
  EXPECT_THROW(d.inv_poch(0, 1), std::domain_error);
}
