#include "hermod/number_theory.hpp"

#include <gtest/gtest.h>

using namespace hermod;

namespace {

// Legendre symbol by Euler's criterion, odd prime p.
int euler_legendre(long a, long p) {
  long r = pos_mod(a, p);
  if (r == 0) return 0;
  long e = (p - 1) / 2, acc = 1, b = r;
  while (e) {
    if (e & 1) acc = acc * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return acc == 1 ? 1 : -1;
}

std::vector<long> fundamental_discs(long bound) {
  std::vector<long> out;
  for (long d = -3; d >= -bound; --d)
    if (is_fundamental_discriminant(d)) out.push_back(d);
  return out;
}

}  // namespace

TEST(Kronecker, Examples) {
  QuadField K = QuadField::gaussian();
  EXPECT_EQ(kronecker_chi(K, 3), -1);
  EXPECT_EQ(kronecker_chi(K, 2), 0);
  EXPECT_EQ(kronecker_chi(QuadField::eisenstein(), 11), -1);
}

TEST(Kronecker, MatchesEulerCriterionAtOddPrimes) {
  for (long d : fundamental_discs(100))
    for (long p = 3; p < 200; p += 2)
      if (is_prime(p)) EXPECT_EQ(kronecker(d, p), euler_legendre(d, p)) << d << " " << p;
}

TEST(Kronecker, CompletelyMultiplicativeAndPeriodic) {
  for (long d : fundamental_discs(60))
    for (long a = 1; a < 40; ++a) {
      for (long b = 1; b < 40; ++b) EXPECT_EQ(kronecker(d, a * b), kronecker(d, a) * kronecker(d, b));
      EXPECT_EQ(kronecker(d, a), kronecker(d, a - d));
    }
}

TEST(Discriminant, Fundamental) {
  EXPECT_TRUE(is_fundamental_discriminant(-3));
  EXPECT_TRUE(is_fundamental_discriminant(-4));
  EXPECT_TRUE(is_fundamental_discriminant(-20));
  EXPECT_TRUE(is_fundamental_discriminant(-8));
  EXPECT_FALSE(is_fundamental_discriminant(-12));
  EXPECT_FALSE(is_fundamental_discriminant(-16));
  EXPECT_FALSE(is_fundamental_discriminant(-5));
  EXPECT_THROW(QuadField::make(-5), std::invalid_argument);
}

TEST(ClassNumber, Examples) {
  EXPECT_EQ(class_number(-4), 1);
  EXPECT_EQ(class_number(-20), 2);
  EXPECT_EQ(class_number(-23), 3);
  EXPECT_EQ(class_number(-3), 1);
  EXPECT_EQ(class_number(-11), 1);
  EXPECT_EQ(class_number(-19), 1);
  EXPECT_EQ(class_number(-84), 4);
  EXPECT_THROW(class_number(-12), std::invalid_argument);
}

TEST(ClassNumber, MatchesFirstGeneralizedBernoulli) {
  for (long d : fundamental_discs(100)) {
    QuadField K = QuadField::make(d);
    EXPECT_EQ(gen_bernoulli(1, kronecker_character(K)), Rational(-2 * K.h) / Rational(K.w)) << d;
  }
}

TEST(QFactor, Examples) {
  QuadField K = QuadField::gaussian();
  DirichletChar c2 = chi_q_factor(K, 2);
  EXPECT_EQ(c2(1), 1);
  EXPECT_EQ(c2(3), -1);
  EXPECT_EQ(c2(5), 1);
  QuadField K5 = QuadField::make(-20);
  DirichletChar c5 = chi_q_factor(K5, 5), c2b = chi_q_factor(K5, 2);
  for (long n = 1; n <= 100; ++n) {
    EXPECT_EQ(c5(n), n % 5 == 0 ? 0 : euler_legendre(n, 5));
    EXPECT_EQ(c2b(n), kronecker(-4, n));
  }
  EXPECT_THROW(chi_q_factor(K5, 3), std::invalid_argument);
}

TEST(QFactor, ProductIsKroneckerCharacter) {
  for (long d : fundamental_discs(100)) {
    QuadField K = QuadField::make(d);
    for (long n = 1; n <= 1000; ++n) {
      int prod = 1;
      for (long q : prime_divisors(K.D)) prod *= chi_q_factor(K, q)(n);
      ASSERT_EQ(prod, kronecker_chi(K, n)) << d << " " << n;
    }
  }
}

TEST(Psi, Examples) {
  QuadField K = QuadField::gaussian();
  EXPECT_EQ(psi_m(K, 1, -2), 1);
  EXPECT_EQ(psi_m(K, 4, -1), -1);
  EXPECT_EQ(psi_m(QuadField::make(-20), 5, 2), -1);
  EXPECT_THROW(psi_m(K, 2, 1), std::invalid_argument);
}

TEST(Psi, ComplementaryProductAndParity) {
  for (long d : fundamental_discs(100)) {
    QuadField K = QuadField::make(d);
    for (long m : unitary_divisors(K)) {
      DirichletChar a = psi_character(K, m), b = psi_character(K, K.D / m);
      EXPECT_EQ(a(-1), -b(-1)) << d << " " << m;
      for (long n = 1; n <= 1000; ++n) ASSERT_EQ(a(n) * b(n), kronecker_chi(K, n));
    }
  }
}

TEST(Bernoulli, Examples) {
  EXPECT_EQ(bernoulli(0), 1);
  EXPECT_EQ(bernoulli(1), Rational(-1, 2));
  EXPECT_EQ(bernoulli(2), Rational(1, 6));
  EXPECT_EQ(bernoulli(4), Rational(-1, 30));
  EXPECT_EQ(bernoulli(7), 0);
  EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
}

TEST(Bernoulli, Polynomial) {
  EXPECT_EQ(bernoulli_poly(2, 0), Rational(1, 6));
  EXPECT_EQ(bernoulli_poly(3, Rational(1, 4)), Rational(3, 64));
  EXPECT_EQ(bernoulli_poly(1, Rational(1, 2)), 0);
  // B_n(x + 1) - B_n(x) = n x^(n-1)
  for (unsigned n = 1; n < 10; ++n)
    for (int a = -3; a < 4; ++a) {
      Rational x(a, 3);
      x.canonicalize();
      EXPECT_EQ(bernoulli_poly(n, x + 1) - bernoulli_poly(n, x), Rational(n) * rpow(x, n - 1));
    }
}

TEST(Bernoulli, Generalized) {
  EXPECT_EQ(gen_bernoulli(1, DirichletChar(-4)), Rational(-1, 2));
  EXPECT_EQ(gen_bernoulli(3, DirichletChar(-4)), Rational(3, 2));
  EXPECT_EQ(gen_bernoulli(2, DirichletChar(-3)), 0);
  EXPECT_EQ(gen_bernoulli(4, DirichletChar::trivial()), bernoulli(4));
}

TEST(Bernoulli, KummerCongruence) {
  for (long p : {7L, 11L, 13L, 19L, 23L}) {
    Rational lhs = bernoulli(p + 1) / Rational(p + 1), rhs = bernoulli(2) / 2;
    EXPECT_EQ(residue(lhs, p), residue(rhs, p)) << p;
  }
}

TEST(Bernoulli, GeneralizedCongruence) {
  for (long p : {7L, 11L})
    for (long d : {-4L, -3L, -20L}) {
      QuadField K = QuadField::make(d);
      Rational lhs = gen_bernoulli(p, kronecker_character(K)) / Rational(p);
      Rational rhs = Rational(1 - kronecker_chi(K, p)) * Rational(-2 * K.h) / Rational(K.w);
      EXPECT_EQ(residue(lhs, p), residue(rhs, p)) << p << " " << d;
    }
}

TEST(Bernoulli, SingularPrimeResidue) {
  for (long p : {7L, 11L, 19L, 23L}) {
    QuadField K = QuadField::make(-p);
    EXPECT_NE(residue(bernoulli((p + 1) / 2), p), 0) << p;
    Rational b = Rational(p) * gen_bernoulli((p - 1) / 2, kronecker_character(K));
    EXPECT_EQ(residue(b, p), p - 1) << p;
  }
}

TEST(Arith, Residues) {
  EXPECT_EQ(residue(Rational(14400), 7), 1);
  EXPECT_EQ(residue(Rational(1, 3), 7), 5);
  EXPECT_THROW(residue(Rational(1, 7), 7), NotPIntegral);
  EXPECT_EQ(valuation(Rational(49, 3), 7), 2);
  EXPECT_EQ(make_rational(6, -4), Rational(-3, 2));
}
