#include "icotomo/golden.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace icotomo;

namespace {

GoldenInt random_golden(std::mt19937_64& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return {Integer(d(rng)), Integer(d(rng))};
}

// Independent oracle: a + b tau evaluated in long double.
long double value(const GoldenInt& x) {
  return static_cast<long double>(x.a().convert_to<long long>()) +
         static_cast<long double>(x.b().convert_to<long long>()) * 1.6180339887498948482045868L;
}

}  // namespace

TEST(GoldenInt, RingLaw) {
  const GoldenInt t = GoldenInt::tau();
  EXPECT_EQ(t * t, GoldenInt(1, 1));
  EXPECT_EQ(GoldenInt(1, 1) * GoldenInt(1, -1), -t);
  EXPECT_EQ(GoldenInt(7, -3) * GoldenInt(1), GoldenInt(7, -3));
  EXPECT_EQ(t * GoldenInt::tau_conj(), GoldenInt(-1));
  EXPECT_EQ(t + GoldenInt::tau_conj(), GoldenInt(1));
}

TEST(GoldenInt, Conjugate) {
  EXPECT_EQ(conjugate(GoldenInt::tau()), GoldenInt(1, -1));
  EXPECT_EQ(conjugate(GoldenInt(1, 2)), GoldenInt(3, -2));
  EXPECT_EQ(conjugate(GoldenInt(5)), GoldenInt(5));
}

TEST(GoldenInt, Norm) {
  EXPECT_EQ(norm(GoldenInt::tau()), -1);
  EXPECT_EQ(norm(GoldenInt(1, 2)), -1);
  const GoldenInt t = GoldenInt::tau();
  EXPECT_EQ(t * t * t, GoldenInt(1, 2));
  EXPECT_EQ(norm(GoldenInt(2)), 4);
}

TEST(GoldenRat, Sign) {
  EXPECT_EQ(sign(GoldenRat(GoldenInt(1, -1))), -1);
  EXPECT_EQ(sign(GoldenRat(0)), 0);
  EXPECT_EQ(sign(GoldenRat(GoldenInt(5, -3))), 1);
  // F(n+1) - F(n) tau = tau'^n, tiny with alternating sign
  EXPECT_EQ(sign(GoldenInt(987, -610)), -1);
  EXPECT_EQ(sign(GoldenInt(-1597, 987)), -1);
  EXPECT_EQ(sign(GoldenInt(1597, -987)), 1);
}

TEST(GoldenRat, Embed) {
  EXPECT_NEAR(embed(GoldenRat::tau()), 1.6180339887498949, 1e-15);
  EXPECT_EQ(embed(GoldenRat(0)), 0.0);
  EXPECT_NEAR(embed(GoldenRat(GoldenInt::tau_conj())), -0.6180339887498949, 1e-15);
  // heavy cancellation stays accurate
  // F(30) - F(29) tau = tau'^29
  EXPECT_NEAR(embed(GoldenInt(832040, -514229)), std::pow(kTauConj, 29), 1e-18);
}

TEST(GoldenRat, FieldOps) {
  GoldenRat x = GoldenRat(GoldenInt(3, 5), 7);
  EXPECT_EQ(x * x.inverse(), GoldenRat(1));
  EXPECT_EQ(GoldenRat(GoldenInt(4, 6), 2), GoldenRat(GoldenInt(2, 3)));
  EXPECT_EQ(GoldenRat(GoldenInt(2), -4), GoldenRat::fraction(-1, 2));
  EXPECT_EQ(GoldenRat::fraction(1, 3) + GoldenRat::fraction(1, 6), GoldenRat::fraction(1, 2));
}

TEST(GoldenProperties, ConjugationIsRingHomomorphism) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    GoldenInt x = random_golden(rng, 1000), y = random_golden(rng, 1000);
    ASSERT_EQ(conjugate(x * y), conjugate(x) * conjugate(y));
    ASSERT_EQ(conjugate(x + y), conjugate(x) + conjugate(y));
    ASSERT_EQ(conjugate(conjugate(x)), x);
    ASSERT_EQ(norm(x * y), norm(x) * norm(y));
  }
}

TEST(GoldenProperties, SignAgreesWithFloatingValue) {
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int i = 0; i < 10000; ++i) {
    GoldenInt x = random_golden(rng, 100000);
    long double v = value(x);
    if (std::abs(v) <= 1e-9L) continue;
    ++checked;
    ASSERT_EQ(sign(x), v > 0 ? 1 : -1) << x;
    ASSERT_NEAR(embed(x), static_cast<double>(v), 1e-9 * (1 + std::abs(static_cast<double>(v))));
  }
  EXPECT_GT(checked, 9900);
}

TEST(GoldenProperties, UnitRecovery) {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> e(-40, 40);
  for (int i = 0; i < 500; ++i) {
    long s = e(rng);
    int sg = (rng() & 1) ? 1 : -1;
    GoldenInt u = 1;
    GoldenInt step = s >= 0 ? GoldenInt::tau() : GoldenInt(-1, 1);
    for (long k = 0; k < std::abs(s); ++k) u *= step;
    if (sg < 0) u = -u;
    ASSERT_TRUE(is_unit(u));
    auto r = unit_exponent(u);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->first, sg);
    EXPECT_EQ(r->second, s);
  }
  EXPECT_FALSE(is_unit(GoldenInt(2)));
  EXPECT_FALSE(unit_exponent(GoldenInt(2)).has_value());
}

TEST(GoldenProperties, EuclideanDivision) {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 2000; ++i) {
    GoldenInt x = random_golden(rng, 500), y = random_golden(rng, 50);
    if (y.is_zero()) continue;
    auto [q, r] = divmod(x, y);
    ASSERT_EQ(q * y + r, x);
    ASSERT_LT(abs(norm(r)), abs(norm(y)));
    GoldenInt g = gcd(x * y, y * y);
    ASSERT_TRUE(exact_divide(g, y).has_value());
    ASSERT_TRUE(exact_divide(x * y, g).has_value());
    ASSERT_TRUE(exact_divide(y * y, g).has_value());
  }
}

TEST(Residue2, MatchesReduction) {
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b)
      for (int c = -3; c <= 3; ++c)
        for (int d = -3; d <= 3; ++d) {
          GoldenInt x(a, b), y(c, d);
          EXPECT_EQ(Residue2(x * y), Residue2(x) * Residue2(y));
          EXPECT_EQ(Residue2(x + y), Residue2(x) + Residue2(y));
        }
}
