#include "horolab/nf/field.hpp"
#include "horolab/nf/units.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <random>

using namespace horolab::nf;

namespace {

// Smallest unit > 1 found by scanning a + b*w with |a|, |b| <= bound.
RingElement brute_force_unit(const FieldContext& F, std::int64_t bound) {
  const std::int64_t t = F.omega_trace(), n0 = F.omega_norm_term();
  double best = 0;
  RingElement found{0};
  for (std::int64_t b = 1; b <= bound; ++b) {
    for (std::int64_t a = -bound; a <= bound; ++a) {
      const std::int64_t n = a * a + t * a * b - n0 * b * b;
      if (n != 1 && n != -1) continue;
      const double s = static_cast<double>(a) + static_cast<double>(b) * F.omega_at(0);
      if (s > 1.0 && (best == 0 || s < best)) {
        best = s;
        found = RingElement(a, b);
      }
    }
  }
  return found;
}

// Determinant of multiplication by x on the basis {1, w}.
BigInt multiplication_det(const FieldContext& F, const RingElement& x) {
  const RingElement c1 = F.mul(x, RingElement(1));
  const RingElement c2 = F.mul(x, RingElement(0, 1));
  return c1.a * c2.b - c1.b * c2.a;
}

}  // namespace

TEST(Field, GoldenRatioField) {
  const auto F = FieldContext::quadratic(5);
  EXPECT_EQ(F.discriminant(), 5);
  EXPECT_EQ(F.fundamental_unit(), RingElement(0, 1));
  EXPECT_EQ(F.norm(F.fundamental_unit()), -1);
  // (3 + sqrt5)/2 = 1 + w
  EXPECT_EQ(F.totally_positive_unit(), RingElement(1, 1));
  EXPECT_NEAR(F.omega_at(0), (1 + std::sqrt(5.0)) / 2, 1e-15);
  EXPECT_NEAR(F.log_unit(), std::log((3 + std::sqrt(5.0)) / 2), 1e-14);
}

TEST(Field, SqrtTwo) {
  const auto F = FieldContext::quadratic(2);
  EXPECT_EQ(F.discriminant(), 8);
  EXPECT_EQ(F.fundamental_unit(), RingElement(1, 1));
  EXPECT_EQ(F.totally_positive_unit(), RingElement(3, 2));
}

TEST(Field, SqrtThreeUnitAlreadyTotallyPositive) {
  const auto F = FieldContext::quadratic(3);
  EXPECT_EQ(F.fundamental_unit(), RingElement(2, 1));
  EXPECT_EQ(F.norm(F.fundamental_unit()), 1);
  EXPECT_EQ(F.totally_positive_unit(), F.fundamental_unit());
}

TEST(Field, RejectsBadDiscriminants) {
  EXPECT_THROW(FieldContext::quadratic(4), std::invalid_argument);
  EXPECT_THROW(FieldContext::quadratic(12), std::invalid_argument);
  EXPECT_THROW(FieldContext::quadratic(1), std::invalid_argument);
  EXPECT_THROW(FieldContext::quadratic(-3), std::invalid_argument);
}

class UnitOracle : public ::testing::TestWithParam<int> {};

TEST_P(UnitOracle, ContinuedFractionMatchesBoxSearch) {
  const auto F = FieldContext::quadratic(GetParam());
  const RingElement eps = F.fundamental_unit();
  EXPECT_EQ(eps, brute_force_unit(F, 1000)) << F.name();
  EXPECT_EQ(abs(F.norm(eps)), 1);
  const RingElement tp = F.totally_positive_unit();
  EXPECT_TRUE(F.totally_positive(tp));
  EXPECT_EQ(F.norm(tp), 1);
  EXPECT_TRUE(tp == eps || tp == F.mul(eps, eps));
}

INSTANTIATE_TEST_SUITE_P(SmallD, UnitOracle,
                         ::testing::Values(2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 29, 33, 37, 41));

TEST(Field, LargeUnitViaContinuedFraction) {
  // D = 94: x^2 - 94 y^2 = 1 first solved at x = 2143295, y = 221064.
  const auto F = FieldContext::quadratic(94);
  EXPECT_EQ(F.fundamental_unit(), RingElement(2143295, 221064));
}

TEST(Field, MinimalPolynomialAndCovolume) {
  for (int D : {2, 3, 5, 13, 21}) {
    const auto F = FieldContext::quadratic(D);
    const RingElement w(0, 1);
    const RingElement w2 = F.mul(w, w);
    EXPECT_EQ(w2, RingElement(F.omega_norm_term(), F.omega_trace()));
    const double cov = std::abs(F.omega_at(1) - F.omega_at(0));
    EXPECT_NEAR(cov, std::sqrt(static_cast<double>(F.discriminant())), 1e-9);
  }
}

TEST(Field, NormIsMultiplicationDeterminant) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coord(-500, 500);
  for (int D : {2, 5, 7, 13}) {
    const auto F = FieldContext::quadratic(D);
    for (int i = 0; i < 300; ++i) {
      const RingElement x(coord(rng), coord(rng));
      const RingElement y(coord(rng), coord(rng));
      EXPECT_EQ(F.norm(x), multiplication_det(F, x));
      EXPECT_EQ(F.norm(F.mul(x, y)), F.norm(x) * F.norm(y));
      EXPECT_EQ(F.mul(x, F.conj(x)), RingElement(F.norm(x), 0));
      EXPECT_NEAR(F.embed(x, 0) * F.embed(x, 1), to_double(F.norm(x)),
                  1e-9 * std::max(1.0, std::abs(to_double(F.norm(x)))) + 1e-6);
    }
  }
}

TEST(Field, ExactSignsAgreeWithEmbeddings) {
  const auto F = FieldContext::quadratic(5);
  // 1 + 1*w - (0 + ...) style near-cancellations: Fibonacci ratios approach w.
  BigInt f0 = 1, f1 = 1;
  for (int i = 0; i < 40; ++i) {
    const RingElement x(-f1, f0);  // f0*w - f1, alternates in sign
    const int s = F.sign_at(x, 0);
    EXPECT_NE(s, 0);
    if (i < 20) EXPECT_EQ(s, F.embed(x, 0) > 0 ? 1 : -1);
    BigInt f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
  EXPECT_EQ(sign_of_surd(0, 0, 5), 0);
  EXPECT_EQ(sign_of_surd(-3, 1, 5), -1);
  EXPECT_EQ(sign_of_surd(-2, 1, 5), 1);
}

TEST(Field, UnitPowersAndInverse) {
  const auto F = FieldContext::quadratic(5);
  for (long long k = -6; k <= 6; ++k) {
    const RingElement e = F.unit_power(k);
    EXPECT_EQ(F.norm(e), 1);
    EXPECT_EQ(F.mul(e, F.unit_power(-k)), RingElement(1));
  }
}

TEST(Field, FormatAndParseRoundTrip) {
  const auto F = FieldContext::quadratic(5);
  EXPECT_EQ(F.format(RingElement(3, 1)), "3+1*w");
  EXPECT_EQ(F.format(RingElement(-1, -2)), "-1-2*w");
  for (const RingElement x : {RingElement(0, 0), RingElement(7, -3), RingElement(-12, 5)}) {
    EXPECT_EQ(F.parse(F.format(x)), x);
  }
  EXPECT_EQ(F.parse("4"), RingElement(4));
  EXPECT_THROW(F.parse("1+w+"), std::invalid_argument);
  const auto Q = FieldContext::rational();
  EXPECT_EQ(Q.format(RingElement(10007)), "10007");
  EXPECT_THROW(Q.parse("1+2*w"), std::invalid_argument);
}

TEST(Balance, AlreadyBalanced) {
  const auto F = FieldContext::quadratic(5);
  EXPECT_EQ(balance_unit(F, RingElement(2)).k, 0);
  EXPECT_TRUE(is_balanced(F, RingElement(2)));
}

TEST(Balance, RemovesUnitSquare) {
  const auto F = FieldContext::quadratic(5);
  const RingElement y = F.mul(F.unit_power(2), RingElement(2));
  const UnitPower u = balance_unit(F, y);
  EXPECT_EQ(u.k, -2);
  EXPECT_EQ(F.mul(u.value, y), RingElement(2));
}

TEST(Balance, MatchesExhaustiveSearch) {
  const auto F = FieldContext::quadratic(5);
  const double L = F.log_unit();
  for (const RingElement y : {RingElement(3, 1), RingElement(10, 3), RingElement(5, 7), RingElement(100, -50)}) {
    ASSERT_TRUE(F.totally_positive(y));
    const UnitPower u = balance_unit(F, y);
    double best = 1e300;
    for (long long k = -20; k <= 20; ++k) {
      best = std::min(best, log_spread(F, F.mul(F.unit_power(k), y)));
    }
    const double got = log_spread(F, F.mul(u.value, y));
    EXPECT_NEAR(got, best, 1e-12);
    EXPECT_LE(got, L + 1e-12);
  }
  EXPECT_THROW(balance_unit(F, RingElement(-1)), std::invalid_argument);
  EXPECT_THROW(balance_unit(F, RingElement(0, 1)), std::invalid_argument);  // N(w) = -1
}

TEST(Balance, EnumerationIsOnePerClass) {
  const auto F = FieldContext::quadratic(2);
  const auto ys = balanced_totally_positive(F, 2000);
  ASSERT_FALSE(ys.empty());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    EXPECT_TRUE(F.totally_positive(ys[i]));
    EXPECT_TRUE(is_balanced(F, ys[i]));
    if (i > 0) EXPECT_LE(F.norm(ys[i - 1]), F.norm(ys[i]));
  }
  // Each balanced element is its own balanced image.
  for (const auto& y : ys) EXPECT_EQ(balanced(F, y), y);
}

TEST(Totient, ScanOverRationals) {
  const auto Q = FieldContext::rational();
  const auto rows = totient_ratio_scan(Q, 300);
  ASSERT_EQ(rows.size(), 299u);
  EXPECT_EQ(rows.front().norm, 2);
  EXPECT_EQ(rows.front().phi, 1);
  EXPECT_EQ(rows[210 - 2].phi, 48);
  EXPECT_THROW(totient_ratio_scan(Q, 15), std::invalid_argument);
}
