#include "horolab/group/group.hpp"
#include "horolab/nf/factor.hpp"
#include "horolab/nf/ideal.hpp"
#include "horolab/nf/units.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace horolab;
using group::GroupElement;
using nf::FieldContext;
using nf::RingElement;

namespace {

GroupElement u1(double t) { return group::u(std::vector<double>{t}); }
GroupElement a1(double y) { return group::a(std::vector<double>{y}); }

}  // namespace

TEST(Group, IdentityAndFamilies) {
  const double zero[] = {0.0, 0.0};
  EXPECT_EQ(group::u(zero).normalized_distance(GroupElement::identity(2)), 0.0);
  const GroupElement g = u1(1) * a1(2);
  EXPECT_DOUBLE_EQ(g.place(0).a, 0.5);
  EXPECT_DOUBLE_EQ(g.place(0).b, 2.0);
  EXPECT_DOUBLE_EQ(g.place(0).c, 0.0);
  EXPECT_DOUBLE_EQ(g.place(0).d, 2.0);
  EXPECT_THROW(a1(0.0), std::invalid_argument);
  EXPECT_THROW(GroupElement({group::Mat2{2, 0, 0, 1}}), std::domain_error);
}

TEST(Group, OneParameterSubgroups) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> t{U(rng), U(rng)}, t2{U(rng), U(rng)};
    std::vector<double> sum{t[0] + t2[0], t[1] + t2[1]};
    EXPECT_LT((group::u(t) * group::u(t2)).normalized_distance(group::u(sum)), 1e-15);
    EXPECT_LT((group::v(t) * group::v(t2)).normalized_distance(group::v(sum)), 1e-15);
  }
}

TEST(Group, DiagonalConjugatesUnipotent) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-5, 5), Y(0.1, 10);
  for (int i = 0; i < 1000; ++i) {
    const std::vector<double> y{Y(rng), -Y(rng)}, t{U(rng), U(rng)};
    const std::vector<double> ty{t[0] / (y[0] * y[0]), t[1] / (y[1] * y[1])};
    const GroupElement lhs = group::a(y) * group::u(t);
    const GroupElement rhs = group::u(ty) * group::a(y);
    EXPECT_LT(lhs.normalized_distance(rhs), 1e-12);
  }
}

TEST(Group, AAlpha) {
  const auto F = FieldContext::quadratic(5);
  const GroupElement g = group::a_alpha(F, RingElement(2), 0.5);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(g.place(i).a, 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(g.place(i).d, std::sqrt(2.0), 1e-15);
  }
  EXPECT_LT(group::a_alpha(F, RingElement(1), 0.3).normalized_distance(GroupElement::identity(2)), 1e-15);
  EXPECT_THROW(group::a_alpha(F, RingElement(0, 1), 0.5), std::invalid_argument);
  const auto Q = FieldContext::rational();
  const GroupElement h = group::a_alpha(Q, RingElement(9), 0.5);
  EXPECT_NEAR(h.place(0).a, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(h.place(0).d, 3.0, 1e-15);
}

TEST(Duality, RationalExample) {
  const auto Q = FieldContext::rational();
  const auto r = group::duality_gamma(Q, RingElement(2), RingElement(5));
  EXPECT_EQ(r.j_inverse, RingElement(3));
  EXPECT_EQ(r.gamma, (group::ExactMatrix{RingElement(5), RingElement(-2), RingElement(3), RingElement(-1)}));
  EXPECT_TRUE(r.exact_identity);
  EXPECT_LT(r.residual, 1e-12);
}

TEST(Duality, TrivialDenominator) {
  const auto F = FieldContext::quadratic(5);
  const auto r = group::duality_gamma(F, RingElement(0), RingElement(1));
  EXPECT_EQ(r.gamma, group::ExactMatrix{});
}

TEST(Duality, SqrtTwoExample) {
  const auto F = FieldContext::quadratic(2);
  const auto r = group::duality_gamma(F, RingElement(1), RingElement(2, 1));
  EXPECT_EQ(r.j_inverse, RingElement(1));
  EXPECT_EQ(r.gamma, (group::ExactMatrix{RingElement(2, 1), RingElement(-1), RingElement(1), RingElement(0)}));
  EXPECT_THROW(group::duality_gamma(F, RingElement(0, 1), RingElement(2)), nf::NotInvertible);
}

TEST(Duality, AllCoprimeResiduesSmallNorm) {
  const auto F = FieldContext::quadratic(5);
  std::size_t checked = 0;
  for (const auto& y : nf::balanced_totally_positive(F, 60)) {
    const nf::IdealHNF I = nf::ideal_of(F, y);
    for (const auto& j : nf::residue_representatives(F, I)) {
      if (!nf::coprime(F, j, I)) continue;
      const auto r = group::duality_gamma(F, j, y);
      EXPECT_TRUE(r.exact_identity);
      EXPECT_LT(r.residual, 1e-9);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100u);
}

TEST(UnitDecompose, Examples) {
  const auto F = FieldContext::quadratic(5);
  const auto d0 = group::unit_decompose(F, 0, 0.4);
  EXPECT_EQ(d0.m, 0);
  EXPECT_EQ(d0.gamma, group::ExactMatrix{});
  EXPECT_LT(d0.g.normalized_distance(GroupElement::identity(2)), 1e-15);
  const auto d1 = group::unit_decompose(F, 2, 0.5);
  EXPECT_EQ(d1.m, 1);
  EXPECT_LT(d1.g.normalized_distance(GroupElement::identity(2)), 1e-15);
  const auto d2 = group::unit_decompose(F, 7, 0.3);
  EXPECT_EQ(d2.m, 2);
  const double bound = std::exp(0.1 * F.log_unit()) * (1 + 1e-12);
  for (int i = 0; i < 2; ++i) EXPECT_LE(d2.g.place(i).max_abs(), bound);
}

TEST(UnitDecompose, RandomProductsAreBoundedAndExact) {
  const auto F = FieldContext::quadratic(5);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> K(-30, 30);
  std::uniform_real_distribution<double> A(0.01, 0.99);
  const double cell = 0.5 * F.log_unit() + 1e-12;
  for (int i = 0; i < 1000; ++i) {
    const long long k = K(rng);
    const double alpha = A(rng);
    const auto dec = group::unit_decompose(F, k, alpha);
    EXPECT_EQ(group::determinant(F, dec.gamma), RingElement(1));
    for (int p = 0; p < 2; ++p) EXPECT_LE(std::abs(std::log(dec.g.place(p).d)), cell);
    const GroupElement target = group::a_alpha(F, F.unit_power(k), alpha);
    EXPECT_LT((group::realize(F, dec.gamma) * dec.g).normalized_distance(target), 1e-9);
  }
}

TEST(Cartan, RoundTrip) {
  const auto F = FieldContext::quadratic(2);
  const std::vector<double> x{0.7, -1.9};
  const auto h = group::cartan_coordinates(F, x);
  const GroupElement g = group::cartan_exp(F, h);
  EXPECT_LT(g.normalized_distance(group::a(std::vector<double>{std::exp(0.7), std::exp(-1.9)})), 1e-9);
  // a_alpha(y) is exp(alpha log sigma(y)).
  const RingElement y(7, 3);
  const double alpha = 0.35;
  const std::vector<double> lx{alpha * std::log(F.embed(y, 0)), alpha * std::log(F.embed(y, 1))};
  EXPECT_LT(group::cartan_exp(F, group::cartan_coordinates(F, lx)).normalized_distance(group::a_alpha(F, y, alpha)),
            1e-9);
  // H_1 with coefficient k reproduces the unit diagonal.
  EXPECT_LT(group::cartan_exp(F, {{3.0, 0.0}}).normalized_distance(group::realize(F, group::unit_diagonal(F, 3))),
            1e-9);
}

TEST(UnitAction, PermutesCoprimeResidues) {
  const auto F = FieldContext::quadratic(5);
  for (const RingElement y : {RingElement(3), RingElement(7), RingElement(4, 1), RingElement(6)}) {
    const nf::IdealHNF I = nf::ideal_of(F, y);
    std::set<RingElement> coprime, image;
    for (const auto& j : nf::residue_representatives(F, I)) {
      if (nf::coprime(F, j, I)) coprime.insert(j);
    }
    for (const auto& j : coprime) {
      EXPECT_EQ(group::unit_action_on_parameter(F, j, y, 0), j);
      const RingElement m = group::unit_action_on_parameter(F, j, y, 1);
      EXPECT_TRUE(nf::coprime(F, m, I));
      EXPECT_EQ(group::unit_action_on_parameter(F, m, y, -1), j);
      image.insert(m);
    }
    EXPECT_EQ(image, coprime);
  }
}
