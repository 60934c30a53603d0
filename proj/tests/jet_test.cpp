#include <gtest/gtest.h>

#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace wtg;
using wtg::testing::Rng;

namespace {

JetPoly jp(const std::string& text, const JetSpace& J) { return to_rat_poly(parse_expr(text), J.slots()); }

RatVectorField field(const std::vector<std::string>& comps, const VarOrder& vars) {
  RatVectorField X;
  for (const auto& c : comps) X.components.push_back(to_rat_poly(parse_expr(c), vars));
  return X;
}

JetPoint point1(std::vector<long> v) {
  JetPoint u(1, static_cast<int>(v.size()) - 1);
  for (std::size_t j = 0; j < v.size(); ++j) u.values[j] = v[j];
  return u;
}

}  // namespace

TEST(TruncatedSeries, Arithmetic) {
  JetScalar a(2, Rational(0)), b(2, Rational(0));
  a[0] = 1;
  a[1] = 2;
  b[1] = 1;
  b[2] = 3;
  JetScalar p = a * b;
  EXPECT_EQ(p[0], 0);
  EXPECT_EQ(p[1], 1);
  EXPECT_EQ(p[2], 5);
}

TEST(EvaluateJet, Examples) {
  VarOrder x{"x"};
  JetScalar e1 = evaluate_jet(parse_expr("x"), x, point1({0, 1, 0}));
  EXPECT_EQ(to_string(e1), "e");
  JetScalar c = evaluate_jet(parse_expr("7"), x, point1({2, 3, 4}));
  EXPECT_EQ(c[0], 7);
  EXPECT_EQ(c[1], 0);
  EXPECT_EQ(c[2], 0);
  JetSpace J(x, 3);
  EXPECT_EQ(jet_lift(parse_expr("x^3"), 3, J), jp("3*x.0^2*x.3 + 6*x.0*x.1*x.2 + x.1^3", J));
  EXPECT_THROW(evaluate_jet(parse_expr("sin(x)"), x, point1({0, 1})), NotPolynomialError);
}

TEST(JetLift, Examples) {
  VarOrder v{"x1", "x2"};
  JetSpace J(v, 2);
  EXPECT_EQ(jet_lift(parse_expr("x1*x2"), 2, J), jp("x2.0*x1.2 + x1.0*x2.2 + x1.1*x2.1", J));
  EXPECT_EQ(jet_lift(parse_expr("x1^2 + x2"), 0, J), jp("x1.0^2 + x2.0", J));
  EXPECT_EQ(jet_lift(parse_expr("x1^2 + x2"), 1, J), jp("2*x1.0*x1.1 + x2.1", J));
  EXPECT_THROW(jet_lift(parse_expr("x1"), 3, J), Error);
}

TEST(VfLift, Examples) {
  VarOrder v{"x1", "x2"};
  JetSpace J(v, 2);
  JetVectorField d2 = vf_lift(field({"0", "1"}, v), 2, J);
  ASSERT_EQ(d2.components.size(), 1u);
  EXPECT_EQ(d2.components.begin()->first, J.slot(1, 2));
  JetVectorField X = vf_lift(field({"0", "x1"}, v), 1, J);
  JetVectorField expect;
  expect.add(J.slot(1, 1), jp("x1.0", J));
  expect.add(J.slot(1, 2), jp("x1.1", J));
  EXPECT_EQ(X, expect);
  JetVectorField d1 = vf_lift(field({"1", "0"}, v), 0, J);
  ASSERT_EQ(d1.components.size(), 1u);
  EXPECT_EQ(d1.components.begin()->first, J.slot(0, 0));
}

TEST(JetBracket, Examples) {
  VarOrder v{"x1", "x2"};
  JetSpace J(v, 2);
  auto d1 = vf_lift(field({"1", "0"}, v), 1, J);
  auto x1d2 = vf_lift(field({"0", "x1"}, v), 1, J);
  EXPECT_EQ(jet_bracket(d1, x1d2), vf_lift(field({"0", "1"}, v), 2, J));
  auto top = vf_lift(field({"1", "0"}, v), 2, J);
  EXPECT_TRUE(jet_bracket(top, x1d2).is_zero());
  EXPECT_TRUE(jet_bracket(x1d2, x1d2).is_zero());
}

TEST(Reparametrize, Examples) {
  JetPoint u = point1({0, 1, 0});
  EXPECT_EQ(reparametrize(u, Reparametrization{{1, 1}}), point1({0, 1, 1}));
  JetPoint w = point1({2, 3, 5});
  EXPECT_EQ(reparametrize(w, Reparametrization{{1}}), w);
  EXPECT_EQ(reparametrize(w, Reparametrization{{2}}), point1({2, 6, 20}));
}

TEST(TmTranslate, Examples) {
  JetPoint u = point1({0, 1, 0});
  EXPECT_EQ(tm_translate(u, TangentVector{{0}, {5}}), point1({0, 1, 5}));
  EXPECT_EQ(tm_translate(u, TangentVector{{0}, {0}}), u);
  EXPECT_EQ(tm_translate(tm_translate(u, {{0}, {2}}), {{0}, {3}}), tm_translate(u, {{0}, {5}}));
  EXPECT_THROW(tm_translate(u, TangentVector{{1}, {5}}), Error);
}

TEST(EpsilonShift, Examples) {
  VarOrder v{"x"};
  JetSpace J(v, 2);
  JetVectorField d0;
  d0.add(J.slot(0, 0), jp("1", J));
  JetVectorField d1;
  d1.add(J.slot(0, 1), jp("1", J));
  EXPECT_EQ(epsilon_shift(d0, J), d1);
  JetVectorField d2;
  d2.add(J.slot(0, 2), jp("1", J));
  EXPECT_TRUE(epsilon_shift(d2, J).is_zero());
}

TEST(JetProperties, OracleAndClosedForms) {
  Rng rng(51);
  for (int k = 0; k < 60; ++k) {
    int n = wtg::testing::uniform(rng, 1, 3);
    int r = wtg::testing::uniform(rng, 1, 4);
    std::vector<std::string> names{"x1", "x2", "x3"};
    names.resize(n);
    VarOrder v(names);
    JetSpace J(v, r);
    RatPoly f = wtg::testing::random_rat_poly(rng, v, 4, 5);
    auto lifts = jet_lifts(f, J);
    EXPECT_EQ(lifts[0], wtg::testing::at_base_slots(f, J));
    for (int i = 1; i <= std::min(r, 3); ++i) EXPECT_EQ(lifts[i], wtg::testing::explicit_lift(f, i, J));
    for (int p = 0; p < 5; ++p) {
      JetPoint u = wtg::testing::random_jet_point(rng, n, r);
      JetScalar s = evaluate_jet(f, u);
      for (int i = 0; i <= r; ++i) EXPECT_EQ(evaluate(lifts[i], u.values), s[i]);
    }
  }
}

TEST(JetProperties, ProductRuleAndGrading) {
  Rng rng(52);
  for (int k = 0; k < 100; ++k) {
    int n = wtg::testing::uniform(rng, 1, 3);
    int r = wtg::testing::uniform(rng, 1, 4);
    std::vector<std::string> names{"x1", "x2", "x3"};
    names.resize(n);
    VarOrder v(names);
    JetSpace J(v, r);
    RatPoly f = wtg::testing::random_rat_poly(rng, v, 3, 3);
    RatPoly g = wtg::testing::random_rat_poly(rng, v, 3, 3);
    auto lf = jet_lifts(f, J), lg = jet_lifts(g, J), lfg = jet_lifts(f * g, J);
    for (int i = 0; i <= r; ++i) {
      JetPoly rhs = J.zero();
      for (int j = 0; j <= i; ++j) rhs += lf[j] * lg[i - j];
      EXPECT_EQ(lfg[i], rhs);
      // homogeneous of degree i in the slot levels
      for (const auto& [s, c] : lf[i].terms()) {
        int deg = 0;
        for (std::size_t slot = 0; slot < s.size(); ++slot) deg += s[slot] * J.level_of(slot);
        EXPECT_EQ(deg, i);
      }
    }
  }
}

TEST(JetProperties, DerivationAndBracketLaws) {
  Rng rng(53);
  for (int k = 0; k < 100; ++k) {
    int n = wtg::testing::uniform(rng, 1, 3);
    int r = wtg::testing::uniform(rng, 1, 4);
    std::vector<std::string> names{"x1", "x2", "x3"};
    names.resize(n);
    VarOrder v(names);
    JetSpace J(v, r);
    RatVectorField X = wtg::testing::random_rat_field(rng, v, 2, 2);
    RatVectorField Y = wtg::testing::random_rat_field(rng, v, 2, 2);
    RatPoly f = wtg::testing::random_rat_poly(rng, v, 3, 3);
    int i = wtg::testing::uniform(rng, 0, r), j = wtg::testing::uniform(rng, 0, r);
    auto Xi = vf_lift(X, i, J);
    auto lf = jet_lifts(f, J);
    auto lXf = jet_lifts(apply(X, f), J);
    for (int l = 0; l <= r; ++l) {
      JetPoly expect = l < i ? J.zero() : lXf[l - i];
      EXPECT_EQ(apply(Xi, lf[l]), expect);
    }
    auto lhs = jet_bracket(Xi, vf_lift(Y, j, J));
    if (i + j <= r) {
      EXPECT_EQ(lhs, vf_lift(bracket(X, Y), i + j, J));
    } else {
      EXPECT_TRUE(lhs.is_zero());
    }
    if (i < r) {
      EXPECT_EQ(epsilon_shift(Xi, J), vf_lift(X, i + 1, J));
    }
  }
}

TEST(JetProperties, MonoidLaw) {
  Rng rng(54);
  for (int k = 0; k < 50; ++k) {
    int r = wtg::testing::uniform(rng, 1, 4);
    int n = wtg::testing::uniform(rng, 1, 3);
    JetPoint u = wtg::testing::random_jet_point(rng, n, r);
    Reparametrization p1, p2;
    for (int j = 0; j < r; ++j) {
      p1.psi.push_back(wtg::testing::random_rational(rng));
      p2.psi.push_back(wtg::testing::random_rational(rng));
    }
    EXPECT_EQ(reparametrize(reparametrize(u, p1), p2), reparametrize(u, compose(p2, p1, r)));
    // substitution property on a polynomial
    std::vector<std::string> names{"x1", "x2", "x3"};
    names.resize(n);
    RatPoly f = wtg::testing::random_rat_poly(rng, VarOrder(names), 3, 3);
    EXPECT_EQ(evaluate_jet(f, reparametrize(u, p1)), substitute_series(evaluate_jet(f, u), p1.series(r)));
  }
}
