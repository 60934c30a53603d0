#include <gtest/gtest.h>

#include "support/random.hpp"

using namespace wtg;
using wtg::testing::Rng;

namespace {

WeightSequence ws(const std::string& text, int r) { return weight_sequence(parse_weight_assignments(text), r); }

WeightedPoly wp(const std::string& text, const WeightSequence& W) { return to_weighted(parse_expr(text), W); }

std::set<std::string> generator_strings(const WeightSequence& W, int i) {
  std::set<std::string> out;
  for (const auto& s : ideal_generators(W, i)) out.insert(monomial_string(W.vars(), s));
  return out;
}

}  // namespace

TEST(WeightSequence, Examples) {
  auto W = ws("x=1,y=2,z=3", 3);
  EXPECT_EQ(W.counts(), (std::vector<std::size_t>{0, 1, 2, 3}));
  auto T = ws("x=1,y=1", 1);
  EXPECT_EQ(T.k0(), 0u);
  EXPECT_EQ(T.count(1), 2u);
  auto N = ws("x=0,y=1,z=3", 3);
  EXPECT_EQ(N.k0(), 1u);
  EXPECT_EQ(N.flag(1), (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(ws("x=1,y=4", 3), Error);
  EXPECT_THROW(ws("x=-1", 3), Error);
}

TEST(WeightSequence, SortsStablyByWeight) {
  auto W = ws("z=3,b=1,a=1", 3);
  EXPECT_EQ(W.vars().names(), (std::vector<std::string>{"b", "a", "z"}));
}

TEST(FiltrationDegree, Examples) {
  auto W = ws("x=1,y=2,z=3", 3);
  EXPECT_EQ(filtration_degree(wp("x*z", W), W), Degree(4));
  EXPECT_EQ(filtration_degree(wp("z + x*y + x^3 + x^4", W), W), Degree(3));
  EXPECT_TRUE(filtration_degree(weighted_zero(W), W).is_infinite());
}

TEST(HomogeneousApprox, Examples) {
  auto W = ws("x=1,y=2,z=3", 3);
  EXPECT_EQ(homogeneous_approx(wp("z + x*y + x^3 + x^4", W), W, 3), wp("z + x*y + x^3", W));
  EXPECT_EQ(homogeneous_approx(wp("7", W), W, 0), wp("7", W));
  auto V = ws("x=2", 3);
  EXPECT_THROW(homogeneous_approx(wp("x", V), V, 3), PreconditionError);
}

TEST(WeightedTaylor, Examples) {
  auto W = ws("x=0,y=1,z=3", 3);
  EXPECT_EQ(weighted_taylor(parse_expr("sin(x)*exp(y*z)"), W, 0), wp("sin(x)", W));
  WeightedPoly t = weighted_taylor(parse_expr("3*z + sin(x*y)^3"), W, 3);
  EXPECT_EQ(homogeneous_part(t, W, 3), wp("3*z + x^3*y^3", W));
  auto Y = ws("y=1", 2);
  EXPECT_EQ(weighted_taylor(parse_expr("exp(y)"), Y, 2), wp("1 + y + 1/2*y^2", Y));
}

TEST(WeightedTaylor, AgreesWithNormalFormOnPolynomials) {
  Rng rng(21);
  auto W = ws("x=0,y=1,z=2", 4);
  for (int k = 0; k < 50; ++k) {
    Expr e = wtg::testing::random_expr(rng, {"x"}, 1) * power(var("y") + var("z"), wtg::testing::uniform(rng, 0, 3)) +
             wtg::testing::random_expr(rng, {"y", "z"}, 2);
    WeightedPoly p;
    try {
      p = to_weighted(e, W);
    } catch (const NotPolynomialError&) {
      continue;
    }
    EXPECT_EQ(weighted_taylor(e, W, 4), truncate(p, W, 4)) << to_string(e);
  }
}

TEST(WeightedTaylor, SineSeriesCoefficients) {
  auto W = ws("y=1", 5);
  EXPECT_EQ(weighted_taylor(parse_expr("sin(y)"), W, 5), wp("y - 1/6*y^3 + 1/120*y^5", W));
  EXPECT_EQ(weighted_taylor(parse_expr("cos(y)"), W, 4), wp("1 - 1/2*y^2 + 1/24*y^4", W));
}

TEST(IdealGenerators, Examples) {
  EXPECT_EQ(generator_strings(ws("x=1,y=2,z=3", 3), 4),
            (std::set<std::string>{"x^4", "x^2*y", "x*z", "y*z", "y^2", "z^2"}));
  EXPECT_EQ(generator_strings(ws("x=1,y=1", 1), 2), (std::set<std::string>{"x^2", "x*y", "y^2"}));
  EXPECT_EQ(generator_strings(ws("x=1,y=2", 2), 1), (std::set<std::string>{"x", "y"}));
  EXPECT_EQ(generator_strings(ws("u=0,x=1", 1), 1), (std::set<std::string>{"x"}));
}

TEST(IdealGenerators, GenerateAndAreMinimal) {
  Rng rng(22);
  for (int k = 0; k < 20; ++k) {
    auto W = wtg::testing::random_weights(rng, 3, 0, 3);
    int i = wtg::testing::uniform(rng, 1, 5);
    auto gens = ideal_generators(W, i);
    auto divides = [](const Exponent& a, const Exponent& b) {
      for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
      return true;
    };
    for (std::size_t x = 0; x < gens.size(); ++x)
      for (std::size_t y = 0; y < gens.size(); ++y)
        if (x != y) {
          EXPECT_FALSE(divides(gens[x], gens[y]));
        }
    // every monomial of degree >= i (bounded box) is divisible by a generator
    for (int a = 0; a <= 4; ++a)
      for (int b = 0; b <= 4; ++b)
        for (int c = 0; c <= 4; ++c) {
          Exponent s{a, b, c};
          bool zero_weight_var = false;
          for (std::size_t j = 0; j < 3; ++j)
            if (W.weight(j) == 0 && s[j] > 0) zero_weight_var = true;
          if (zero_weight_var || dot(s, W.weights()) < i) continue;
          bool covered = false;
          for (const auto& g : gens) covered = covered || divides(g, s);
          EXPECT_TRUE(covered);
        }
  }
}

TEST(Dilate, Examples) {
  auto W = ws("x=1,y=2", 2);
  EXPECT_EQ(dilate(wp("x*y", W), W, "t"), parse_expr("t^3*x*y"));
  EXPECT_EQ(dilate(wp("5", W), W, "t"), Expr(5));
}

TEST(Forms, FiltrationDegreeExamples) {
  auto W = ws("x=1,y=2", 2);
  DifferentialFormPoly a, b, c;
  add_form_term(a, {0, 1}, wp("1", W));
  add_form_term(b, {1}, wp("x", W));
  add_form_term(c, {0}, wp("y", W));
  EXPECT_EQ(form_filtration_degree(a, W), Degree(3));
  EXPECT_EQ(form_filtration_degree(b, W), Degree(3));
  EXPECT_EQ(form_filtration_degree(c, W), Degree(3));
  EXPECT_EQ(form_filtration_degree(differential(wp("x*y", W), W), W), Degree(3));
  EXPECT_THROW(form_filtration_degree(DifferentialFormPoly{}, W), PreconditionError);
}

TEST(Forms, ExteriorDerivativeSquaresToZero) {
  Rng rng(23);
  auto W = ws("x=1,y=2,z=1", 2);
  for (int k = 0; k < 20; ++k) {
    auto f = wtg::testing::to_weighted_poly(wtg::testing::random_rat_poly(rng, W.positive_vars(), 4, 4));
    EXPECT_TRUE(exterior_derivative(differential(f, W), W).is_zero());
  }
}

TEST(VectorFields, DegreeExamples) {
  auto W = ws("x1=1,x2=3", 3);
  EXPECT_EQ(vf_filtration_degree(coordinate_field(W, 1), W), -3);
  EXPECT_EQ(vf_filtration_degree(euler_field(W), W), 0);
  PolyVectorField X = zero_field(W);
  X.components[1] = wp("x1^2", W);
  EXPECT_EQ(vf_filtration_degree(X, W), -1);
  EXPECT_THROW(vf_filtration_degree(zero_field(W), W), PreconditionError);
}

TEST(VectorFields, HomogeneousApproxExamples) {
  auto W = ws("x1=1,x2=2", 2);
  PolyVectorField X = coordinate_field(W, 1);
  X.components[0] = wp("x1", W);
  EXPECT_EQ(homogeneous_approx_vf(X, W, -2), coordinate_field(W, 1));
  EXPECT_EQ(homogeneous_approx_vf(euler_field(W), W, 0), euler_field(W));
  auto V = ws("x1=1", 1);
  EXPECT_EQ(homogeneous_approx_vf(coordinate_field(V, 0), V, -1), coordinate_field(V, 0));
  EXPECT_THROW(homogeneous_approx_vf(X, W, -1), PreconditionError);
}

TEST(VectorFields, EulerExamples) {
  auto W = ws("x=1,y=2", 2);
  EXPECT_EQ(to_string(euler_field(W), W), "x*D_x + 2*y*D_y");
  auto Z = ws("u=0,v=0", 0);
  EXPECT_TRUE(euler_field(Z).is_zero());
  EXPECT_EQ(lie_derivative(euler_field(W), wp("x*y", W), W), wp("3*x*y", W));
}

TEST(MultiWeight, Examples) {
  auto MW = parse_multi_weight("x=(1,0),y=(0,1)");
  VarOrder xy{"x", "y"};
  EXPECT_EQ(multi_filtration_degree(poly_normal_form(parse_expr("x*y"), xy), MW),
            (std::vector<Degree>{1, 1}));
  auto M2 = parse_multi_weight("x=(1,1)");
  EXPECT_EQ(multi_filtration_degree(poly_normal_form(parse_expr("x^2"), VarOrder{"x"}), M2),
            (std::vector<Degree>{2, 2}));
  auto zero = multi_filtration_degree(WeightedPoly(xy), MW);
  EXPECT_TRUE(zero[0].is_infinite() && zero[1].is_infinite());
}

TEST(MultiWeight, TotalWeighting) {
  EXPECT_EQ(total_weighting(parse_multi_weight("x=(1,1),y=(0,1)"), 2).weights(), (std::vector<int>{1, 2}));
  auto nested = total_weighting(parse_multi_weight("a=(1,1,1),b=(0,1,1),c=(0,0,1)"), 3);
  EXPECT_EQ(nested.weights(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(nested.vars().names(), (std::vector<std::string>{"c", "b", "a"}));
  EXPECT_EQ(total_weighting(parse_multi_weight("x=(2),y=(0)"), 2).weights(), (std::vector<int>{0, 2}));
  EXPECT_THROW(total_weighting(parse_multi_weight("x=(2,2)"), 3), Error);
}

// ---- properties ----

TEST(WeightedProperties, Multiplicativity) {
  Rng rng(31);
  for (int k = 0; k < 200; ++k) {
    auto W = wtg::testing::random_weights(rng, wtg::testing::uniform(rng, 1, 3), 1, 3);
    auto f = wtg::testing::to_weighted_poly(wtg::testing::random_nonzero_rat_poly(rng, W.positive_vars(), 4, 4));
    auto g = wtg::testing::to_weighted_poly(wtg::testing::random_nonzero_rat_poly(rng, W.positive_vars(), 4, 4));
    EXPECT_EQ(filtration_degree(f * g, W), filtration_degree(f, W) + filtration_degree(g, W));
  }
}

TEST(WeightedProperties, HomogeneityAndGradedMorphism) {
  Rng rng(32);
  for (int k = 0; k < 100; ++k) {
    auto W = wtg::testing::random_weights(rng, 3, 1, 3);
    auto f = wtg::testing::to_weighted_poly(wtg::testing::random_nonzero_rat_poly(rng, W.positive_vars(), 4, 4));
    auto g = wtg::testing::to_weighted_poly(wtg::testing::random_nonzero_rat_poly(rng, W.positive_vars(), 4, 4));
    int i = filtration_degree(f, W).value(), j = filtration_degree(g, W).value();
    WeightedPoly fi = homogeneous_approx(f, W, i), gj = homogeneous_approx(g, W, j);
    EXPECT_EQ(dilate(fi, W, "t"), expand(power(var("t"), i) * to_expr(fi)));
    EXPECT_EQ(homogeneous_approx(f * g, W, i + j), fi * gj);
  }
}

TEST(WeightedProperties, CartanCompatibility) {
  Rng rng(33);
  for (int k = 0; k < 100; ++k) {
    auto W = wtg::testing::random_weights(rng, 3, 1, 3);
    const auto& P = W.positive_vars();
    auto f = wtg::testing::to_weighted_poly(wtg::testing::random_nonzero_rat_poly(rng, P, 4, 4));
    // d-compatibility
    auto df = differential(f, W);
    if (!df.is_zero()) {
      EXPECT_GE(form_filtration_degree(df, W), filtration_degree(f, W));
    }
    PolyVectorField X = zero_field(W), Y = zero_field(W);
    for (std::size_t a = 0; a < W.size(); ++a) {
      X.components[a] = wtg::testing::to_weighted_poly(wtg::testing::random_rat_poly(rng, P, 3, 2));
      Y.components[a] = wtg::testing::to_weighted_poly(wtg::testing::random_rat_poly(rng, P, 3, 2));
    }
    if (X.is_zero() || Y.is_zero()) continue;
    int dx = vf_filtration_degree(X, W), dy = vf_filtration_degree(Y, W);
    WeightedPoly Xf = lie_derivative(X, f, W);
    EXPECT_GE(filtration_degree(Xf, W), filtration_degree(f, W) + Degree(dx));
    auto XY = bracket(X, Y, W);
    if (!XY.is_zero()) {
      EXPECT_GE(vf_filtration_degree(XY, W), std::max(dx + dy, -W.order()));
    }
    if (!df.is_zero()) {
      auto contracted = contraction(X, df);
      if (!contracted.is_zero()) {
        EXPECT_GE(form_filtration_degree(contracted, W), form_filtration_degree(df, W) + Degree(dx));
      }
    }
  }
}
