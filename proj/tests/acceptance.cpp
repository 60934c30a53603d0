// Acceptance criteria 1-11. Prints one PASS/FAIL line per criterion; exit status 1 if any fail.
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "support/frames.hpp"
#include "support/oracles.hpp"
#include "support/random.hpp"

using namespace wtg;
using wtg::testing::Rng;
using wtg::testing::uniform;

namespace {

// Collects the first failure message of a criterion.
struct Check {
  std::string failure;
  bool ok() const { return failure.empty(); }
  void expect(bool cond, const std::string& what) {
    if (!cond && failure.empty()) failure = what;
  }
};

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(WEIGHTINGS_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VarOrder first_vars(int n) {
  std::vector<std::string> names{"x1", "x2", "x3"};
  names.resize(static_cast<std::size_t>(n));
  return VarOrder(names);
}

WeightSequence ws(const std::vector<std::string>& names, const std::vector<int>& w) {
  return WeightSequence::from_weights(names, w);
}

void generators(Check& c) {
  auto W = WeightSequence::from_assignments(parse_weight_assignments("x=1,y=2,z=3"), 3);
  std::set<std::string> got;
  for (const auto& s : ideal_generators(W, 4)) got.insert(monomial_string(W.vars(), s));
  c.expect(got == std::set<std::string>{"x^4", "x^2*y", "x*z", "y*z", "y^2", "z^2"}, "generator set differs");
}

void jet_lift_formulas(Check& c) {
  Rng rng(1001);
  for (int k = 0; k < 100; ++k) {
    int n = uniform(rng, 1, 3);
    VarOrder v = first_vars(n);
    JetSpace J(v, 3);
    RatPoly f = wtg::testing::random_rat_poly(rng, v, 4, 5);
    std::vector<JetPoly> lifts;
    for (int i = 0; i <= 3; ++i) lifts.push_back(jet_lift(to_expr(f), i, J));
    for (int i = 1; i <= 3; ++i)
      c.expect(lifts[i] == wtg::testing::explicit_lift(f, i, J), "closed form mismatch for " + to_string(f));
    for (int p = 0; p < 20; ++p) {
      JetPoint u = wtg::testing::random_jet_point(rng, static_cast<std::size_t>(n), 3);
      JetScalar s = evaluate_jet(f, u);
      for (int i = 0; i <= 3; ++i) c.expect(evaluate(lifts[i], u.values) == s[i], "oracle mismatch for " + to_string(f));
    }
  }
}

void product_and_bracket(Check& c) {
  Rng rng(1002);
  for (int k = 0; k < 100; ++k) {
    VarOrder v = first_vars(uniform(rng, 1, 3));
    JetSpace J(v, uniform(rng, 1, 4));
    RatPoly f = wtg::testing::random_rat_poly(rng, v, 3, 3);
    RatPoly g = wtg::testing::random_rat_poly(rng, v, 3, 3);
    auto lf = jet_lifts(f, J), lg = jet_lifts(g, J), lfg = jet_lifts(f * g, J);
    for (int i = 0; i <= J.order(); ++i) {
      JetPoly rhs = J.zero();
      for (int j = 0; j <= i; ++j) rhs += lf[j] * lg[i - j];
      c.expect(lfg[i] == rhs, "product rule");
    }
  }
  for (int k = 0; k < 100; ++k) {
    VarOrder v = first_vars(uniform(rng, 1, 3));
    JetSpace J(v, uniform(rng, 1, 4));
    RatVectorField X = wtg::testing::random_rat_field(rng, v, 2, 2);
    RatVectorField Y = wtg::testing::random_rat_field(rng, v, 2, 2);
    int i = uniform(rng, 0, J.order()), j = uniform(rng, 0, J.order());
    auto lhs = jet_bracket(vf_lift(X, i, J), vf_lift(Y, j, J));
    if (i + j <= J.order())
      c.expect(lhs == vf_lift(bracket(X, Y), i + j, J), "bracket relation");
    else
      c.expect(lhs.is_zero(), "bracket above the order must vanish");
  }
}

void transition_example(Check& c) {
  auto W = ws({"x", "y", "z"}, {0, 1, 3});
  CoordinateChange phi{W, W, {parse_expr("sin(x)*exp(y*z)"), parse_expr("y*exp(x*y)"), parse_expr("3*z + sin(x*y)^3")}};
  auto nu = nu_transition(phi, {"y0", "y1", "y3"});
  c.expect(nu.size() == 3, "three components");
  if (nu.size() != 3) return;
  c.expect(nu[0] == parse_expr("sin(y0)"), "first component " + to_string(nu[0]));
  c.expect(nu[1] == parse_expr("y1"), "second component " + to_string(nu[1]));
  c.expect(nu[2] == parse_expr("3*y3 + y0^3*y1^3"), "third component " + to_string(nu[2]));
}

void weighting_criterion(Check& c) {
  Rng rng(1005);
  for (int k = 0; k < 20; ++k) {
    int n = uniform(rng, 1, 4);
    auto W = wtg::testing::random_weights(rng, n, 0, 4);
    auto v = check_weighting(standard_q(W));
    c.expect(v.accepted && v.weights->weights() == W.weights(), "standard subbundle rejected for " + W.str());
  }
  auto flag = check_weighting(parse_graph_subbundle(fixture("skipped_flag.graph")));
  c.expect(!flag.accepted && flag.reason == Reason::FlagInvalid, "skipped flag not rejected with FLAG_INVALID");
  auto quad = check_weighting(parse_graph_subbundle(fixture("quadratic_order4.graph")));
  c.expect(!quad.accepted && quad.reason == Reason::FiltrationMismatch, "quadratic graph not rejected with FILTRATION_MISMATCH");
  c.expect(quad.reconstructed_dimension == 10u && quad.q_dimension == 9u, "dimensions 10 vs 9");
}

void adapted(Check& c) {
  auto W = ws({"x1", "x2"}, {1, 3});
  Frame C = coordinate_frame(W);
  auto change = adapted_coordinates(C, {{"y1", parse_expr("x1")}, {"y2", parse_expr("x2 + x1^2")}});
  bool found = false;
  for (const auto& e : change.trace)
    if (e.a == 1 && e.s == Exponent{2, 0}) found = e.chi == Expr(-1) && e.c == 2;
  c.expect(found, "chi = -1, c = 2 entry");
  c.expect(change.x[1] == parse_expr("y2 - y1^2"), "x2 = y2 - y1^2");
  c.expect(verify_adapted(change.x_chart, C), "output adapted");
  c.expect(!verify_adapted({parse_expr("x1"), parse_expr("x2 + x1^2")}, C), "input not adapted");

  Rng rng(1006);
  for (int k = 0; k < 10; ++k) {
    auto Wr = wtg::testing::random_weights(rng, uniform(rng, 2, 3), 0, 4);
    Frame F = wtg::testing::random_frame(rng, Wr);
    validate_frame(F);
    auto ch = adapted_coordinates(F, wtg::testing::perturbed_coordinates(rng, Wr));
    c.expect(verify_adapted(ch.x_chart, F), "perturbed frame not adapted for " + Wr.str());
  }
}

// Rewrites u^a v^b to u^(a-b); false if some exponent goes negative.
bool collapse_inverse(const Expr& e, Expr& out) {
  std::vector<Expr> terms;
  for (const auto& term : detail::sum_terms(e)) {
    auto ex = detail::variable_exponents(term);
    int k = ex["u"] - ex["v"];
    if (k < 0) return false;
    terms.push_back(expand(substitute(term, {{"u", Expr(1)}, {"v", Expr(1)}})) * power(var("u"), k));
  }
  out = expand(sum(terms));
  return true;
}

void deformation(Check& c) {
  Rng rng(1007);
  for (int k = 0; k < 50; ++k) {
    auto W = wtg::testing::random_weights(rng, uniform(rng, 1, 3), 0, 3);
    Expr f = to_expr(wtg::testing::random_nonzero_rat_poly(rng, W.vars(), 4, 4));
    WeightedPoly fp = to_weighted(f, W);
    int i = uniform(rng, 0, filtration_degree(fp, W).value());
    auto F = def_interpolant(f, i, W);
    c.expect(expand(substitute(F.expr, {{"t", Expr(1)}})) == expand(f), "t = 1");
    c.expect(expand(substitute(F.expr, {{"t", Expr(0)}})) == to_expr(homogeneous_approx(fp, W, i)), "t = 0");
    for (const auto& term : detail::sum_terms(F.expr))
      c.expect(detail::variable_exponents(term)["t"] >= 0, "negative power of t");
    std::map<std::string, Expr> act{{"t", var("t") * var("v")}};
    for (std::size_t a = 0; a < W.size(); ++a) act.emplace(W.vars()[a], power(var("u"), W.weight(a)) * var(W.vars()[a]));
    Expr scaled;
    c.expect(collapse_inverse(expand(substitute(F.expr, act)), scaled) && scaled == expand(power(var("u"), i) * F.expr),
             "u-homogeneity");
    c.expect(deformation_lie(theta_field(W), F.expr) == expand(Expr(-i) * F.expr), "Theta eigenvalue");
  }
}

void blowup_euler(Check& c) {
  for (const auto& W : {ws({"y1"}, {1}), ws({"y1", "y2"}, {1, 2}), ws({"y1", "y2", "y3"}, {1, 2, 3}),
                        ws({"y1", "y2"}, {2, 3})})
    for (std::size_t a = 0; a < W.size(); ++a)
      for (int sign : {1, -1}) {
        auto ch = blowup_chart(W, a, sign);
        std::vector<PuiseuxPoly> expected(ch.z.size());
        expected[ch.c] = PuiseuxPoly::variable(ch.z[ch.c]);
        c.expect(blowup_lift_vf(euler_field(W), W, ch) == expected, "Euler lift in " + W.str());
      }
}

using Vec = GradedLieAlgebra::Vector;

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Vec add(Vec a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

void nilpotent(Check& c) {
  auto k = nilpotent_frames(ws({"x1", "x2"}, {1, 2}));
  c.expect(k.dim() == 3 && k.dim_l() == 1, "dimensions for (1,2)");
  auto d1 = k.find(0, {0, 0}), d2 = k.find(1, {0, 0}), x1d2 = k.find(1, {1, 0});
  c.expect(d1 && d2 && x1d2 && k.bracket(k.unit(*d1), k.unit(*x1d2)) == k.unit(*d2), "Heisenberg bracket");

  Rng rng(1009);
  for (int trial = 0; trial < 10; ++trial) {
    auto W = wtg::testing::random_weights(rng, uniform(rng, 1, 3), 0, 3);
    auto L = nilpotent_frames(W);
    std::size_t n = L.dim();
    c.expect(L.dim() - L.dim_l() == W.size() - W.k0(), "dim k - dim l");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec ij = L.bracket(L.unit(i), L.unit(j));
        c.expect(is_zero(add(ij, L.bracket(L.unit(j), L.unit(i)))), "antisymmetry");
        for (std::size_t m = 0; m < n; ++m)
          if (ij[m] != 0) c.expect(L.basis()[m].degree == L.basis()[i].degree + L.basis()[j].degree, "degree additivity");
        for (std::size_t l = 0; l < n; ++l)
          c.expect(is_zero(add(add(L.bracket(L.unit(i), L.bracket(L.unit(j), L.unit(l))),
                                   L.bracket(L.unit(j), L.bracket(L.unit(l), L.unit(i)))),
                               L.bracket(L.unit(l), L.bracket(L.unit(i), L.unit(j))))),
                   "Jacobi");
      }
    for (int s = 0; s < 20 && n > 0; ++s) {
      Vec acc = L.unit(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1)));
      for (int depth = 0; depth < W.order(); ++depth)
        acc = L.bracket(L.unit(static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(n) - 1))), acc);
      c.expect(is_zero(acc), "(r+1)-fold bracket");
    }
  }
}

void multiplicativity_and_bound(Check& c) {
  Rng rng(1010);
  for (int k = 0; k < 200; ++k) {
    auto W = wtg::testing::random_weights(rng, uniform(rng, 1, 3), 1, 3);
    auto f = wtg::testing::to_weighted_poly(wtg::testing::random_nonzero_rat_poly(rng, W.positive_vars(), 4, 4));
    auto g = wtg::testing::to_weighted_poly(wtg::testing::random_nonzero_rat_poly(rng, W.positive_vars(), 4, 4));
    c.expect(filtration_degree(f * g, W) == filtration_degree(f, W) + filtration_degree(g, W), "multiplicativity");
  }
  for (int k = 0; k < 200; ++k) {
    auto W = wtg::testing::random_weights(rng, uniform(rng, 1, 3), 0, 3);
    Frame F = wtg::testing::random_frame(rng, W);
    auto D = normal_order(F, wtg::testing::random_word(rng, F, uniform(rng, 1, 3)));
    auto f = to_weighted(to_expr(wtg::testing::random_nonzero_rat_poly(rng, W.vars(), 4, 4)), W);
    auto Df = apply_diffop(F, D, f);
    if (Df.is_zero()) continue;
    c.expect(filtration_degree(Df, W) >= filtration_degree(f, W) + Degree(coefficient_q_weight(F, D)), "operator degree bound");
  }
}

void scaling(Check& c) {
  Rng rng(1011);
  auto start = std::chrono::steady_clock::now();
  for (int k = 0; k < 20; ++k) {
    auto W = wtg::testing::random_weights(rng, uniform(rng, 1, 3), 1, 3);
    Expr f = to_expr(wtg::testing::random_nonzero_rat_poly(rng, W.vars(), 4, 4));
    if (f.is_constant()) f = f + var(W.vars()[0]);
    ScalingOptions opt;
    opt.seed = static_cast<std::uint64_t>(k);
    double expected = filtration_degree(to_weighted(f, W), W).value();
    double got = scaling_order_estimate(f, W, opt).order;
    std::ostringstream msg;
    msg << "slope " << got << " vs " << expected << " for " << to_string(f);
    c.expect(std::abs(got - expected) <= 0.05, msg.str());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 5.0, "runtime " + std::to_string(secs) + " s");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"monomial generators for w=(1,2,3), i=4", generators},
      {"jet lifts match closed forms and the jet oracle", jet_lift_formulas},
      {"jet product rule and lifted bracket relation", product_and_bracket},
      {"transition map on the weighted normal bundle", transition_example},
      {"weighting criterion accepts standard and rejects counterexamples", weighting_criterion},
      {"adapted coordinates recursion", adapted},
      {"deformation interpolant identities", deformation},
      {"Euler field lifts to z_c d/dz_c on blow-up charts", blowup_euler},
      {"nilpotent Lie algebra of a weighting", nilpotent},
      {"filtration multiplicativity and operator degree bound", multiplicativity_and_bound},
      {"numeric scaling estimator", scaling},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first;
    if (!c.ok()) std::cout << " (" << c.failure << ")";
    std::cout << " [" << std::fixed;
    std::cout.precision(2);
    std::cout << secs << " s]\n";
    std::cout.unsetf(std::ios::fixed);
    failed += !c.ok();
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
