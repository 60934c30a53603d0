// Walks through the library on the weighting x=1, y=2, z=3.
#include <iostream>

#include "weightings/weightings.hpp"

using namespace wtg;

int main() {
  auto W = WeightSequence::from_assignments(parse_weight_assignments("x=1,y=2,z=3"), 3);
  std::cout << "weighting   " << W.str() << "\n";

  std::cout << "degree-4 ideal generated by";
  for (const auto& s : ideal_generators(W, 4)) std::cout << " " << monomial_string(W.vars(), s);
  std::cout << "\n";

  Expr f = parse_expr("x*z + y^2 + sin(x)^5");
  std::cout << "f           " << to_string(f) << "\n";
  std::cout << "wdeg f      " << taylor_filtration_degree(f, W).str() << "\n";
  std::cout << "f^[4]       " << to_string(taylor_homogeneous_approx(f, W, 4)) << "\n";

  auto F = def_interpolant(parse_expr("x*z + y^2 + x^5"), 4, W);
  std::cout << "deformation " << to_string(F.expr) << "\n";
  std::cout << "Theta       " << to_string(theta_field(W)) << "\n";

  auto ch = blowup_chart(W, 1, -1);
  std::cout << "chart y-    " << to_string(ch.forward) << "\n";
  std::cout << "Euler lift  " << field_string(blowup_lift_vf(euler_field(W), W, ch), ch.z) << "\n";

  JetSpace J(VarOrder({"x", "y"}), 2);
  std::cout << "jet lift    " << to_string(jet_lift(parse_expr("x^2*y"), 2, J)) << "\n";

  auto verdict = check_weighting(standard_q(W));
  std::cout << "check       " << (verdict.accepted ? "weighting " + verdict.weights->str() : reason_code(verdict.reason)) << "\n";
  return 0;
}
