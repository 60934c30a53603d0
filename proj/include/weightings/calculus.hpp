#pragma once

#include <cmath>
#include <map>
#include <random>
#include <string>

#include "expr.hpp"

namespace wtg {

namespace detail {

inline std::vector<Expr> sum_terms(const Expr& e) {
  if (e.kind() == ExprKind::Sum) return e.args();
  return {e};
}

// Distributes the product of two already expanded expressions.
inline Expr multiply_expanded(const Expr& a, const Expr& b) {
  std::vector<Expr> out;
  for (const auto& x : sum_terms(a))
    for (const auto& y : sum_terms(b)) out.push_back(product({x, y}));
  return sum(out);
}

}  // namespace detail

/// Distributes every product and every power of a sum, recursively.
inline Expr expand(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Variable:
      return e;
    case ExprKind::Apply:
      return apply(e.fn(), expand(e.args()[0]));
    case ExprKind::Sum: {
      std::vector<Expr> ts;
      for (const auto& t : e.args()) ts.push_back(expand(t));
      return sum(ts);
    }
    case ExprKind::Product: {
      Expr acc(e.value());
      for (const auto& f : e.args()) acc = detail::multiply_expanded(acc, expand(f));
      return acc;
    }
    case ExprKind::Power: {
      Expr b = expand(e.args()[0]);
      if (b.kind() != ExprKind::Sum) return power(b, e.exponent());
      Expr acc(1);
      for (int k = 0; k < e.exponent(); ++k) acc = detail::multiply_expanded(acc, b);
      return acc;
    }
  }
  return e;
}

/// Values are canonical by construction, so without the flag this is the identity.
inline Expr simplify_canonical(const Expr& e, bool expand_polynomials = false) {
  return expand_polynomials ? expand(e) : e;
}

inline Expr differentiate(const Expr& e, const std::string& v) {
  if (!contains_variable(e, v)) return Expr(0);
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr(0);
    case ExprKind::Variable:
      return Expr(1);
    case ExprKind::Sum: {
      std::vector<Expr> ts;
      for (const auto& t : e.args()) ts.push_back(differentiate(t, v));
      return sum(ts);
    }
    case ExprKind::Product: {
      std::vector<Expr> ts;
      const auto& fs = e.args();
      for (std::size_t i = 0; i < fs.size(); ++i) {
        Expr di = differentiate(fs[i], v);
        if (di.is_zero()) continue;
        std::vector<Expr> parts{Expr(e.value()), di};
        for (std::size_t j = 0; j < fs.size(); ++j)
          if (j != i) parts.push_back(fs[j]);
        ts.push_back(product(parts));
      }
      return sum(ts);
    }
    case ExprKind::Power: {
      const Expr& b = e.args()[0];
      return product({Expr(e.exponent()), power(b, e.exponent() - 1), differentiate(b, v)});
    }
    case ExprKind::Apply: {
      const Expr& u = e.args()[0];
      Expr du = differentiate(u, v);
      switch (e.fn()) {
        case Function::Sin: return product({cos(u), du});
        case Function::Cos: return product({Expr(-1), sin(u), du});
        case Function::Exp: return product({e, du});
      }
    }
  }
  return Expr(0);
}

/// Simultaneous substitution of variables.
inline Expr substitute(const Expr& e, const std::map<std::string, Expr>& images) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Variable: {
      auto it = images.find(e.name());
      return it == images.end() ? e : it->second;
    }
    case ExprKind::Sum: {
      std::vector<Expr> ts;
      for (const auto& t : e.args()) ts.push_back(substitute(t, images));
      return sum(ts);
    }
    case ExprKind::Product: {
      std::vector<Expr> fs{Expr(e.value())};
      for (const auto& f : e.args()) fs.push_back(substitute(f, images));
      return product(fs);
    }
    case ExprKind::Power:
      return power(substitute(e.args()[0], images), e.exponent());
    case ExprKind::Apply:
      return apply(e.fn(), substitute(e.args()[0], images));
  }
  return e;
}

inline double eval_numeric(const Expr& e, const std::map<std::string, double>& at) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return to_double(e.value());
    case ExprKind::Variable: {
      auto it = at.find(e.name());
      if (it == at.end()) throw Error("unassigned variable '" + e.name() + "'");
      return it->second;
    }
    case ExprKind::Sum: {
      double s = 0;
      for (const auto& t : e.args()) s += eval_numeric(t, at);
      return s;
    }
    case ExprKind::Product: {
      double p = to_double(e.value());
      for (const auto& f : e.args()) p *= eval_numeric(f, at);
      return p;
    }
    case ExprKind::Power:
      return std::pow(eval_numeric(e.args()[0], at), e.exponent());
    case ExprKind::Apply: {
      double u = eval_numeric(e.args()[0], at);
      switch (e.fn()) {
        case Function::Sin: return std::sin(u);
        case Function::Cos: return std::cos(u);
        case Function::Exp: return std::exp(u);
      }
    }
  }
  return 0;
}

/// Semantic equality. Equal expanded canonical forms are decisive; otherwise the
/// two sides are compared at 8 pseudo-random rational points (tolerance 1e-9).
/// The canonical test is sound but incomplete for transcendental identities.
inline bool equivalent(const Expr& a, const Expr& b) {
  if (a == b) return true;
  Expr diff = expand(a - b);
  if (diff.is_zero()) return true;
  auto vars = free_variables(a);
  collect_variables(b, vars);
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> num(-24, 24), den(1, 8);
  for (int trial = 0; trial < 8; ++trial) {
    std::map<std::string, double> at;
    for (const auto& v : vars) at[v] = static_cast<double>(num(rng)) / den(rng);
    double va = eval_numeric(a, at), vb = eval_numeric(b, at);
    double scale = std::max({1.0, std::fabs(va), std::fabs(vb)});
    if (!(std::fabs(va - vb) <= 1e-9 * scale)) return false;
  }
  return true;
}

}  // namespace wtg
