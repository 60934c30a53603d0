#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "polynomial.hpp"
#include "weight_sequence.hpp"

namespace wtg {

/// Polynomial in the positive-weight variables with Expr coefficients in the
/// weight-0 variables.
using WeightedPoly = Polynomial<Expr>;

inline WeightedPoly weighted_constant(const WeightSequence& W, const Expr& c) {
  return WeightedPoly::constant(W.positive_vars(), expand(c));
}

inline WeightedPoly weighted_zero(const WeightSequence& W) { return WeightedPoly(W.positive_vars()); }

/// The coordinate function x_a (a indexes W.vars()).
inline WeightedPoly weighted_coordinate(const WeightSequence& W, std::size_t a) {
  if (auto i = W.positive_index(a)) return WeightedPoly::variable(W.positive_vars(), *i);
  return weighted_constant(W, var(W.vars()[a]));
}

/// Separates monomials in positive_vars from coefficient functions.
inline WeightedPoly poly_normal_form(const Expr& e, const VarOrder& positive_vars) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return WeightedPoly::constant(positive_vars, e);
    case ExprKind::Variable:
      if (auto i = positive_vars.find(e.name())) return WeightedPoly::variable(positive_vars, *i);
      return WeightedPoly::constant(positive_vars, e);
    case ExprKind::Sum: {
      WeightedPoly out(positive_vars);
      for (const auto& t : e.args()) out += poly_normal_form(t, positive_vars);
      return out;
    }
    case ExprKind::Product: {
      WeightedPoly out = WeightedPoly::constant(positive_vars, Expr(e.value()));
      for (const auto& f : e.args()) out *= poly_normal_form(f, positive_vars);
      return out;
    }
    case ExprKind::Power:
      return poly_normal_form(e.args()[0], positive_vars).pow(e.exponent());
    case ExprKind::Apply:
      for (const auto& v : positive_vars.names())
        if (contains_variable(e, v))
          throw NotPolynomialError("'" + to_string(e) + "' is not polynomial in '" + v + "'");
      return WeightedPoly::constant(positive_vars, expand(e));
  }
  return WeightedPoly(positive_vars);
}

inline WeightedPoly to_weighted(const Expr& e, const WeightSequence& W) {
  return poly_normal_form(e, W.positive_vars());
}

inline Degree filtration_degree(const WeightedPoly& f, const WeightSequence& W) {
  Degree d = Degree::infinity();
  for (const auto& [s, c] : f.terms()) d = std::min(d, Degree(dot(s, W.positive_weights())));
  return d;
}

/// Terms of weighted degree exactly i.
inline WeightedPoly homogeneous_part(const WeightedPoly& f, const WeightSequence& W, int i) {
  return f.filter([&](const Exponent& s, const Expr&) { return dot(s, W.positive_weights()) == i; });
}

inline WeightedPoly truncate(const WeightedPoly& f, const WeightSequence& W, int up_to) {
  return f.filter([&](const Exponent& s, const Expr&) { return dot(s, W.positive_weights()) <= up_to; });
}

inline WeightedPoly homogeneous_approx(const WeightedPoly& f, const WeightSequence& W, int i) {
  Degree d = filtration_degree(f, W);
  if (d < Degree(i))
    throw PreconditionError("filtration degree " + d.str() + " is below " + std::to_string(i));
  return homogeneous_part(f, W, i);
}

namespace detail {

inline WeightedPoly truncated_product(const WeightedPoly& a, const WeightedPoly& b, const WeightSequence& W,
                                      int up_to) {
  WeightedPoly out(a.vars());
  const auto& w = W.positive_weights();
  for (const auto& [s, c] : a.terms()) {
    int ds = dot(s, w);
    if (ds > up_to) continue;
    for (const auto& [u, d] : b.terms()) {
      if (ds + dot(u, w) > up_to) continue;
      Exponent e(s.size());
      for (std::size_t i = 0; i < s.size(); ++i) e[i] = s[i] + u[i];
      out.add_term(e, CoeffTraits<Expr>::mul(c, d));
    }
  }
  return out;
}

// k-th derivative of fn evaluated at a0.
inline Expr function_derivative(Function fn, int k, const Expr& a0) {
  switch (fn) {
    case Function::Sin: {
      static const int sign[4] = {1, 1, -1, -1};
      Expr base = (k % 2 == 0) ? sin(a0) : cos(a0);
      return Expr(sign[k % 4]) * base;
    }
    case Function::Cos: {
      static const int sign[4] = {1, -1, -1, 1};
      Expr base = (k % 2 == 0) ? cos(a0) : sin(a0);
      return Expr(sign[k % 4]) * base;
    }
    case Function::Exp:
      return exp(a0);
  }
  return Expr(0);
}

inline WeightedPoly taylor(const Expr& e, const WeightSequence& W, int up_to) {
  const VarOrder& P = W.positive_vars();
  switch (e.kind()) {
    case ExprKind::Constant:
      return WeightedPoly::constant(P, e);
    case ExprKind::Variable:
      if (auto i = P.find(e.name())) {
        if (W.positive_weights()[*i] > up_to) return WeightedPoly(P);
        return WeightedPoly::variable(P, *i);
      }
      return WeightedPoly::constant(P, e);
    case ExprKind::Sum: {
      WeightedPoly out(P);
      for (const auto& t : e.args()) out += taylor(t, W, up_to);
      return out;
    }
    case ExprKind::Product: {
      WeightedPoly out = WeightedPoly::constant(P, Expr(e.value()));
      for (const auto& f : e.args()) out = truncated_product(out, taylor(f, W, up_to), W, up_to);
      return out;
    }
    case ExprKind::Power: {
      WeightedPoly b = taylor(e.args()[0], W, up_to);
      WeightedPoly out = WeightedPoly::constant(P, Expr(1));
      for (int k = 0; k < e.exponent(); ++k) out = truncated_product(out, b, W, up_to);
      return out;
    }
    case ExprKind::Apply: {
      WeightedPoly u = taylor(e.args()[0], W, up_to);
      Expr a0 = u.constant_term();
      WeightedPoly h = u - WeightedPoly::constant(P, a0);
      WeightedPoly out(P);
      WeightedPoly hk = WeightedPoly::constant(P, Expr(1));
      for (int k = 0; k <= up_to && !hk.is_zero(); ++k) {
        Expr coeff = expand(function_derivative(e.fn(), k, a0) * Expr(Rational(1 / factorial(k))));
        out += hk.scaled(coeff);
        hk = truncated_product(hk, h, W, up_to);
      }
      return out;
    }
  }
  return WeightedPoly(P);
}

}  // namespace detail

/// All weighted-homogeneous components of degree <= up_to. Transcendental heads
/// are expanded in the positive-weight directions around their weight-0 part.
inline WeightedPoly weighted_taylor(const Expr& e, const WeightSequence& W, int up_to) {
  return detail::taylor(e, W, up_to);
}

/// Minimal exponent vectors (over W.vars()) with s.w >= i; s_a = 0 when w_a = 0.
inline std::vector<Exponent> ideal_generators(const WeightSequence& W, int i) {
  if (i < 1) throw PreconditionError("ideal_generators needs i >= 1");
  const auto& w = W.weights();
  std::size_t n = w.size();
  std::vector<Exponent> out;
  Exponent s(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t a) {
    if (a == n) {
      if (dot(s, w) < i) return;
      for (std::size_t b = 0; b < n; ++b)
        if (s[b] > 0 && dot(s, w) - w[b] >= i) return;
      out.push_back(s);
      return;
    }
    if (w[a] == 0) {
      rec(a + 1);
      return;
    }
    int bound = (i + w[a] - 1) / w[a];
    for (int k = 0; k <= bound; ++k) {
      s[a] = k;
      rec(a + 1);
    }
    s[a] = 0;
  };
  rec(0);
  return canonical_order(out, &w);
}

/// Each term multiplied by t^{s.w}; returned as an expanded Expr.
inline Expr dilate(const WeightedPoly& f, const WeightSequence& W, const std::string& t) {
  std::vector<Expr> terms;
  for (const auto& [s, c] : f.terms()) {
    std::vector<Expr> fs{c, power(var(t), dot(s, W.positive_weights()))};
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) fs.push_back(power(var(W.positive_vars()[i]), s[i]));
    terms.push_back(product(fs));
  }
  return expand(sum(terms));
}

/// Partial derivative along chart variable a of W.
inline WeightedPoly partial(const WeightedPoly& f, const WeightSequence& W, std::size_t a) {
  return f.derivative(W.vars()[a]);
}

// ---- vector fields ----

struct PolyVectorField {
  std::vector<WeightedPoly> components;  // coefficient of d/dx_a, a indexing W.vars()

  bool is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const auto& c) { return c.is_zero(); });
  }
  friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
    return a.components == b.components;
  }
};

inline PolyVectorField zero_field(const WeightSequence& W) {
  return PolyVectorField{std::vector<WeightedPoly>(W.size(), weighted_zero(W))};
}

inline PolyVectorField coordinate_field(const WeightSequence& W, std::size_t a) {
  PolyVectorField X = zero_field(W);
  X.components.at(a) = weighted_constant(W, Expr(1));
  return X;
}

inline PolyVectorField operator+(const PolyVectorField& X, const PolyVectorField& Y) {
  PolyVectorField out = X;
  for (std::size_t a = 0; a < out.components.size(); ++a) out.components[a] += Y.components[a];
  return out;
}

inline PolyVectorField operator-(const PolyVectorField& X, const PolyVectorField& Y) {
  PolyVectorField out = X;
  for (std::size_t a = 0; a < out.components.size(); ++a) out.components[a] -= Y.components[a];
  return out;
}

inline PolyVectorField scale(const WeightedPoly& f, const PolyVectorField& X) {
  PolyVectorField out = X;
  for (auto& c : out.components) c = f * c;
  return out;
}

/// X(f) = sum_a X_a df/dx_a
inline WeightedPoly lie_derivative(const PolyVectorField& X, const WeightedPoly& f, const WeightSequence& W) {
  WeightedPoly out = weighted_zero(W);
  for (std::size_t a = 0; a < X.components.size(); ++a) {
    if (X.components[a].is_zero()) continue;
    out += X.components[a] * partial(f, W, a);
  }
  return out;
}

inline PolyVectorField bracket(const PolyVectorField& X, const PolyVectorField& Y, const WeightSequence& W) {
  PolyVectorField out = zero_field(W);
  for (std::size_t b = 0; b < W.size(); ++b)
    out.components[b] = lie_derivative(X, Y.components[b], W) - lie_derivative(Y, X.components[b], W);
  return out;
}

/// min_a (deg f_a - w_a), clamped below at -r.
inline int vf_filtration_degree(const PolyVectorField& X, const WeightSequence& W) {
  if (X.is_zero()) throw PreconditionError("zero vector field has no filtration degree");
  Degree d = Degree::infinity();
  for (std::size_t a = 0; a < W.size(); ++a)
    d = std::min(d, filtration_degree(X.components[a], W) - W.weight(a));
  return std::max(d.value(), -W.order());
}

inline PolyVectorField homogeneous_approx_vf(const PolyVectorField& X, const WeightSequence& W, int i) {
  if (!X.is_zero() && vf_filtration_degree(X, W) < i)
    throw PreconditionError("vector field filtration degree " + std::to_string(vf_filtration_degree(X, W)) +
                            " is below " + std::to_string(i));
  PolyVectorField out = zero_field(W);
  for (std::size_t a = 0; a < W.size(); ++a) out.components[a] = homogeneous_part(X.components[a], W, i + W.weight(a));
  return out;
}

/// E = sum_a w_a x_a d/dx_a
inline PolyVectorField euler_field(const WeightSequence& W) {
  PolyVectorField E = zero_field(W);
  for (std::size_t a = 0; a < W.size(); ++a)
    if (W.weight(a) > 0) E.components[a] = weighted_coordinate(W, a).scaled(Expr(W.weight(a)));
  return E;
}

inline std::string to_string(const PolyVectorField& X, const WeightSequence& W) {
  std::string out;
  for (std::size_t a = 0; a < W.size(); ++a) {
    const auto& c = X.components[a];
    if (c.is_zero()) continue;
    std::string coeff = to_string(c, &W.positive_weights());
    std::string d = "D_" + W.vars()[a];
    std::string term;
    if (coeff == "1") {
      term = d;
    } else if (c.terms().size() > 1) {
      term = "(" + coeff + ")*" + d;
    } else {
      term = coeff + "*" + d;
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

// ---- differential forms ----

struct DifferentialFormPoly {
  std::map<std::vector<std::size_t>, WeightedPoly> terms;  // strictly increasing index tuples

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const DifferentialFormPoly& a, const DifferentialFormPoly& b) {
    return a.terms == b.terms;
  }
};

/// Adds f dx_{i1} ^ ... ^ dx_{iq} for arbitrary (possibly unsorted) indices.
inline void add_form_term(DifferentialFormPoly& alpha, std::vector<std::size_t> idx, WeightedPoly f) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  for (std::size_t i = 0; i + 1 < idx.size(); ++i)
    if (idx[i] == idx[i + 1]) return;
  if (sign < 0) f = -f;
  auto it = alpha.terms.find(idx);
  if (it == alpha.terms.end()) {
    if (!f.is_zero()) alpha.terms.emplace(idx, f);
    return;
  }
  it->second += f;
  if (it->second.is_zero()) alpha.terms.erase(it);
}

inline DifferentialFormPoly differential(const WeightedPoly& f, const WeightSequence& W) {
  DifferentialFormPoly df;
  for (std::size_t a = 0; a < W.size(); ++a) add_form_term(df, {a}, partial(f, W, a));
  return df;
}

inline DifferentialFormPoly exterior_derivative(const DifferentialFormPoly& alpha, const WeightSequence& W) {
  DifferentialFormPoly out;
  for (const auto& [idx, f] : alpha.terms)
    for (std::size_t a = 0; a < W.size(); ++a) {
      std::vector<std::size_t> j{a};
      j.insert(j.end(), idx.begin(), idx.end());
      add_form_term(out, j, partial(f, W, a));
    }
  return out;
}

/// Interior product i_X alpha.
inline DifferentialFormPoly contraction(const PolyVectorField& X, const DifferentialFormPoly& alpha) {
  DifferentialFormPoly out;
  for (const auto& [idx, f] : alpha.terms)
    for (std::size_t nu = 0; nu < idx.size(); ++nu) {
      std::vector<std::size_t> rest;
      for (std::size_t m = 0; m < idx.size(); ++m)
        if (m != nu) rest.push_back(idx[m]);
      WeightedPoly g = X.components[idx[nu]] * f;
      add_form_term(out, rest, nu % 2 ? -g : g);
    }
  return out;
}

/// min over terms of deg(coefficient) + sum of the weights of the differentials.
inline Degree form_filtration_degree(const DifferentialFormPoly& alpha, const WeightSequence& W) {
  if (alpha.is_zero()) throw PreconditionError("zero form has no filtration degree");
  Degree d = Degree::infinity();
  for (const auto& [idx, f] : alpha.terms) {
    int wsum = 0;
    for (auto a : idx) wsum += W.weight(a);
    d = std::min(d, filtration_degree(f, W) + Degree(wsum));
  }
  return d;
}

// ---- multi-weightings ----

struct MultiWeight {
  VarOrder vars;
  std::vector<std::vector<int>> weights;  // one vector of length d per variable

  std::size_t dimension() const { return weights.empty() ? 0 : weights.front().size(); }
};

inline MultiWeight make_multi_weight(const std::vector<std::string>& names, const std::vector<std::vector<int>>& w) {
  if (names.size() != w.size() || w.empty()) throw Error("multi-weight needs one vector per variable");
  std::size_t d = w.front().size();
  if (d == 0) throw Error("multi-weight vectors must be non-empty");
  for (const auto& v : w) {
    if (v.size() != d) throw Error("multi-weight vectors differ in length");
    for (int x : v)
      if (x < 0) throw Error("negative multi-weight entry");
  }
  return MultiWeight{VarOrder(names), w};
}

/// Parses "x=(1,0),y=(0,1)".
inline MultiWeight parse_multi_weight(const std::string& text) {
  std::vector<std::string> names;
  std::vector<std::vector<int>> ws;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  while (true) {
    skip();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    if (start == pos) throw ParseError("expected variable name", pos);
    names.push_back(text.substr(start, pos - start));
    skip();
    if (pos >= text.size() || text[pos] != '=') throw ParseError("expected '='", pos);
    ++pos;
    skip();
    if (pos >= text.size() || text[pos] != '(') throw ParseError("expected '('", pos);
    ++pos;
    std::vector<int> v;
    while (true) {
      skip();
      std::size_t s = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (s == pos) throw ParseError("expected nonnegative integer", pos);
      v.push_back(std::stoi(text.substr(s, pos - s)));
      skip();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      throw ParseError("expected ',' or ')'", pos);
    }
    ws.push_back(v);
    skip();
    if (pos == text.size()) break;
    if (text[pos] != ',') throw ParseError("expected ','", pos);
    ++pos;
  }
  return make_multi_weight(names, ws);
}

/// Componentwise min over terms of s.w; f's variables are looked up by name.
inline std::vector<Degree> multi_filtration_degree(const WeightedPoly& f, const MultiWeight& MW) {
  std::size_t d = MW.dimension();
  std::vector<Degree> out(d, Degree::infinity());
  std::vector<std::size_t> map;
  for (const auto& v : f.vars().names()) map.push_back(MW.vars.index_of(v));
  for (const auto& [s, c] : f.terms())
    for (std::size_t k = 0; k < d; ++k) {
      int deg = 0;
      for (std::size_t i = 0; i < s.size(); ++i) deg += s[i] * MW.weights[map[i]][k];
      out[k] = std::min(out[k], Degree(deg));
    }
  return out;
}

/// Weight |w_a| = sum of the components of w_a.
inline WeightSequence total_weighting(const MultiWeight& MW, int order) {
  std::vector<std::pair<std::string, int>> as;
  for (std::size_t a = 0; a < MW.vars.size(); ++a) {
    int total = 0;
    for (int x : MW.weights[a]) total += x;
    as.emplace_back(MW.vars[a], total);
  }
  return WeightSequence::from_assignments(as, order);
}

}  // namespace wtg
