#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "calculus.hpp"
#include "expr.hpp"

namespace wtg {

/// Ordered list of distinct variable names.
class VarOrder {
 public:
  VarOrder() = default;
  VarOrder(std::initializer_list<std::string> names) : VarOrder(std::vector<std::string>(names)) {}
  explicit VarOrder(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw Error("duplicate variable '" + names_[i] + "'");
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::string& operator[](std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }
  std::size_t index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error("unknown variable '" + name + "'");
  }
  bool contains(const std::string& name) const { return find(name).has_value(); }

  friend bool operator==(const VarOrder& a, const VarOrder& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
};

using Exponent = std::vector<int>;

inline int exponent_degree(const Exponent& s) {
  int d = 0;
  for (int v : s) d += v;
  return d;
}

inline int dot(const Exponent& s, const std::vector<int>& w) {
  int d = 0;
  for (std::size_t i = 0; i < s.size(); ++i) d += s[i] * w[i];
  return d;
}

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
  static Rational zero() { return 0; }
  static Rational one() { return 1; }
  static bool is_zero(const Rational& c) { return c == 0; }
  static Rational add(const Rational& a, const Rational& b) { return a + b; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational derivative(const Rational&, const std::string&) { return 0; }
  static Expr to_expr(const Rational& c) { return Expr(c); }
  static bool is_negative(const Rational& c) { return c < 0; }
};

// Expr coefficients are kept fully expanded so that equality is canonical for
// polynomial content.
template <>
struct CoeffTraits<Expr> {
  static Expr zero() { return Expr(0); }
  static Expr one() { return Expr(1); }
  static bool is_zero(const Expr& c) { return c.is_zero(); }
  static Expr add(const Expr& a, const Expr& b) { return a + b; }
  static Expr mul(const Expr& a, const Expr& b) { return detail::multiply_expanded(a, b); }
  static Expr from_rational(const Rational& q) { return Expr(q); }
  static Expr derivative(const Expr& c, const std::string& v) { return expand(differentiate(c, v)); }
  static Expr to_expr(const Expr& c) { return c; }
  static bool is_negative(const Expr& c) { return detail::is_negative_term(c); }
};

/// Sparse polynomial over a fixed VarOrder with coefficients in C.
template <class C>
class Polynomial {
 public:
  using Traits = CoeffTraits<C>;
  using TermMap = std::map<Exponent, C>;

  Polynomial() = default;
  explicit Polynomial(VarOrder vars) : vars_(std::move(vars)) {}

  static Polynomial constant(VarOrder vars, const C& c) {
    Polynomial p(std::move(vars));
    p.add_term(Exponent(p.vars_.size(), 0), c);
    return p;
  }
  static Polynomial variable(VarOrder vars, std::size_t i) {
    Polynomial p(std::move(vars));
    Exponent s(p.vars_.size(), 0);
    s.at(i) = 1;
    p.add_term(s, Traits::one());
    return p;
  }
  static Polynomial monomial(VarOrder vars, Exponent s, const C& c) {
    Polynomial p(std::move(vars));
    p.add_term(std::move(s), c);
    return p;
  }

  const VarOrder& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& s, const C& c) {
    if (s.size() != vars_.size()) throw std::invalid_argument("exponent length mismatch");
    if (Traits::is_zero(c)) return;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
      terms_.emplace(s, c);
      return;
    }
    it->second = Traits::add(it->second, c);
    if (Traits::is_zero(it->second)) terms_.erase(it);
  }

  C coefficient(const Exponent& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Traits::zero() : it->second;
  }
  C constant_term() const { return coefficient(Exponent(vars_.size(), 0)); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && exponent_degree(terms_.begin()->first) == 0);
  }

  /// -1 for the zero polynomial.
  int total_degree() const {
    int d = -1;
    for (const auto& [s, c] : terms_) d = std::max(d, exponent_degree(s));
    return d;
  }

  Polynomial operator-() const {
    Polynomial out(vars_);
    for (const auto& [s, c] : terms_) out.terms_.emplace(s, Traits::mul(Traits::from_rational(-1), c));
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    adopt(o);
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += -o; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial out(a.vars_.empty() && a.is_zero() ? b.vars_ : a.vars_);
    if (!(a.vars_ == b.vars_) && !a.is_zero() && !b.is_zero())
      throw std::invalid_argument("polynomial variable orders differ");
    for (const auto& [s, c] : a.terms_)
      for (const auto& [u, d] : b.terms_) {
        Exponent e(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) e[i] = s[i] + u[i];
        out.add_term(e, Traits::mul(c, d));
      }
    return out;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const C& k) const {
    Polynomial out(vars_);
    for (const auto& [s, c] : terms_) out.add_term(s, Traits::mul(k, c));
    return out;
  }

  Polynomial pow(int n) const {
    if (n < 0) throw Error("negative polynomial power");
    Polynomial out = constant(vars_, Traits::one());
    for (int k = 0; k < n; ++k) out *= *this;
    return out;
  }

  Polynomial derivative(std::size_t i) const {
    Polynomial out(vars_);
    for (const auto& [s, c] : terms_) {
      if (s[i] == 0) continue;
      Exponent e = s;
      --e[i];
      out.add_term(e, Traits::mul(Traits::from_rational(s[i]), c));
    }
    return out;
  }

  /// Derivative by name; names outside the VarOrder act on the coefficients.
  Polynomial derivative(const std::string& name) const {
    if (auto i = vars_.find(name)) return derivative(*i);
    Polynomial out(vars_);
    for (const auto& [s, c] : terms_) out.add_term(s, Traits::derivative(c, name));
    return out;
  }

  template <class Pred>
  Polynomial filter(Pred keep) const {
    Polynomial out(vars_);
    for (const auto& [s, c] : terms_)
      if (keep(s, c)) out.terms_.emplace(s, c);
    return out;
  }

  template <class F>
  Polynomial map_coefficients(F f) const {
    Polynomial out(vars_);
    for (const auto& [s, c] : terms_) out.add_term(s, f(c));
    return out;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void adopt(const Polynomial& o) {
    if (vars_ == o.vars_) return;
    if (vars_.empty() && terms_.empty()) {
      vars_ = o.vars_;
      return;
    }
    if (o.is_zero()) return;
    throw std::invalid_argument("polynomial variable orders differ");
  }

  VarOrder vars_;
  TermMap terms_;
};

using RatPoly = Polynomial<Rational>;

/// Substitutes images (polynomials over a common target VarOrder) for the variables.
template <class C>
Polynomial<C> compose(const Polynomial<C>& p, const std::vector<Polynomial<C>>& images,
                      const VarOrder& target) {
  if (images.size() != p.nvars()) throw std::invalid_argument("compose: image count mismatch");
  using Traits = CoeffTraits<C>;
  std::vector<std::vector<Polynomial<C>>> powers(images.size());
  auto power_of = [&](std::size_t i, int k) -> const Polynomial<C>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Polynomial<C>::constant(target, Traits::one()));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  Polynomial<C> out(target);
  for (const auto& [s, c] : p.terms()) {
    Polynomial<C> term = Polynomial<C>::constant(target, c);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) term *= power_of(i, s[i]);
    out += term;
  }
  return out;
}

inline Rational evaluate(const RatPoly& p, const std::vector<Rational>& point) {
  Rational total = 0;
  for (const auto& [s, c] : p.terms()) {
    Rational t = c;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) t *= pow(point[i], s[i]);
    total += t;
  }
  return total;
}

/// Converts a polynomial Expr into a RatPoly; throws when it is not polynomial
/// with rational coefficients in the given variables.
inline RatPoly to_rat_poly(const Expr& e, const VarOrder& vars) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return RatPoly::constant(vars, e.value());
    case ExprKind::Variable:
      if (auto i = vars.find(e.name())) return RatPoly::variable(vars, *i);
      throw NotPolynomialError("unexpected variable '" + e.name() + "'");
    case ExprKind::Sum: {
      RatPoly out(vars);
      for (const auto& t : e.args()) out += to_rat_poly(t, vars);
      return out;
    }
    case ExprKind::Product: {
      RatPoly out = RatPoly::constant(vars, e.value());
      for (const auto& f : e.args()) out *= to_rat_poly(f, vars);
      return out;
    }
    case ExprKind::Power:
      return to_rat_poly(e.args()[0], vars).pow(e.exponent());
    case ExprKind::Apply:
      throw NotPolynomialError("'" + to_string(e) + "' is not polynomial");
  }
  return RatPoly(vars);
}

template <class C>
Expr to_expr(const Polynomial<C>& p) {
  std::vector<Expr> terms;
  for (const auto& [s, c] : p.terms()) {
    std::vector<Expr> fs{CoeffTraits<C>::to_expr(c)};
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) fs.push_back(power(var(p.vars()[i]), s[i]));
    terms.push_back(product(fs));
  }
  return expand(sum(terms));
}

inline std::string monomial_string(const VarOrder& vars, const Exponent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i]) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (s[i] > 1) out += "^" + std::to_string(s[i]);
  }
  return out;
}

/// Canonical term order: weighted degree ascending (total degree without
/// weights), then lexicographically descending exponent vectors.
inline std::vector<Exponent> canonical_order(std::vector<Exponent> exps,
                                             const std::vector<int>* weights = nullptr) {
  auto deg = [&](const Exponent& s) { return weights ? dot(s, *weights) : exponent_degree(s); };
  std::sort(exps.begin(), exps.end(), [&](const Exponent& a, const Exponent& b) {
    int da = deg(a), db = deg(b);
    if (da != db) return da < db;
    return a > b;
  });
  return exps;
}

namespace detail {

inline std::string coefficient_times(const Expr& c, const std::string& mono) {
  if (mono.empty()) return to_string(c);
  if (c.is_one()) return mono;
  if (c.is_constant() && c.value() == -1) return "-" + mono;
  if (c.kind() == ExprKind::Sum) return "(" + to_string(c) + ")*" + mono;
  return to_string(c) + "*" + mono;
}

}  // namespace detail

template <class C>
std::string to_string(const Polynomial<C>& p, const std::vector<int>* weights = nullptr) {
  if (p.is_zero()) return "0";
  std::vector<Exponent> exps;
  for (const auto& [s, c] : p.terms()) exps.push_back(s);
  std::string out;
  bool first = true;
  for (const auto& s : canonical_order(exps, weights)) {
    Expr c = CoeffTraits<C>::to_expr(p.terms().at(s));
    std::string mono = monomial_string(p.vars(), s);
    bool neg = c.kind() != ExprKind::Sum && detail::is_negative_term(c);
    if (first) {
      out = detail::coefficient_times(c, mono);
    } else if (neg) {
      out += " - " + detail::coefficient_times(-c, mono);
    } else {
      out += " + " + detail::coefficient_times(c, mono);
    }
    first = false;
  }
  return out;
}

}  // namespace wtg
