#pragma once

#include <map>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace wtg {

/// Element of A_r = K[eps]/(eps^{r+1}); T supplies the coefficients.
template <class T>
class TruncatedSeries {
 public:
  TruncatedSeries(int order, const T& zero) : zero_(zero), c_(static_cast<std::size_t>(order) + 1, zero) {}

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }
  T& operator[](int k) { return c_.at(static_cast<std::size_t>(k)); }
  const std::vector<T>& coefficients() const { return c_; }

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out = a;
    for (int k = 0; k <= a.order(); ++k) out[k] = a[k] + b[k];
    return out;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(a.order(), a.zero_);
    for (int i = 0; i <= a.order(); ++i)
      for (int j = 0; i + j <= a.order(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
  }

  TruncatedSeries scaled(const T& k) const {
    TruncatedSeries out = *this;
    for (auto& x : out.c_) x = k * x;
    return out;
  }

  TruncatedSeries one() const {
    TruncatedSeries out(order(), zero_);
    out.c_[0] = unit_like(zero_);
    return out;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.c_ == b.c_; }

 private:
  static T unit_like(const Rational&) { return Rational(1); }
  template <class C>
  static Polynomial<C> unit_like(const Polynomial<C>& z) {
    return Polynomial<C>::constant(z.vars(), CoeffTraits<C>::one());
  }

  T zero_;
  std::vector<T> c_;
};

using JetScalar = TruncatedSeries<Rational>;

/// Chart on T_r of a chart with variables `base`; slot (a, j) is named "<x_a>.<j>"
/// and has index a*(r+1) + j.
class JetSpace {
 public:
  JetSpace() = default;
  JetSpace(VarOrder base, int order) : base_(std::move(base)), order_(order) {
    if (order < 0) throw Error("negative jet order");
    std::vector<std::string> names;
    for (const auto& v : base_.names())
      for (int j = 0; j <= order_; ++j) names.push_back(v + "." + std::to_string(j));
    slots_ = VarOrder(names);
  }

  const VarOrder& base() const { return base_; }
  int order() const { return order_; }
  std::size_t n() const { return base_.size(); }
  const VarOrder& slots() const { return slots_; }
  std::size_t slot(std::size_t a, int j) const {
    if (j < 0 || j > order_) throw Error("jet level out of range");
    return a * static_cast<std::size_t>(order_ + 1) + static_cast<std::size_t>(j);
  }
  std::size_t var_of(std::size_t slot) const { return slot / static_cast<std::size_t>(order_ + 1); }
  int level_of(std::size_t slot) const { return static_cast<int>(slot % static_cast<std::size_t>(order_ + 1)); }

  RatPoly slot_poly(std::size_t a, int j) const { return RatPoly::variable(slots_, slot(a, j)); }
  RatPoly zero() const { return RatPoly(slots_); }

  friend bool operator==(const JetSpace& a, const JetSpace& b) {
    return a.base_ == b.base_ && a.order_ == b.order_;
  }

 private:
  VarOrder base_;
  int order_ = 0;
  VarOrder slots_;
};

/// Polynomial in the slots of a JetSpace.
using JetPoly = RatPoly;

/// Rational point of T_r in a chart; values laid out like JetSpace slots.
struct JetPoint {
  std::size_t n = 0;
  int r = 0;
  std::vector<Rational> values;

  JetPoint() = default;
  JetPoint(std::size_t n_, int r_) : n(n_), r(r_), values(n_ * static_cast<std::size_t>(r_ + 1), Rational(0)) {}

  const Rational& at(std::size_t a, int j) const { return values.at(a * static_cast<std::size_t>(r + 1) + j); }
  Rational& at(std::size_t a, int j) { return values.at(a * static_cast<std::size_t>(r + 1) + j); }

  friend bool operator==(const JetPoint& x, const JetPoint& y) {
    return x.n == y.n && x.r == y.r && x.values == y.values;
  }
};

/// u(f) = f(sum_j u_{a,j} eps^j) computed in A_r.
inline JetScalar evaluate_jet(const RatPoly& f, const JetPoint& u) {
  if (f.nvars() != u.n && !f.is_zero()) throw Error("jet point dimension does not match the polynomial");
  std::vector<JetScalar> x;
  for (std::size_t a = 0; a < u.n; ++a) {
    JetScalar s(u.r, Rational(0));
    for (int j = 0; j <= u.r; ++j) s[j] = u.at(a, j);
    x.push_back(s);
  }
  JetScalar out(u.r, Rational(0));
  for (const auto& [s, c] : f.terms()) {
    JetScalar term(u.r, Rational(0));
    term[0] = c;
    for (std::size_t a = 0; a < s.size(); ++a)
      for (int k = 0; k < s[a]; ++k) term = term * x[a];
    out = out + term;
  }
  return out;
}

inline JetScalar evaluate_jet(const Expr& f, const VarOrder& vars, const JetPoint& u) {
  return evaluate_jet(to_rat_poly(f, vars), u);
}

/// All lifts f^(0), ..., f^(r): the eps-coefficients of f(sum_j x^(j) eps^j).
inline std::vector<JetPoly> jet_lifts(const RatPoly& f, const JetSpace& J) {
  using Series = TruncatedSeries<RatPoly>;
  int r = J.order();
  std::vector<std::vector<Series>> powers(J.n());
  auto power_of = [&](std::size_t a, int k) -> const Series& {
    auto& cache = powers[a];
    if (cache.empty()) {
      Series one(r, J.zero());
      one[0] = RatPoly::constant(J.slots(), Rational(1));
      cache.push_back(one);
      Series x(r, J.zero());
      for (int j = 0; j <= r; ++j) x[j] = J.slot_poly(a, j);
      cache.push_back(x);
    }
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * cache[1]);
    return cache[static_cast<std::size_t>(k)];
  };
  Series out(r, J.zero());
  for (const auto& [s, c] : f.terms()) {
    Series term(r, J.zero());
    term[0] = RatPoly::constant(J.slots(), c);
    for (std::size_t a = 0; a < s.size(); ++a)
      if (s[a]) term = term * power_of(a, s[a]);
    out = out + term;
  }
  return out.coefficients();
}

inline JetPoly jet_lift(const RatPoly& f, int i, const JetSpace& J) {
  if (i < 0 || i > J.order()) throw Error("lift level " + std::to_string(i) + " out of range");
  return jet_lifts(f, J)[static_cast<std::size_t>(i)];
}

inline JetPoly jet_lift(const Expr& f, int i, const JetSpace& J) { return jet_lift(to_rat_poly(f, J.base()), i, J); }

// ---- vector fields ----

/// Polynomial vector field on the base chart with rational coefficients.
struct RatVectorField {
  std::vector<RatPoly> components;

  bool is_zero() const {
    for (const auto& c : components)
      if (!c.is_zero()) return false;
    return true;
  }
  friend bool operator==(const RatVectorField& a, const RatVectorField& b) { return a.components == b.components; }
};

inline RatPoly apply(const RatVectorField& X, const RatPoly& f) {
  RatPoly out(f.vars());
  for (std::size_t a = 0; a < X.components.size(); ++a)
    if (!X.components[a].is_zero()) out += X.components[a] * f.derivative(a);
  return out;
}

inline RatVectorField bracket(const RatVectorField& X, const RatVectorField& Y) {
  RatVectorField out;
  for (std::size_t b = 0; b < X.components.size(); ++b)
    out.components.push_back(apply(X, Y.components[b]) - apply(Y, X.components[b]));
  return out;
}

/// Vector field on T_r: slot index -> coefficient of d/dx_a^(k).
struct JetVectorField {
  std::map<std::size_t, JetPoly> components;

  bool is_zero() const { return components.empty(); }
  void add(std::size_t slot, const JetPoly& p) {
    if (p.is_zero()) return;
    auto it = components.find(slot);
    if (it == components.end()) {
      components.emplace(slot, p);
      return;
    }
    it->second += p;
    if (it->second.is_zero()) components.erase(it);
  }
  friend bool operator==(const JetVectorField& a, const JetVectorField& b) { return a.components == b.components; }
};

inline JetPoly apply(const JetVectorField& xi, const JetPoly& P) {
  JetPoly out(P.vars());
  for (const auto& [slot, c] : xi.components) out += c * P.derivative(slot);
  return out;
}

inline JetVectorField jet_bracket(const JetVectorField& xi, const JetVectorField& eta) {
  JetVectorField out;
  for (const auto& [slot, c] : eta.components) out.add(slot, apply(xi, c));
  for (const auto& [slot, c] : xi.components) out.add(slot, -apply(eta, c));
  return out;
}

/// X^(-i) = sum_{k=i}^r sum_a f_a^(k-i) d/dx_a^(k)
inline JetVectorField vf_lift(const RatVectorField& X, int i, const JetSpace& J) {
  if (i < 0 || i > J.order()) throw Error("lift level " + std::to_string(i) + " out of range");
  JetVectorField out;
  for (std::size_t a = 0; a < X.components.size(); ++a) {
    if (X.components[a].is_zero()) continue;
    auto lifts = jet_lifts(X.components[a], J);
    for (int k = i; k <= J.order(); ++k) out.add(J.slot(a, k), lifts[static_cast<std::size_t>(k - i)]);
  }
  return out;
}

/// d/dx_a^(j) -> d/dx_a^(j+1), dropping level r.
inline JetVectorField epsilon_shift(const JetVectorField& xi, const JetSpace& J) {
  JetVectorField out;
  for (const auto& [slot, c] : xi.components) {
    int j = J.level_of(slot);
    if (j < J.order()) out.add(slot + 1, c);
  }
  return out;
}

// ---- actions on points ----

/// Psi(eps) = sum_{j>=1} psi_j eps^j; psi[j-1] holds psi_j.
struct Reparametrization {
  std::vector<Rational> psi;

  JetScalar series(int r) const {
    JetScalar s(r, Rational(0));
    for (int j = 1; j <= r && j <= static_cast<int>(psi.size()); ++j) s[j] = psi[static_cast<std::size_t>(j - 1)];
    return s;
  }
};

/// Substitutes eps -> Psi(eps) into a truncated series.
inline JetScalar substitute_series(const JetScalar& u, const JetScalar& Psi) {
  JetScalar out(u.order(), Rational(0));
  JetScalar pk = u.one();
  for (int j = 0; j <= u.order(); ++j) {
    out = out + pk.scaled(u[j]);
    pk = pk * Psi;
  }
  return out;
}

inline JetPoint reparametrize(const JetPoint& u, const Reparametrization& psi) {
  JetScalar Psi = psi.series(u.r);
  JetPoint out(u.n, u.r);
  for (std::size_t a = 0; a < u.n; ++a) {
    JetScalar ua(u.r, Rational(0));
    for (int j = 0; j <= u.r; ++j) ua[j] = u.at(a, j);
    JetScalar va = substitute_series(ua, Psi);
    for (int j = 0; j <= u.r; ++j) out.at(a, j) = va[j];
  }
  return out;
}

/// The monoid product psi2 o psi1, i.e. eps -> Psi1(Psi2(eps)); acting by it equals
/// acting by psi1 and then by psi2.
inline Reparametrization compose(const Reparametrization& psi2, const Reparametrization& psi1, int r) {
  JetScalar s = substitute_series(psi1.series(r), psi2.series(r));
  Reparametrization out;
  for (int j = 1; j <= r; ++j) out.psi.push_back(s[j]);
  return out;
}

/// Tangent vector at a base point of the chart.
struct TangentVector {
  std::vector<Rational> base;
  std::vector<Rational> components;
};

/// u -> u + v eps^r
inline JetPoint tm_translate(const JetPoint& u, const TangentVector& v) {
  if (v.base.size() != u.n || v.components.size() != u.n) throw Error("tangent vector dimension mismatch");
  for (std::size_t a = 0; a < u.n; ++a)
    if (v.base[a] != u.at(a, 0)) throw Error("tangent vector is not based at the base point of the jet");
  JetPoint out = u;
  for (std::size_t a = 0; a < u.n; ++a) out.at(a, u.r) += v.components[a];
  return out;
}

inline std::string to_string(const JetScalar& s) {
  std::vector<Expr> terms;
  for (int k = 0; k <= s.order(); ++k) terms.push_back(Expr(s[k]) * power(var("e"), k));
  return to_string(sum(terms));
}

}  // namespace wtg
