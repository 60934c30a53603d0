#pragma once

#include <map>
#include <string>
#include <vector>

#include "geometry.hpp"

namespace wtg {

/// Factor keys are variable names, or "-v" for the positive base (-v) used on a
/// negative chart. Exponents are rational; the chain rule is applied formally.
using RationalExponents = std::map<std::string, Rational>;

class PuiseuxPoly {
 public:
  using TermMap = std::map<RationalExponents, Rational>;

  PuiseuxPoly() = default;
  static PuiseuxPoly constant(const Rational& c) {
    PuiseuxPoly p;
    p.add_term({}, c);
    return p;
  }
  static PuiseuxPoly monomial(const RationalExponents& m, const Rational& c = 1) {
    PuiseuxPoly p;
    p.add_term(m, c);
    return p;
  }
  static PuiseuxPoly variable(const std::string& key, const Rational& e = 1) { return monomial({{key, e}}); }

  /// Polynomial Expr with rational coefficients.
  static PuiseuxPoly from_expr(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Constant:
        return constant(e.value());
      case ExprKind::Variable:
        return variable(e.name());
      case ExprKind::Sum: {
        PuiseuxPoly out;
        for (const auto& t : e.args()) out += from_expr(t);
        return out;
      }
      case ExprKind::Product: {
        PuiseuxPoly out = constant(e.value());
        for (const auto& f : e.args()) out = out * from_expr(f);
        return out;
      }
      case ExprKind::Power:
        return from_expr(e.args()[0]).pow(Rational(e.exponent()));
      case ExprKind::Apply:
        throw NotPolynomialError("'" + to_string(e) + "' is not polynomial");
    }
    return {};
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(RationalExponents m, Rational c) {
    if (c == 0) return;
    normalize(m, c);
    Rational& slot = terms_[m];
    slot += c;
    if (slot == 0) terms_.erase(m);
  }

  PuiseuxPoly& operator+=(const PuiseuxPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b; }
  friend PuiseuxPoly operator-(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b.scaled(-1); }
  friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly out;
    for (const auto& [m, c] : a.terms_)
      for (const auto& [u, d] : b.terms_) {
        RationalExponents e = m;
        for (const auto& [k, q] : u) e[k] += q;
        out.add_term(std::move(e), c * d);
      }
    return out;
  }
  friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a.terms_ == b.terms_; }

  PuiseuxPoly scaled(const Rational& c) const {
    PuiseuxPoly out;
    for (const auto& [m, d] : terms_) out.add_term(m, c * d);
    return out;
  }

  /// Monomials take any rational power (positive coefficient needed for fractions);
  /// sums only nonnegative integer powers.
  PuiseuxPoly pow(const Rational& q) const {
    if (terms_.size() == 1) {
      const auto& [m, c] = *terms_.begin();
      Rational coeff;
      RationalExponents e = m;
      if (is_integer(q)) {
        coeff = wtg::pow(c, q.get_num().get_si());
      } else if (c == 1) {
        coeff = 1;
      } else if (c == -1 && flip_odd_factor(e)) {
        coeff = 1;
      } else {
        throw PreconditionError("fractional power of a monomial with coefficient " + c.get_str());
      }
      for (auto& [k, x] : e) x *= q;
      return monomial(e, coeff);
    }
    if (!is_integer(q) || q < 0) {
      if (is_zero() && q > 0) return {};
      throw PreconditionError("only monomials take fractional or negative powers");
    }
    PuiseuxPoly out = constant(1);
    for (long k = 0; k < q.get_num().get_si(); ++k) out = out * *this;
    return out;
  }

  /// Integer powers of (-v) rewritten as signed powers of v; used to compare values.
  PuiseuxPoly plain_signs() const {
    PuiseuxPoly out;
    for (auto [m, c] : terms_) {
      RationalExponents e;
      for (const auto& [k, q] : m) {
        if (k[0] == '-' && is_integer(q)) {
          if (q.get_num() % 2 != 0) c = -c;
          e[k.substr(1)] += q;
        } else {
          e[k] += q;
        }
      }
      out.add_term(std::move(e), c);
    }
    return out;
  }

  /// d/dv, where a key "-v" contributes a factor -1.
  PuiseuxPoly derivative(const std::string& v) const {
    PuiseuxPoly out;
    for (const auto& [m, c] : terms_)
      for (const auto& [k, q] : m) {
        bool neg = k == "-" + v;
        if (k != v && !neg) continue;
        RationalExponents e = m;
        e[k] -= 1;
        out.add_term(std::move(e), neg ? Rational(-c * q) : Rational(c * q));
      }
    return out;
  }

  /// Simultaneous substitution; a key "-v" without its own image becomes -image(v).
  PuiseuxPoly substitute(const std::map<std::string, PuiseuxPoly>& images) const {
    PuiseuxPoly out;
    for (const auto& [m, c] : terms_) {
      PuiseuxPoly term = constant(c);
      for (const auto& [k, q] : m) {
        PuiseuxPoly base;
        if (auto it = images.find(k); it != images.end()) {
          base = it->second;
        } else if (auto jt = k[0] == '-' ? images.find(k.substr(1)) : images.end(); jt != images.end()) {
          base = jt->second.scaled(-1);
        } else {
          base = variable(k);
        }
        term = term * base.pow(q);
      }
      out += term;
    }
    return out;
  }

 private:
  static std::string flipped(const std::string& k) { return k[0] == '-' ? k.substr(1) : "-" + k; }

  /// -prod b^e = prod b'^e after flipping the sign of one base with an odd integer exponent.
  static bool flip_odd_factor(RationalExponents& m) {
    for (auto it = m.begin(); it != m.end(); ++it)
      if (is_integer(it->second) && it->second.get_num() % 2 != 0) {
        Rational e = it->second;
        std::string k = flipped(it->first);
        m.erase(it);
        m[k] += e;
        return true;
      }
    return false;
  }

  /// Zero exponents dropped; v^k with integer k next to a power of (-v) is folded into that base.
  static void normalize(RationalExponents& m, Rational& c) {
    for (auto it = m.begin(); it != m.end();) {
      auto neg = it->first[0] == '-' ? m.end() : m.find("-" + it->first);
      if (neg != m.end() && is_integer(it->second)) {
        if (it->second.get_num() % 2 != 0) c = -c;
        neg->second += it->second;
        it = m.erase(it);
      } else {
        ++it;
      }
    }
    for (auto it = m.begin(); it != m.end();) it = it->second == 0 ? m.erase(it) : std::next(it);
  }

  TermMap terms_;
};

namespace detail {

inline std::string exponent_suffix(const Rational& q) {
  if (q == 1) return "";
  if (is_integer(q) && q > 0) return "^" + q.get_str();
  return "^(" + q.get_str() + ")";
}

}  // namespace detail

inline std::string to_string(const PuiseuxPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    std::vector<std::pair<std::string, Rational>> factors(m.begin(), m.end());
    auto bare = [](const std::string& k) { return k[0] == '-' ? k.substr(1) : k; };
    std::stable_sort(factors.begin(), factors.end(), [&](const auto& x, const auto& y) { return bare(x.first) < bare(y.first); });
    std::string mono;
    for (const auto& [k, q] : factors) {
      if (!mono.empty()) mono += "*";
      mono += (k[0] == '-' ? "(" + k + ")" : k) + detail::exponent_suffix(q);
    }
    Rational a = abs(c);
    std::string body = mono.empty() ? a.get_str() : (a == 1 ? mono : a.get_str() + "*" + mono);
    if (out.empty())
      out = c < 0 ? "-" + body : body;
    else
      out += (c < 0 ? " - " : " + ") + body;
  }
  return out;
}

struct RationalMonomialMap {
  std::vector<std::string> source;
  std::vector<std::string> target;
  std::vector<PuiseuxPoly> components;  // one per target name, in the source keys
};

/// outer o inner; inner.target must name outer.source.
inline RationalMonomialMap compose(const RationalMonomialMap& outer, const RationalMonomialMap& inner) {
  if (outer.source != inner.target) throw PreconditionError("maps are not composable");
  std::map<std::string, PuiseuxPoly> images;
  for (std::size_t j = 0; j < inner.target.size(); ++j) images.emplace(inner.target[j], inner.components[j]);
  RationalMonomialMap out{inner.source, outer.target, {}};
  for (const auto& c : outer.components) out.components.push_back(c.substitute(images));
  return out;
}

inline RationalMonomialMap identity_map(const std::vector<std::string>& names) {
  RationalMonomialMap out{names, names, {}};
  for (const auto& n : names) out.components.push_back(PuiseuxPoly::variable(n));
  return out;
}

inline std::string to_string(const RationalMonomialMap& m) {
  std::string out;
  for (std::size_t j = 0; j < m.target.size(); ++j) {
    if (j) out += ", ";
    out += m.target[j] + " = " + to_string(m.components[j]);
  }
  return out;
}

/// Chart V_c^sign of the weighted blow-up: the slice +-y_c > 0 of the deformation space.
struct BlowupChart {
  WeightSequence W;
  std::size_t c = 0;
  int sign = 1;
  std::string t = "t";
  std::vector<std::string> z;    // chart coordinate names, W.vars() order
  RationalMonomialMap forward;   // (y, t) -> z
  RationalMonomialMap inverse;   // z -> (y, t) on the slice y_c = sign
};

inline BlowupChart blowup_chart(const WeightSequence& W, std::size_t c, int sign, const std::string& t = "t") {
  detail::check_t_name(W, t);
  if (c >= W.size()) throw PreconditionError("chart index out of range");
  if (W.weight(c) == 0) throw PreconditionError("weight-0 direction " + W.vars()[c] + " is not a blow-up direction");
  if (sign != 1 && sign != -1) throw PreconditionError("chart sign must be +1 or -1");
  BlowupChart ch{W, c, sign, t, {}, {}, {}};
  std::vector<std::string> yt;
  for (std::size_t a = 0; a < W.size(); ++a) {
    ch.z.push_back("z" + std::to_string(a + 1));
    yt.push_back(W.vars()[a]);
  }
  yt.push_back(t);
  const std::string base = sign > 0 ? W.vars()[c] : "-" + W.vars()[c];
  const Rational wc(W.weight(c));
  ch.forward = RationalMonomialMap{yt, ch.z, {}};
  ch.inverse = RationalMonomialMap{ch.z, yt, {}};
  for (std::size_t a = 0; a < W.size(); ++a) {
    if (a == c)
      ch.forward.components.push_back(PuiseuxPoly::monomial({{t, 1}, {base, 1 / wc}}));
    else
      ch.forward.components.push_back(PuiseuxPoly::monomial({{W.vars()[a], 1}, {base, -W.weight(a) / wc}}));
    ch.inverse.components.push_back(a == c ? PuiseuxPoly::constant(sign) : PuiseuxPoly::variable(ch.z[a]));
  }
  ch.inverse.components.push_back(PuiseuxPoly::variable(ch.z[c]));
  return ch;
}

/// Chart change from -> to on their overlap. There y_{to.c} has sign to.sign, so its
/// image is written with the matching signed base.
inline RationalMonomialMap blowup_transition(const BlowupChart& from, const BlowupChart& to) {
  if (!(from.W == to.W) || from.t != to.t) throw PreconditionError("charts belong to different weight sequences");
  RationalMonomialMap inv = from.inverse;
  if (to.c != from.c) {
    const std::string& z = from.z[to.c];
    inv.components[to.c] = to.sign > 0 ? PuiseuxPoly::variable(z) : PuiseuxPoly::variable("-" + z).scaled(-1);
  } else if (to.sign != from.sign) {
    throw PreconditionError("opposite charts of one direction do not overlap");
  }
  return compose(to.forward, inv);
}

/// Pushforward of X~[0] through the chart; one component per chart coordinate.
inline std::vector<PuiseuxPoly> blowup_lift_vf(const PolyVectorField& X, const WeightSequence& W, const BlowupChart& ch) {
  if (!(ch.W == W)) throw PreconditionError("chart belongs to a different weight sequence");
  if (!X.is_zero() && vf_filtration_degree(X, W) < 0)
    throw PreconditionError("only vector fields of filtration degree >= 0 lift to the blow-up");
  DeformationField Xt = def_vf_interpolant(X, 0, W, ch.t);
  std::vector<PuiseuxPoly> comps;
  for (const auto& e : Xt.components) comps.push_back(PuiseuxPoly::from_expr(e));
  PuiseuxPoly tcomp = PuiseuxPoly::from_expr(Xt.t_component);

  std::map<std::string, PuiseuxPoly> section;
  for (std::size_t j = 0; j < ch.inverse.target.size(); ++j)
    section.emplace(ch.inverse.target[j], ch.inverse.components[j]);
  std::vector<PuiseuxPoly> out;
  for (const auto& phi : ch.forward.components) {
    PuiseuxPoly d;
    for (std::size_t a = 0; a < W.size(); ++a)
      if (!comps[a].is_zero()) d += comps[a] * phi.derivative(W.vars()[a]);
    if (!tcomp.is_zero()) d += tcomp * phi.derivative(ch.t);
    out.push_back(d.substitute(section));
  }
  return out;
}

inline std::string field_string(const std::vector<PuiseuxPoly>& comps, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (comps[j].is_zero()) continue;
    bool neg = comps[j].terms().size() == 1 && comps[j].terms().begin()->second < 0;
    PuiseuxPoly mag = neg ? comps[j].scaled(-1) : comps[j];
    std::string c = to_string(mag);
    std::string term = c == "1" ? "D_" + names[j] : (mag.terms().size() > 1 ? "(" + c + ")" : c) + "*D_" + names[j];
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace wtg
