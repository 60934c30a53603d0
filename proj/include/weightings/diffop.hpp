#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weighted_algebra.hpp"

namespace wtg {

/// Local frame V_1..V_n; V_a is declared to lie in K_{-weights[a]}.
struct Frame {
  WeightSequence W;
  std::vector<PolyVectorField> fields;  // components indexed by W.vars()
  std::vector<int> weights;
  std::vector<Rational> base_point;     // a point of N, in W.vars() order

  std::size_t size() const { return fields.size(); }
};

inline Frame coordinate_frame(const WeightSequence& W) {
  Frame F{W, {}, W.weights(), std::vector<Rational>(W.size(), Rational(0))};
  for (std::size_t a = 0; a < W.size(); ++a) F.fields.push_back(coordinate_field(W, a));
  return F;
}

namespace detail {

inline Rational rational_value(const Expr& e, const std::string& what) {
  if (!e.is_constant()) throw PreconditionError(what + " is not a rational constant: " + to_string(e));
  return e.value();
}

/// Value of f at a point (positive coordinates substituted too).
inline Rational value_at(const WeightedPoly& f, const WeightSequence& W, const std::vector<Rational>& p) {
  std::map<std::string, Expr> sub;
  for (std::size_t a = 0; a < W.size(); ++a) sub.emplace(W.vars()[a], Expr(p[a]));
  return rational_value(expand(substitute(to_expr(f), sub)), "value at the base point");
}

using PolyMatrix = std::vector<std::vector<WeightedPoly>>;

inline WeightedPoly determinant(const PolyMatrix& A, const WeightSequence& W) {
  std::size_t n = A.size();
  if (n == 0) return weighted_constant(W, Expr(1));
  if (n == 1) return A[0][0];
  WeightedPoly det = weighted_zero(W);
  for (std::size_t c = 0; c < n; ++c) {
    if (A[0][c].is_zero()) continue;
    PolyMatrix minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<WeightedPoly> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(A[i][j]);
      minor.push_back(std::move(row));
    }
    WeightedPoly term = A[0][c] * determinant(minor, W);
    det = (c % 2 == 0) ? det + term : det - term;
  }
  return det;
}

inline WeightedPoly cofactor(const PolyMatrix& A, std::size_t i, std::size_t j, const WeightSequence& W) {
  PolyMatrix minor;
  for (std::size_t r = 0; r < A.size(); ++r) {
    if (r == i) continue;
    std::vector<WeightedPoly> row;
    for (std::size_t c = 0; c < A.size(); ++c)
      if (c != j) row.push_back(A[r][c]);
    minor.push_back(std::move(row));
  }
  WeightedPoly m = determinant(minor, W);
  return (i + j) % 2 == 0 ? m : -m;
}

}  // namespace detail

/// Throws PreconditionError unless the frame is invertible at its base point, the
/// declared weights hold, and the fields of weight 0 commute along N.
inline void validate_frame(const Frame& F) {
  const WeightSequence& W = F.W;
  if (F.fields.size() != W.size() || F.weights.size() != W.size() || F.base_point.size() != W.size())
    throw PreconditionError("frame size does not match the weight sequence");
  for (std::size_t a = 0; a < W.size(); ++a)
    if (W.weight(a) > 0 && F.base_point[a] != 0) throw PreconditionError("base point is not on N");
  detail::PolyMatrix A(W.size(), std::vector<WeightedPoly>(W.size()));
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t c = 0; c < W.size(); ++c) A[i][c] = F.fields[c].components[i];
  if (detail::value_at(detail::determinant(A, W), W, F.base_point) == 0)
    throw PreconditionError("frame is not invertible at the base point");
  for (std::size_t a = 0; a < W.size(); ++a) {
    if (F.fields[a].is_zero()) throw PreconditionError("zero field in frame");
    if (vf_filtration_degree(F.fields[a], W) < -F.weights[a])
      throw PreconditionError("frame field " + std::to_string(a + 1) + " has filtration degree below -" +
                              std::to_string(F.weights[a]));
  }
  for (std::size_t a = 0; a < W.k0(); ++a)
    for (std::size_t b = a + 1; b < W.k0(); ++b) {
      PolyVectorField br = bracket(F.fields[a], F.fields[b], W);
      for (const auto& c : br.components)
        if (!c.constant_term().is_zero())
          throw PreconditionError("weight-0 frame fields do not commute along N");
    }
}

/// sum_s f_s V^s with V^s = V_1^{s_1} ... V_n^{s_n}.
struct DiffOpStandardForm {
  std::map<Exponent, WeightedPoly> terms;

  void add(const Exponent& s, const WeightedPoly& f) {
    if (f.is_zero()) return;
    auto it = terms.find(s);
    if (it == terms.end()) {
      terms.emplace(s, f);
      return;
    }
    it->second += f;
    if (it->second.is_zero()) terms.erase(it);
  }
  void add(const DiffOpStandardForm& D, const WeightedPoly& g) {
    for (const auto& [s, f] : D.terms) add(s, g * f);
  }
  friend bool operator==(const DiffOpStandardForm& a, const DiffOpStandardForm& b) { return a.terms == b.terms; }
};

/// One letter of a composite operator: a frame field or a multiplication.
struct WordItem {
  std::optional<std::size_t> field;
  WeightedPoly multiplier;

  static WordItem V(std::size_t a) { return WordItem{a, WeightedPoly()}; }
  static WordItem mul(WeightedPoly f) { return WordItem{std::nullopt, std::move(f)}; }
};

class NormalOrderer {
 public:
  explicit NormalOrderer(Frame F) : F_(std::move(F)) {}

  const Frame& frame() const { return F_; }

  DiffOpStandardForm identity() const {
    DiffOpStandardForm D;
    D.add(Exponent(F_.size(), 0), weighted_constant(F_.W, Expr(1)));
    return D;
  }

  /// V_a o D
  DiffOpStandardForm compose_field(std::size_t a, const DiffOpStandardForm& D) {
    DiffOpStandardForm out;
    for (const auto& [s, f] : D.terms) {
      out.add(s, lie_derivative(F_.fields[a], f, F_.W));
      out.add(field_times_monomial(a, s), f);
    }
    return out;
  }

  DiffOpStandardForm order(const std::vector<WordItem>& word) {
    DiffOpStandardForm D = identity();
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (it->field) {
        if (*it->field >= F_.size()) throw Error("frame index out of range");
        D = compose_field(*it->field, D);
      } else {
        DiffOpStandardForm E;
        E.add(D, it->multiplier);
        D = std::move(E);
      }
    }
    return D;
  }

 private:
  /// [V_a, V_b] written as sum_c h_c V_c.
  const std::vector<WeightedPoly>& bracket_coefficients(std::size_t a, std::size_t b) {
    auto key = std::make_pair(a, b);
    if (auto it = brackets_.find(key); it != brackets_.end()) return it->second;
    const WeightSequence& W = F_.W;
    PolyVectorField br = bracket(F_.fields[a], F_.fields[b], W);
    std::vector<WeightedPoly> h(F_.size(), weighted_zero(W));
    if (!br.is_zero()) {
      if (!inverse_) build_inverse();
      for (std::size_t c = 0; c < F_.size(); ++c)
        for (std::size_t i = 0; i < F_.size(); ++i)
          if (!(*inverse_)[c][i].is_zero()) h[c] += (*inverse_)[c][i] * br.components[i];
    }
    return brackets_.emplace(key, std::move(h)).first->second;
  }

  void build_inverse() {
    const WeightSequence& W = F_.W;
    std::size_t n = F_.size();
    detail::PolyMatrix A(n, std::vector<WeightedPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c) A[i][c] = F_.fields[c].components[i];
    WeightedPoly det = detail::determinant(A, W);
    if (!det.is_constant() || !det.constant_term().is_constant() || det.constant_term().is_zero())
      throw PreconditionError("normal ordering needs a frame with constant nonzero determinant");
    Rational inv = 1 / det.constant_term().value();
    detail::PolyMatrix out(n, std::vector<WeightedPoly>(n));
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < n; ++i)
        out[c][i] = detail::cofactor(A, i, c, W).scaled(Expr(inv));
    inverse_ = std::move(out);
  }

  /// V_a o V^s in normal order.
  DiffOpStandardForm field_times_monomial(std::size_t a, const Exponent& s) {
    auto key = std::make_pair(a, s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    DiffOpStandardForm out;
    std::size_t b = 0;
    while (b < a && s[b] == 0) ++b;
    if (b == a) {
      Exponent t = s;
      ++t[a];
      out.add(t, weighted_constant(F_.W, Expr(1)));
    } else {
      // V_a V_b V^{s'} = V_b (V_a V^{s'}) + [V_a, V_b] V^{s'}
      Exponent rest = s;
      --rest[b];
      out = compose_field(b, field_times_monomial(a, rest));
      const auto& h = bracket_coefficients(a, b);
      for (std::size_t c = 0; c < F_.size(); ++c)
        if (!h[c].is_zero()) out.add(field_times_monomial(c, rest), h[c]);
    }
    memo_.emplace(key, out);
    return out;
  }

  Frame F_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<WeightedPoly>> brackets_;
  std::optional<detail::PolyMatrix> inverse_;
  std::map<std::pair<std::size_t, Exponent>, DiffOpStandardForm> memo_;
};

inline DiffOpStandardForm normal_order(const Frame& F, const std::vector<WordItem>& word) {
  return NormalOrderer(F).order(word);
}

/// V^s f, applying V_n first.
inline WeightedPoly apply_monomial(const Frame& F, const Exponent& s, WeightedPoly f) {
  for (std::size_t a = s.size(); a-- > 0;)
    for (int k = 0; k < s[a]; ++k) f = lie_derivative(F.fields[a], f, F.W);
  return f;
}

inline WeightedPoly apply_diffop(const Frame& F, const DiffOpStandardForm& D, const WeightedPoly& f) {
  WeightedPoly out = weighted_zero(F.W);
  for (const auto& [s, c] : D.terms) out += c * apply_monomial(F, s, f);
  return out;
}

/// Left-to-right composite of a word applied to f (the reference for normal_order).
inline WeightedPoly apply_word(const Frame& F, const std::vector<WordItem>& word, WeightedPoly f) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    f = it->field ? lie_derivative(F.fields[*it->field], f, F.W) : it->multiplier * f;
  return f;
}

/// min(0, min_s (deg f_s - w.s)) with frame weights w; the zero operator gets 0.
inline int coefficient_q_weight(const Frame& F, const DiffOpStandardForm& D) {
  int best = 0;
  for (const auto& [s, f] : D.terms) {
    Degree d = filtration_degree(f, F.W);
    if (d.is_infinite()) continue;
    best = std::min(best, d.value() - dot(s, F.weights));
  }
  return best;
}

inline std::string to_string(const DiffOpStandardForm& D) {
  if (D.terms.empty()) return "0";
  std::string out;
  for (const auto& [s, f] : D.terms) {
    std::string mono;
    for (std::size_t a = 0; a < s.size(); ++a) {
      if (!s[a]) continue;
      if (!mono.empty()) mono += "*";
      mono += "V" + std::to_string(a + 1) + (s[a] > 1 ? "^" + std::to_string(s[a]) : "");
    }
    std::string coeff = to_string(to_expr(f));
    std::string term = mono.empty() ? coeff : (coeff == "1" ? mono : "(" + coeff + ")*" + mono);
    out += out.empty() ? term : " + " + term;
  }
  return out;
}

}  // namespace wtg
