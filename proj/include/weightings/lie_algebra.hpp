#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <tuple>
#include <map>
#include <string>
#include <vector>

#include "weighted_algebra.hpp"

namespace wtg {

/// Basis element x^s d/dx_a of the frame; s runs over positive-weight variables.
struct FrameLabel {
  Exponent s;
  std::size_t a = 0;  // index into W.vars()
  int degree = 0;     // w.s - w_a < 0
  bool in_l = false;  // s != 0

  friend bool operator<(const FrameLabel& x, const FrameLabel& y) {
    return std::tie(x.a, x.s) < std::tie(y.a, y.s);
  }
};

/// Negatively graded nilpotent Lie algebra k with the subalgebra l marked.
class GradedLieAlgebra {
 public:
  using Vector = std::vector<Rational>;

  GradedLieAlgebra(WeightSequence W, std::vector<FrameLabel> basis)
      : W_(std::move(W)), basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_[{basis_[i].a, basis_[i].s}] = i;
    std::size_t n = basis_.size();
    structure_.assign(n, std::vector<Vector>(n, Vector(n, Rational(0))));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) structure_[i][j] = basis_bracket(basis_[i], basis_[j]);
  }

  const WeightSequence& weights() const { return W_; }
  const std::vector<FrameLabel>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  std::size_t dim_l() const {
    std::size_t k = 0;
    for (const auto& b : basis_) k += b.in_l ? 1 : 0;
    return k;
  }
  /// Structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k.
  const std::vector<std::vector<Vector>>& structure() const { return structure_; }

  std::optional<std::size_t> find(std::size_t a, const Exponent& s) const {
    auto it = index_.find({a, s});
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Vector unit(std::size_t i) const {
    Vector v(dim(), Rational(0));
    v[i] = 1;
    return v;
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    Vector out(dim(), Rational(0));
    for (std::size_t i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (y[j] == 0) continue;
        Rational c = x[i] * y[j];
        for (std::size_t k = 0; k < dim(); ++k)
          if (structure_[i][j][k] != 0) out[k] += c * structure_[i][j][k];
      }
    }
    return out;
  }

  std::string label(std::size_t i) const {
    const auto& b = basis_[i];
    std::string mono = monomial_string(W_.positive_vars(), b.s);
    std::string d = "D_" + W_.vars()[b.a];
    return mono.empty() ? d : mono + "*" + d;
  }

 private:
  // [x^s D_a, x^u D_b] = u_a x^{s+u-e_a} D_b - s_b x^{s+u-e_b} D_a
  Vector basis_bracket(const FrameLabel& X, const FrameLabel& Y) const {
    Vector out(basis_.size(), Rational(0));
    auto add = [&](const Exponent& s, std::size_t a, std::size_t pos, int k, int sign) {
      if (k == 0) return;
      Exponent e = s;
      --e[pos];
      auto idx = find(a, e);
      if (!idx) throw Error("bracket left the frame basis");
      out[*idx] += sign * k;
    };
    std::size_t pa = *W_.positive_index(X.a);
    std::size_t pb = *W_.positive_index(Y.a);
    Exponent su(X.s.size());
    for (std::size_t i = 0; i < su.size(); ++i) su[i] = X.s[i] + Y.s[i];
    add(su, Y.a, pa, Y.s[pa], 1);
    add(su, X.a, pb, X.s[pb], -1);
    return out;
  }

  WeightSequence W_;
  std::vector<FrameLabel> basis_;
  std::map<std::pair<std::size_t, Exponent>, std::size_t> index_;
  std::vector<std::vector<Vector>> structure_;
};

/// Frame of k: all x^s D_a with w_a > 0, s on positive-weight variables and w.s - w_a < 0.
inline GradedLieAlgebra nilpotent_frames(const WeightSequence& W) {
  const auto& pw = W.positive_weights();
  std::size_t m = pw.size();
  std::vector<FrameLabel> basis;
  for (std::size_t a = W.k0(); a < W.size(); ++a) {
    int wa = W.weight(a);
    Exponent s(m, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int used) {
      if (i == m) {
        bool nonzero = exponent_degree(s) > 0;
        basis.push_back(FrameLabel{s, a, used - wa, nonzero});
        return;
      }
      for (int k = 0; used + k * pw[i] < wa; ++k) {
        s[i] = k;
        rec(i + 1, used + k * pw[i]);
      }
      s[i] = 0;
    };
    rec(0, 0);
  }
  std::sort(basis.begin(), basis.end(), [](const FrameLabel& x, const FrameLabel& y) {
    if (x.degree != y.degree) return x.degree < y.degree;
    return x < y;
  });
  return GradedLieAlgebra(W, std::move(basis));
}

}  // namespace wtg
