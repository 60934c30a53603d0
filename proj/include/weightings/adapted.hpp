#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "diffop.hpp"
#include "weighted_algebra.hpp"

namespace wtg {

struct AdaptedTraceEntry {
  std::size_t a = 0;  // index into W.vars()
  Exponent s;
  Expr chi;           // depends on weight-0 coordinates only (chart names)
  Rational c;         // V^s(y^s)|_N
};

struct AdaptedChange {
  WeightSequence Wy;            // the input coordinates y with the weights of W
  std::vector<Expr> x;          // x_a in the y names
  std::vector<Expr> x_chart;    // x_a in the chart variables
  std::vector<WeightedPoly> h;  // x_a - y_a over Wy
  std::vector<AdaptedTraceEntry> trace;
};

namespace detail {

inline WeightedPoly restrict_to_n(const WeightedPoly& f, const WeightSequence& W) {
  return weighted_constant(W, f.constant_term());
}

/// Multi-indices s supported on positive-weight indices with |s| >= min_order and w.s < bound,
/// ordered by |s| and then lexicographically.
inline std::vector<Exponent> low_weight_indices(const WeightSequence& W, int bound, int min_order) {
  std::vector<Exponent> out;
  Exponent s(W.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t a, int used) {
    if (a == W.size()) {
      if (exponent_degree(s) >= min_order) out.push_back(s);
      return;
    }
    if (W.weight(a) == 0) {
      rec(a + 1, used);
      return;
    }
    for (int k = 0; used + k * W.weight(a) < bound; ++k) {
      s[a] = k;
      rec(a + 1, used + k * W.weight(a));
    }
    s[a] = 0;
  };
  if (bound > 0) rec(0, 0);
  std::stable_sort(out.begin(), out.end(), [](const Exponent& u, const Exponent& v) {
    int du = exponent_degree(u), dv = exponent_degree(v);
    return du != dv ? du < dv : u < v;
  });
  return out;
}

inline WeightedPoly power_product(const std::vector<WeightedPoly>& y, const Exponent& u, const WeightSequence& W) {
  WeightedPoly out = weighted_constant(W, Expr(1));
  for (std::size_t b = 0; b < u.size(); ++b)
    if (u[b]) out *= y[b].pow(u[b]);
  return out;
}

}  // namespace detail

/// (V^s x_a)|_N = 0 whenever s lives on positive weights and w.s < w_a.
inline bool verify_adapted(const std::vector<Expr>& x, const Frame& F) {
  const WeightSequence& W = F.W;
  if (x.size() != W.size()) throw PreconditionError("coordinate count does not match the weight sequence");
  for (std::size_t a = 0; a < W.size(); ++a) {
    WeightedPoly xa = to_weighted(x[a], W);
    for (const auto& s : detail::low_weight_indices(W, W.weight(a), 0))
      if (!apply_monomial(F, s, xa).constant_term().is_zero()) return false;
  }
  return true;
}

/// y: (name, expression in the chart variables) per coordinate, in W.vars() order.
inline AdaptedChange adapted_coordinates(const Frame& F, const std::vector<std::pair<std::string, Expr>>& y) {
  const WeightSequence& W = F.W;
  const std::size_t n = W.size();
  if (y.size() != n) throw PreconditionError("coordinate count does not match the weight sequence");
  if (F.weights != W.weights()) throw PreconditionError("frame weights do not match the weight sequence");

  std::vector<WeightedPoly> yp;
  for (const auto& [name, e] : y) yp.push_back(to_weighted(e, W));
  for (std::size_t a = 0; a < n; ++a) {
    if (a < W.k0() && !equivalent(y[a].second, var(W.vars()[a])))
      throw PreconditionError("weight-0 coordinate " + y[a].first + " must equal " + W.vars()[a]);
    if (a >= W.k0() && !yp[a].constant_term().is_zero())
      throw PreconditionError("coordinate " + y[a].first + " does not vanish on N");
    for (std::size_t b = 0; b < n; ++b) {
      Expr v = lie_derivative(F.fields[b], yp[a], W).constant_term();
      if (!equivalent(v, Expr(a == b ? 1 : 0)))
        throw PreconditionError("(V_" + std::to_string(b + 1) + " " + y[a].first + ")|_N is " + to_string(v) +
                                ", expected " + (a == b ? "1" : "0"));
    }
  }

  AdaptedChange out;
  std::vector<std::string> ynames;
  for (const auto& [name, e] : y) ynames.push_back(name);
  out.Wy = WeightSequence::from_weights(ynames, W.weights(), W.order());
  std::map<std::string, Expr> chart_to_y;
  for (std::size_t a = 0; a < W.k0(); ++a) chart_to_y.emplace(W.vars()[a], var(ynames[a]));

  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::pair<Exponent, Expr>> chis;
    for (const auto& s : detail::low_weight_indices(W, W.weight(a), 2)) {
      WeightedPoly ys = detail::power_product(yp, s, W);
      Expr c_expr = apply_monomial(F, s, ys).constant_term();
      if (c_expr.is_zero()) throw PreconditionError("c_s vanishes for s = " + monomial_string(W.vars(), s));
      Rational c = detail::rational_value(c_expr, "c_s");
      WeightedPoly acc = apply_monomial(F, s, yp[a]);
      for (const auto& [u, chi] : chis)
        if (exponent_degree(u) < exponent_degree(s))
          acc += apply_monomial(F, s, weighted_constant(W, chi) * detail::power_product(yp, u, W));
      Expr chi = expand(Expr(-1 / c) * acc.constant_term());
      out.trace.push_back({a, s, chi, c});
      if (!chi.is_zero()) chis.emplace_back(s, chi);
    }
    WeightedPoly xa = yp[a];
    std::vector<Expr> in_y{var(ynames[a])};
    WeightedPoly ha = weighted_zero(out.Wy);
    for (const auto& [u, chi] : chis) {
      xa += weighted_constant(W, chi) * detail::power_product(yp, u, W);
      Expr chi_y = expand(substitute(chi, chart_to_y));
      std::vector<Expr> fs{chi_y};
      for (std::size_t b = 0; b < n; ++b)
        if (u[b]) fs.push_back(power(var(ynames[b]), u[b]));
      in_y.push_back(product(fs));
      ha += to_weighted(product(fs), out.Wy);
    }
    out.x.push_back(expand(sum(in_y)));
    out.x_chart.push_back(to_expr(xa));
    out.h.push_back(ha);
  }
  return out;
}

/// Truncated inverse y(x) of x = y + h(y), as polynomials over the same symbols; exact
/// up to total degree r in the positive-weight variables.
inline std::vector<WeightedPoly> invert_change(const AdaptedChange& change) {
  const WeightSequence& Wy = change.Wy;
  const VarOrder& pos = Wy.positive_vars();
  const int r = Wy.order();
  auto trunc = [&](const WeightedPoly& f) {
    return f.filter([&](const Exponent& s, const Expr&) { return exponent_degree(s) <= r; });
  };
  std::vector<WeightedPoly> ident, h_pos;
  for (std::size_t a = 0; a < Wy.size(); ++a)
    if (Wy.weight(a) > 0) {
      ident.push_back(weighted_coordinate(Wy, a));
      h_pos.push_back(change.h[a]);
    }
  std::vector<WeightedPoly> psi = ident;
  for (int k = 0; k <= r; ++k) {
    std::vector<WeightedPoly> next;
    for (std::size_t b = 0; b < psi.size(); ++b) next.push_back(trunc(ident[b] - compose(h_pos[b], psi, pos)));
    psi = std::move(next);
  }
  std::vector<WeightedPoly> out;
  std::size_t k = 0;
  for (std::size_t a = 0; a < Wy.size(); ++a)
    out.push_back(Wy.weight(a) > 0 ? psi[k++] : weighted_coordinate(Wy, a));
  return out;
}

}  // namespace wtg
