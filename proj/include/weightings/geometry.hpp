#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weighted_algebra.hpp"

namespace wtg {

/// Lowest weighted degree in the Taylor expansion of an analytic expression,
/// searched up to degree cap.
inline Degree taylor_filtration_degree(const Expr& e, const WeightSequence& W, int cap = 64) {
  if (expand(e).is_zero()) return Degree::infinity();
  for (int d = 1;; d = std::min(2 * d, cap)) {
    WeightedPoly p = weighted_taylor(e, W, d);
    if (!p.is_zero()) return filtration_degree(p, W);
    if (d == cap)
      throw Error("weighted Taylor expansion vanishes up to degree " + std::to_string(cap) +
                  "; the expression may be identically zero");
  }
}

/// Degree-i part of the Taylor expansion; throws when a lower degree is present.
inline WeightedPoly taylor_homogeneous_approx(const Expr& e, const WeightSequence& W, int i) {
  WeightedPoly p = weighted_taylor(e, W, i);
  Degree d = filtration_degree(p, W);
  if (d < Degree(i)) throw PreconditionError("filtration degree " + d.str() + " is below " + std::to_string(i));
  return homogeneous_part(p, W, i);
}

/// phi: source chart -> target chart, one component per target variable (target W order).
struct CoordinateChange {
  WeightSequence source;
  WeightSequence target;
  std::vector<Expr> components;
};

inline void check_shape(const CoordinateChange& phi) {
  if (phi.components.size() != phi.target.size())
    throw PreconditionError("coordinate change has " + std::to_string(phi.components.size()) +
                            " components for " + std::to_string(phi.target.size()) + " target variables");
}

/// Every phi_b has weighted Taylor degree >= w'_b in the source weighting.
inline bool check_morphism(const CoordinateChange& phi) {
  check_shape(phi);
  for (std::size_t b = 0; b < phi.target.size(); ++b) {
    int need = phi.target.weight(b);
    if (need == 0) continue;
    if (!weighted_taylor(phi.components[b], phi.source, need - 1).is_zero()) return false;
  }
  return true;
}

/// Degree-w'_b part of each phi_b. graded_names renames the source variables
/// (source W order); empty keeps them.
inline std::vector<Expr> nu_transition(const CoordinateChange& phi, const std::vector<std::string>& graded_names = {}) {
  if (!check_morphism(phi)) throw PreconditionError("coordinate change does not preserve the weightings");
  std::map<std::string, Expr> rename;
  if (!graded_names.empty()) {
    if (graded_names.size() != phi.source.size()) throw PreconditionError("wrong number of graded coordinate names");
    for (std::size_t a = 0; a < phi.source.size(); ++a) rename.emplace(phi.source.vars()[a], var(graded_names[a]));
  }
  std::vector<Expr> out;
  for (std::size_t b = 0; b < phi.target.size(); ++b) {
    int wb = phi.target.weight(b);
    Expr part = to_expr(homogeneous_part(weighted_taylor(phi.components[b], phi.source, wb), phi.source, wb));
    out.push_back(expand(rename.empty() ? part : substitute(part, rename)));
  }
  return out;
}

// ---- deformation space: coordinates (y, t), y named as the chart variables ----

struct DeformationFunction {
  WeightSequence W;
  std::string t = "t";
  Expr expr;
  int degree = 0;
};

struct DeformationField {
  WeightSequence W;
  std::string t = "t";
  std::vector<Expr> components;  // d/dy_a, W.vars() order
  Expr t_component;              // d/dt
};

namespace detail {

inline void check_t_name(const WeightSequence& W, const std::string& t) {
  if (W.vars().find(t)) throw PreconditionError("deformation parameter '" + t + "' clashes with a chart variable");
}

/// sum_s c_s t^{w.s - shift} y^s
inline Expr interpolate_terms(const WeightedPoly& p, const WeightSequence& W, int shift, const std::string& t) {
  std::vector<Expr> terms;
  for (const auto& [s, c] : p.terms()) {
    int k = dot(s, W.positive_weights()) - shift;
    if (k < 0) throw PreconditionError("negative power of " + t);
    std::vector<Expr> fs{c, power(var(t), k)};
    for (std::size_t j = 0; j < s.size(); ++j)
      if (s[j]) fs.push_back(power(var(p.vars()[j]), s[j]));
    terms.push_back(product(fs));
  }
  return expand(sum(terms));
}

}  // namespace detail

/// f~[i]: t^{-i} f(t^w y) extended over t = 0. f must be polynomial in the positive-weight variables.
inline DeformationFunction def_interpolant(const Expr& f, int i, const WeightSequence& W, const std::string& t = "t") {
  detail::check_t_name(W, t);
  WeightedPoly p = to_weighted(f, W);
  Degree d = filtration_degree(p, W);
  if (d < Degree(i)) throw PreconditionError("filtration degree " + d.str() + " is below " + std::to_string(i));
  return DeformationFunction{W, t, detail::interpolate_terms(p, W, i, t), i};
}

/// X~[i]: t^{-i} X pulled back through the dilation, extended over t = 0.
inline DeformationField def_vf_interpolant(const PolyVectorField& X, int i, const WeightSequence& W,
                                           const std::string& t = "t") {
  detail::check_t_name(W, t);
  if (!X.is_zero() && vf_filtration_degree(X, W) < i)
    throw PreconditionError("vector field filtration degree " + std::to_string(vf_filtration_degree(X, W)) +
                            " is below " + std::to_string(i));
  DeformationField out{W, t, {}, Expr(0)};
  for (std::size_t a = 0; a < W.size(); ++a)
    out.components.push_back(detail::interpolate_terms(X.components[a], W, i + W.weight(a), t));
  return out;
}

/// t d/dt - sum_a w_a y_a d/dy_a
inline DeformationField theta_field(const WeightSequence& W, const std::string& t = "t") {
  detail::check_t_name(W, t);
  DeformationField out{W, t, {}, var(t)};
  for (std::size_t a = 0; a < W.size(); ++a)
    out.components.push_back(expand(Expr(-W.weight(a)) * var(W.vars()[a])));
  return out;
}

inline Expr deformation_lie(const DeformationField& X, const Expr& f) {
  std::vector<Expr> terms;
  for (std::size_t a = 0; a < X.W.size(); ++a)
    if (!X.components[a].is_zero()) terms.push_back(X.components[a] * differentiate(f, X.W.vars()[a]));
  if (!X.t_component.is_zero()) terms.push_back(X.t_component * differentiate(f, X.t));
  return expand(sum(terms));
}

/// Restriction to t = 0, as a field on the weighted normal bundle.
inline PolyVectorField at_zero_fiber(const DeformationField& X) {
  std::map<std::string, Expr> zero{{X.t, Expr(0)}};
  PolyVectorField out = zero_field(X.W);
  for (std::size_t a = 0; a < X.W.size(); ++a)
    out.components[a] = to_weighted(expand(substitute(X.components[a], zero)), X.W);
  return out;
}

inline std::string to_string(const DeformationField& X) {
  std::string out;
  auto add = [&](Expr c, const std::string& v) {
    if (c.is_zero()) return;
    bool neg = c.kind() != ExprKind::Sum && detail::is_negative_term(c);
    if (neg) c = expand(-c);
    std::string coeff = to_string(c);
    std::string d = "D_" + v;
    std::string term = coeff == "1" ? d : (c.kind() == ExprKind::Sum ? "(" + coeff + ")*" + d : coeff + "*" + d);
    if (out.empty())
      out = neg ? "-" + term : term;
    else
      out += (neg ? " - " : " + ") + term;
  };
  for (std::size_t a = 0; a < X.W.size(); ++a) add(X.components[a], X.W.vars()[a]);
  add(X.t_component, X.t);
  return out.empty() ? "0" : out;
}

inline bool euler_like_check(const PolyVectorField& X, const WeightSequence& W) {
  if (X.is_zero() || vf_filtration_degree(X, W) < 0) return false;
  return homogeneous_approx_vf(X, W, 0) == euler_field(W);
}

// ---- numeric scaling order ----

struct ScalingReport {
  double order = 0;
  double residual = 0;  // root mean square of the fit residuals
  std::size_t samples = 0;
  std::vector<Rational> base_point;
  int resamples = 0;
};

struct ScalingOptions {
  std::uint64_t seed = 0;
  std::optional<std::vector<Rational>> base_point;  // W.vars() order; disables resampling
  int kmin = 4;                                     // grid t = 2^-kmin .. 2^-kmax
  int kmax = 12;
  int max_resamples = 8;
};

/// Least-squares slope of log|f(t^w x)| against log t.
inline ScalingReport scaling_order_estimate(const Expr& f, const WeightSequence& W, const ScalingOptions& opt = {}) {
  if (opt.kmax <= opt.kmin) throw PreconditionError("scaling grid needs at least two points");
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> num(4, 16);
  auto sample_point = [&] {
    std::vector<Rational> p;
    for (std::size_t a = 0; a < W.size(); ++a) p.push_back(make_rational(num(rng), 8));
    return p;
  };
  for (int attempt = 0; attempt <= opt.max_resamples; ++attempt) {
    std::vector<Rational> base = opt.base_point ? *opt.base_point : sample_point();
    if (base.size() != W.size()) throw PreconditionError("base point has the wrong dimension");
    std::vector<double> xs, ys;
    bool degenerate = false;
    for (int k = opt.kmin; k <= opt.kmax; ++k) {
      double t = std::ldexp(1.0, -k);
      std::map<std::string, double> at;
      for (std::size_t a = 0; a < W.size(); ++a) at[W.vars()[a]] = base[a].get_d() * std::pow(t, W.weight(a));
      double v = eval_numeric(f, at);
      if (!std::isfinite(v) || v == 0) {
        degenerate = true;
        break;
      }
      xs.push_back(std::log(t));
      ys.push_back(std::log(std::fabs(v)));
    }
    if (degenerate) {
      if (opt.base_point) break;
      continue;
    }
    double n = static_cast<double>(xs.size()), mx = 0, my = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      mx += xs[j];
      my += ys[j];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      sxy += (xs[j] - mx) * (ys[j] - my);
      sxx += (xs[j] - mx) * (xs[j] - mx);
    }
    double slope = sxy / sxx, icpt = my - slope * mx, ss = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      double e = ys[j] - (icpt + slope * xs[j]);
      ss += e * e;
    }
    return ScalingReport{slope, std::sqrt(ss / n), xs.size(), base, attempt};
  }
  throw Error("scaling estimate failed: f vanishes at every sampled dilation");
}

}  // namespace wtg
