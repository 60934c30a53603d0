#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "graph_subbundle.hpp"
#include "linear_algebra.hpp"

namespace wtg {

enum class Reason { FlagInvalid, TmInvariance, LambdaInvariance, FiltrationMismatch, SpanFail, Undecided };

inline const char* reason_code(Reason r) {
  switch (r) {
    case Reason::FlagInvalid: return "FLAG_INVALID";
    case Reason::TmInvariance: return "TM_INVARIANCE";
    case Reason::LambdaInvariance: return "LAMBDA_INVARIANCE";
    case Reason::FiltrationMismatch: return "FILTRATION_MISMATCH";
    case Reason::SpanFail: return "SPAN_FAIL";
    case Reason::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

struct WeightingVerdict {
  bool accepted = false;
  std::optional<WeightSequence> weights;  // set when accepted
  Reason reason = Reason::Undecided;      // meaningful when rejected
  std::string witness;
  std::string detail;
  std::optional<std::size_t> q_dimension;
  std::optional<std::size_t> reconstructed_dimension;

  static WeightingVerdict accept(WeightSequence W) {
    WeightingVerdict v;
    v.accepted = true;
    v.weights = std::move(W);
    return v;
  }
  static WeightingVerdict reject(Reason r, std::string witness, std::string detail) {
    WeightingVerdict v;
    v.reason = r;
    v.witness = std::move(witness);
    v.detail = std::move(detail);
    return v;
  }
};

namespace detail {

/// All exponents of total degree <= d in n variables, graded then lexicographic.
inline std::vector<Exponent> exponents_up_to(std::size_t n, int d) {
  std::vector<Exponent> out;
  Exponent s(n, 0);
  for (int total = 0; total <= d; ++total) {
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == n) {
        s[i] = left;
        out.push_back(s);
        return;
      }
      for (int k = left; k >= 0; --k) {
        s[i] = k;
        rec(i + 1, left - k);
      }
    };
    if (n == 0) {
      if (total == 0) out.push_back(s);
      continue;
    }
    rec(0, total);
  }
  return out;
}

/// Rows indexed by (component, monomial) for vector-valued linear images.
inline RatMatrix coefficient_rows_multi(const std::vector<std::vector<JetPoly>>& images) {
  std::map<std::pair<std::size_t, Exponent>, RatVector> rows;
  for (std::size_t k = 0; k < images.size(); ++k)
    for (std::size_t c = 0; c < images[k].size(); ++c)
      for (const auto& [s, q] : images[k][c].terms()) {
        auto key = std::make_pair(c, s);
        auto it = rows.find(key);
        if (it == rows.end()) it = rows.emplace(key, RatVector(images.size(), Rational(0))).first;
        it->second[k] = q;
      }
  RatMatrix out;
  for (auto& [key, row] : rows) out.push_back(std::move(row));
  return out;
}

inline JetPoly combine(const std::vector<JetPoly>& polys, const RatVector& c, const VarOrder& vars) {
  JetPoly out(vars);
  for (std::size_t k = 0; k < polys.size(); ++k)
    if (c[k] != 0) out += polys[k].scaled(c[k]);
  return out;
}

inline bool depends_on_level_zero(const GraphSubbundle& Q) {
  for (const auto& [s, g] : Q.constraints())
    for (const auto& [e, c] : g.terms())
      for (std::size_t t = 0; t < e.size(); ++t)
        if (e[t] && Q.space().level_of(t) == 0) return true;
  return false;
}

/// Outcome of rebuilding Q' over one base point.
struct Reconstruction {
  bool triangular = true;
  std::string stuck;                   // description when not triangular
  std::vector<std::size_t> rank;       // per level >= 1 (index = level)
  std::optional<std::size_t> witness;  // first Q-constrained slot Q' leaves free
};

/// Rebuilds Q' from the filtration induced by Q on polynomials of total degree <= r,
/// working over the base point p (values for the level-0 slots, in shifted coordinates).
inline Reconstruction reconstruct(const GraphSubbundle& Q, const std::vector<Rational>& p) {
  const JetSpace& J = Q.space();
  const VarOrder& slots = J.slots();
  const int r = J.order();
  const std::size_t n = J.n();

  std::vector<JetPoly> base_sub, fiber_sub;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    bool level0 = J.level_of(s) == 0;
    base_sub.push_back(level0 ? RatPoly::constant(slots, p[J.var_of(s)]) : RatPoly::variable(slots, s));
    fiber_sub.push_back(level0 ? J.zero() : RatPoly::variable(slots, s));
  }
  std::vector<JetPoly> q_sub = fiber_sub;
  for (const auto& [s, g] : Q.constraints())
    if (J.level_of(s) > 0) q_sub[s] = compose(g, base_sub, slots);

  auto monos = exponents_up_to(n, r);
  std::vector<std::vector<JetPoly>> free_lift(monos.size()), on_q(monos.size());
  for (std::size_t m = 0; m < monos.size(); ++m) {
    auto lifts = jet_lifts(RatPoly::monomial(J.base(), monos[m], Rational(1)), J);
    for (const auto& L : lifts) {
      free_lift[m].push_back(compose(L, fiber_sub, slots));
      on_q[m].push_back(compose(L, q_sub, slots));
    }
  }

  // basis[i] spans {f : f^(j)|_Q = 0 for j < i}, as coefficient vectors over monos
  std::vector<RatMatrix> basis(static_cast<std::size_t>(r) + 2);
  for (std::size_t m = 0; m < monos.size(); ++m) {
    RatVector e(monos.size(), Rational(0));
    e[m] = 1;
    basis[0].push_back(e);
  }
  for (int i = 0; i <= r; ++i) {
    const RatMatrix& B = basis[static_cast<std::size_t>(i)];
    std::vector<JetPoly> images;
    for (const auto& b : B) {
      std::vector<JetPoly> col;
      for (const auto& lifts : on_q) col.push_back(lifts[static_cast<std::size_t>(i)]);
      images.push_back(combine(col, b, slots));
    }
    RatMatrix N = nullspace(coefficient_rows(images), B.size());
    RatMatrix next;
    for (const auto& c : N) {
      RatVector v(monos.size(), Rational(0));
      for (std::size_t k = 0; k < B.size(); ++k)
        if (c[k] != 0)
          for (std::size_t m = 0; m < monos.size(); ++m) v[m] += c[k] * B[k][m];
      next.push_back(std::move(v));
    }
    basis[static_cast<std::size_t>(i) + 1] = std::move(next);
  }

  Reconstruction out;
  out.rank.assign(static_cast<std::size_t>(r) + 1, 0);
  std::vector<JetPoly> solved = fiber_sub;  // pivot slots of Q' -> expressions in its free slots
  for (int l = 1; l <= r; ++l) {
    std::vector<RatVector> lin;
    std::vector<JetPoly> rest;
    for (const auto& c : basis[static_cast<std::size_t>(l) + 1]) {
      std::vector<JetPoly> col;
      for (const auto& lifts : free_lift) col.push_back(lifts[static_cast<std::size_t>(l)]);
      JetPoly E = compose(combine(col, c, slots), solved, slots);
      RatVector row(n, Rational(0));
      for (std::size_t a = 0; a < n; ++a) {
        Exponent e(slots.size(), 0);
        e[J.slot(a, l)] = 1;
        row[a] = E.coefficient(e);
        if (row[a] != 0) E -= RatPoly::monomial(slots, e, row[a]);
      }
      lin.push_back(std::move(row));
      rest.push_back(std::move(E));
    }
    // eliminate on [lin | rest]
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t a = 0; a < n && top < lin.size(); ++a) {
      std::size_t p_row = top;
      while (p_row < lin.size() && lin[p_row][a] == 0) ++p_row;
      if (p_row == lin.size()) continue;
      std::swap(lin[p_row], lin[top]);
      std::swap(rest[p_row], rest[top]);
      Rational inv = 1 / lin[top][a];
      for (auto& x : lin[top]) x *= inv;
      rest[top] = rest[top].scaled(inv);
      for (std::size_t k = 0; k < lin.size(); ++k) {
        if (k == top || lin[k][a] == 0) continue;
        Rational f = lin[k][a];
        for (std::size_t b = 0; b < n; ++b) lin[k][b] -= f * lin[top][b];
        rest[k] -= rest[top].scaled(f);
      }
      pivots.push_back(a);
      ++top;
    }
    for (std::size_t k = top; k < rest.size(); ++k)
      if (!rest[k].is_zero()) {
        out.triangular = false;
        out.stuck = "level " + std::to_string(l) + " relation without a linear slot";
        return out;
      }
    for (std::size_t k = 0; k < top; ++k) {
      JetPoly value = -rest[k];
      for (std::size_t b = 0; b < n; ++b)
        if (b != pivots[k] && lin[k][b] != 0) value -= J.slot_poly(b, l).scaled(lin[k][b]);
      solved[J.slot(pivots[k], l)] = value;
    }
    out.rank[static_cast<std::size_t>(l)] = top;

    if (!out.witness) {
      RatMatrix rows(lin.begin(), lin.begin() + static_cast<std::ptrdiff_t>(top));
      for (std::size_t a = 0; a < n && !out.witness; ++a) {
        if (!Q.is_constrained(J.slot(a, l))) continue;
        RatMatrix with = rows;
        RatVector e(n, Rational(0));
        e[a] = 1;
        with.push_back(e);
        if (rank(with, n) > top) out.witness = J.slot(a, l);
      }
    }
  }
  return out;
}

inline std::vector<Rational> random_rationals(std::mt19937_64& rng, std::size_t count) {
  std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(make_rational(num(rng), den(rng)));
  return out;
}

inline std::optional<std::string> lambda_defect(const GraphSubbundle& Q) {
  const JetSpace& J = Q.space();
  const int r = J.order();
  std::vector<std::string> names = J.slots().names();
  for (int j = 1; j <= r; ++j) names.push_back("psi" + std::to_string(j));
  VarOrder big(names);
  std::vector<RatPoly> embed;
  for (std::size_t s = 0; s < J.slots().size(); ++s) embed.push_back(RatPoly::variable(big, s));
  std::vector<RatPoly> generic(J.slots().size(), RatPoly(big));
  for (std::size_t s = 0; s < J.slots().size(); ++s) {
    auto it = Q.constraints().find(s);
    generic[s] = it == Q.constraints().end() ? embed[s] : compose(it->second, embed, big);
  }
  using Series = TruncatedSeries<RatPoly>;
  Series Psi(r, RatPoly(big));
  for (int j = 1; j <= r; ++j) Psi[j] = RatPoly::variable(big, J.slots().size() + static_cast<std::size_t>(j - 1));
  std::vector<RatPoly> image(J.slots().size(), RatPoly(big));
  for (std::size_t a = 0; a < J.n(); ++a) {
    Series acc(r, RatPoly(big));
    Series pk = Psi.one();
    for (int j = 0; j <= r; ++j) {
      acc = acc + pk.scaled(generic[J.slot(a, j)]);
      pk = pk * Psi;
    }
    for (int j = 0; j <= r; ++j) image[J.slot(a, j)] = acc[j];
  }
  for (const auto& [s, g] : Q.constraints())
    if (!(image[s] - compose(g, image, big)).is_zero()) return slot_label(J, s);
  return std::nullopt;
}

}  // namespace detail

inline WeightingVerdict check_weighting(const GraphSubbundle& Q, std::uint64_t seed = 7) {
  const JetSpace& J = Q.space();
  const int r = J.order();

  // N1
  std::vector<int> w;
  try {
    w = derived_weight_vector(Q);
  } catch (const FlagError& e) {
    return WeightingVerdict::reject(Reason::FlagInvalid, e.witness(), e.what());
  }

  // N2: nothing may be imposed on the top level, and lower constraints must avoid it
  for (const auto& [s, g] : Q.constraints()) {
    if (J.level_of(s) == r)
      return WeightingVerdict::reject(Reason::TmInvariance, slot_label(J, s),
                                      "a top-level slot is constrained, so Q is not stable under TM");
    for (const auto& [e, c] : g.terms())
      for (std::size_t t = 0; t < e.size(); ++t)
        if (e[t] && J.level_of(t) == r)
          return WeightingVerdict::reject(Reason::TmInvariance, slot_label(J, s),
                                          "constraint depends on a top-level slot");
  }

  // N3
  if (auto bad = detail::lambda_defect(Q))
    return WeightingVerdict::reject(Reason::LambdaInvariance, *bad,
                                    "a generic reparametrization moves points off this constraint");

  WeightSequence W = WeightSequence::from_weights(J.base().names(), w, r);
  std::mt19937_64 rng(seed);

  // N4
  std::vector<std::vector<Rational>> base_points{std::vector<Rational>(J.n(), Rational(0))};
  if (detail::depends_on_level_zero(Q)) base_points.push_back(detail::random_rationals(rng, J.n()));
  for (const auto& p : base_points) {
    detail::Reconstruction rec = detail::reconstruct(Q, p);
    if (!rec.triangular)
      return WeightingVerdict::reject(Reason::Undecided, rec.stuck,
                                      "the reconstructed system is not triangularly solvable");
    std::size_t extra = 0;
    for (int l = 1; l <= r; ++l) {
      std::size_t q_count = 0;
      for (std::size_t a = 0; a < J.n(); ++a) q_count += Q.is_constrained(J.slot(a, l));
      extra += q_count - rec.rank[static_cast<std::size_t>(l)];
    }
    if (extra > 0) {
      auto v = WeightingVerdict::reject(Reason::FiltrationMismatch, slot_label(J, *rec.witness),
                                        "the subbundle rebuilt from the induced filtration is strictly larger");
      v.q_dimension = Q.dimension();
      v.reconstructed_dimension = Q.dimension() + extra;
      return v;
    }
  }

  // N5: tangent lifts of low-degree polynomial fields must span TQ at sample points
  const VarOrder& base = J.base();
  auto monos = detail::exponents_up_to(J.n(), r);
  std::vector<JetPoint> points{JetPoint(J.n(), r)};
  for (int k = 0; k < 2; ++k) {
    JetPoint u(J.n(), r);
    u.values = detail::random_rationals(rng, u.values.size());
    points.push_back(Q.complete(u));
  }
  std::vector<RatMatrix> spans(points.size());
  for (int i = 0; i <= r; ++i) {
    std::vector<JetVectorField> lifts;
    for (const auto& s : monos)
      for (std::size_t b = 0; b < J.n(); ++b) {
        // no degree window: the chart need not be adapted, so tangency alone decides
        RatVectorField X;
        X.components.assign(J.n(), RatPoly(base));
        X.components[b] = RatPoly::monomial(base, s, Rational(1));
        lifts.push_back(vf_lift(X, i, J));
      }
    if (lifts.empty()) continue;
    std::vector<std::vector<JetPoly>> defects;
    for (const auto& xi : lifts) defects.push_back(tangency_defects(Q, xi));
    RatMatrix tangent = nullspace(detail::coefficient_rows_multi(defects), lifts.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
      std::vector<RatVector> evaluated;
      for (const auto& xi : lifts) {
        RatVector v(J.slots().size(), Rational(0));
        for (const auto& [slot, c] : xi.components) v[slot] = evaluate(c, points[p].values);
        evaluated.push_back(std::move(v));
      }
      for (const auto& c : tangent) {
        RatVector v(J.slots().size(), Rational(0));
        for (std::size_t k = 0; k < lifts.size(); ++k)
          if (c[k] != 0)
            for (std::size_t t = 0; t < v.size(); ++t) v[t] += c[k] * evaluated[k][t];
        spans[p].push_back(std::move(v));
      }
    }
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::size_t rk = rank(spans[p], J.slots().size());
    if (rk < Q.dimension())
      return WeightingVerdict::reject(Reason::SpanFail, "sample point " + std::to_string(p),
                                      "tangent lifts span " + std::to_string(rk) + " of " +
                                          std::to_string(Q.dimension()) + " dimensions");
  }
  return WeightingVerdict::accept(W);
}

}  // namespace wtg
