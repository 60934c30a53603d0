#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jet.hpp"
#include "parse.hpp"
#include "weighted_algebra.hpp"

namespace wtg {

/// Raised when the constrained slots do not form an initial segment in each variable.
class FlagError : public Error {
 public:
  FlagError(const std::string& msg, std::string witness) : Error(msg), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

inline std::string slot_label(const JetSpace& J, std::size_t slot) {
  return J.base()[J.var_of(slot)] + " level " + std::to_string(J.level_of(slot));
}

/// Subbundle of T_rM written as x_a^(j) = g_{a,j}(free slots).
class GraphSubbundle {
 public:
  GraphSubbundle() = default;
  GraphSubbundle(JetSpace J, std::map<std::size_t, JetPoly> constraints)
      : J_(std::move(J)), constraints_(std::move(constraints)) {
    validate();
  }

  const JetSpace& space() const { return J_; }
  const VarOrder& base() const { return J_.base(); }
  int order() const { return J_.order(); }
  const std::map<std::size_t, JetPoly>& constraints() const { return constraints_; }
  bool is_constrained(std::size_t slot) const { return constraints_.count(slot) > 0; }

  std::size_t dimension() const { return J_.slots().size() - constraints_.size(); }

  std::vector<std::size_t> free_slots() const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < J_.slots().size(); ++s)
      if (!is_constrained(s)) out.push_back(s);
    return out;
  }

  /// Slot images under the graph parametrization.
  std::vector<JetPoly> graph_images() const {
    std::vector<JetPoly> images;
    for (std::size_t s = 0; s < J_.slots().size(); ++s) {
      auto it = constraints_.find(s);
      images.push_back(it == constraints_.end() ? RatPoly::variable(J_.slots(), s) : it->second);
    }
    return images;
  }

  /// P restricted to Q, written in the free slots.
  JetPoly restrict(const JetPoly& P) const { return compose(P, graph_images(), J_.slots()); }

  /// Completes the free slots of u to the point of Q above them.
  JetPoint complete(JetPoint u) const {
    for (const auto& [s, g] : constraints_) u.values[s] = evaluate(g, u.values);
    return u;
  }

 private:
  void validate() const {
    for (const auto& [s, g] : constraints_) {
      if (s >= J_.slots().size()) throw Error("constraint slot out of range");
      if (!g.is_zero() && !(g.vars() == J_.slots()))
        throw Error("constraint for " + J_.slots()[s] + " is not written in the jet slots");
      int j = J_.level_of(s);
      if (j == 0 && !g.is_zero()) throw Error("level-0 constraint for " + J_.slots()[s] + " must be zero");
      for (const auto& [e, c] : g.terms()) {
        int deg = 0;
        for (std::size_t t = 0; t < e.size(); ++t) {
          if (!e[t]) continue;
          if (is_constrained(t))
            throw Error("constraint for " + J_.slots()[s] + " involves the constrained slot " + J_.slots()[t]);
          deg += e[t] * J_.level_of(t);
        }
        if (deg != j)
          throw Error("constraint for " + J_.slots()[s] + " is not homogeneous of degree " + std::to_string(j));
      }
    }
  }

  JetSpace J_;
  std::map<std::size_t, JetPoly> constraints_;
};

inline GraphSubbundle standard_q(const WeightSequence& W) {
  JetSpace J(W.vars(), W.order());
  std::map<std::size_t, JetPoly> cons;
  for (std::size_t a = 0; a < W.size(); ++a)
    for (int j = 0; j < W.weight(a) && j <= W.order(); ++j) cons.emplace(J.slot(a, j), J.zero());
  return GraphSubbundle(J, cons);
}

inline bool q_membership(const GraphSubbundle& Q, const JetPoint& u) {
  if (u.n != Q.base().size() || u.r != Q.order()) throw Error("jet point does not live on the jet space of Q");
  for (const auto& [s, g] : Q.constraints())
    if (u.values[s] != evaluate(g, u.values)) return false;
  return true;
}

/// Largest i <= r+1 with f^(j)|_Q = 0 for all j < i.
inline int induced_filtration_degree(const GraphSubbundle& Q, const RatPoly& f) {
  auto lifts = jet_lifts(f, Q.space());
  int i = 0;
  while (i <= Q.order() && Q.restrict(lifts[static_cast<std::size_t>(i)]).is_zero()) ++i;
  return i;
}

inline int induced_filtration_degree(const GraphSubbundle& Q, const Expr& f) {
  return induced_filtration_degree(Q, to_rat_poly(f, Q.base()));
}

/// w_a = first unconstrained level of x_a, r+1 when every level is constrained.
/// Throws FlagError when the constrained levels are not an initial segment.
inline std::vector<int> derived_weight_vector(const GraphSubbundle& Q) {
  const JetSpace& J = Q.space();
  std::vector<int> w;
  for (std::size_t a = 0; a < J.n(); ++a) {
    int wa = 0;
    while (wa <= J.order() && Q.is_constrained(J.slot(a, wa))) ++wa;
    for (int j = wa + 1; j <= J.order(); ++j)
      if (Q.is_constrained(J.slot(a, j)))
        throw FlagError("constrained levels of " + J.base()[a] + " are not an initial segment (level " +
                            std::to_string(wa) + " free, level " + std::to_string(j) + " constrained)",
                        slot_label(J, J.slot(a, j)));
    w.push_back(wa);
  }
  return w;
}

inline WeightSequence derive_weights(const GraphSubbundle& Q) {
  auto w = derived_weight_vector(Q);
  for (std::size_t a = 0; a < w.size(); ++a)
    if (w[a] > Q.order())
      throw Error("every level of " + Q.base()[a] + " is constrained; no weight up to order " +
                  std::to_string(Q.order()) + " fits");
  return WeightSequence::from_weights(Q.base().names(), w, Q.order());
}

/// Rewrites X (indexed by W.vars()) over the base chart of Q.
inline RatVectorField to_rat_field(const PolyVectorField& X, const WeightSequence& W, const VarOrder& base) {
  RatVectorField out;
  out.components.assign(base.size(), RatPoly(base));
  for (std::size_t a = 0; a < X.components.size(); ++a)
    out.components[base.index_of(W.vars()[a])] = to_rat_poly(to_expr(X.components[a]), base);
  return out;
}

/// Tangency defects of a jet field: xi(x^(j) - g) restricted to Q, one per constraint.
inline std::vector<JetPoly> tangency_defects(const GraphSubbundle& Q, const JetVectorField& xi) {
  std::vector<JetPoly> out;
  for (const auto& [s, g] : Q.constraints())
    out.push_back(Q.restrict(apply(xi, Q.space().slot_poly(Q.space().var_of(s), Q.space().level_of(s)) - g)));
  return out;
}

inline bool k_membership(const GraphSubbundle& Q, const RatVectorField& X, int i) {
  if (i < 0 || i > Q.order()) throw PreconditionError("lift level " + std::to_string(i) + " out of range");
  for (const auto& d : tangency_defects(Q, vf_lift(X, i, Q.space())))
    if (!d.is_zero()) return false;
  return true;
}

inline bool k_membership(const GraphSubbundle& Q, const PolyVectorField& X, const WeightSequence& W, int i) {
  return k_membership(Q, to_rat_field(X, W, Q.base()), i);
}

/// y_a = u_{a, w_a}, listed in the base order of Q; weights r+1 are not allowed.
inline std::vector<Rational> quotient_to_normal(const GraphSubbundle& Q, const JetPoint& u) {
  if (!q_membership(Q, u)) throw PreconditionError("jet point is not on Q");
  auto w = derived_weight_vector(Q);
  std::vector<Rational> y;
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a] > Q.order()) throw Error("every level of " + Q.base()[a] + " is constrained");
    y.push_back(u.at(a, w[a]));
  }
  return y;
}

namespace detail {

inline std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace detail

/// Graph-form text:
///   vars: x1, x2, x3
///   order: 4
///   x3 3 = x1.1*x2.2 - x1.2*x2.1     (or "x3.3 = ...")
/// '#' starts a comment.
inline GraphSubbundle parse_graph_subbundle(const std::string& text) {
  std::optional<VarOrder> vars;
  std::optional<int> order;
  std::vector<std::pair<std::string, std::string>> lines;  // lhs, rhs
  std::stringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg, 0); };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (auto eq = line.find('='); eq != std::string::npos) {
      lines.emplace_back(detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected 'key: value' or 'slot = polynomial'");
    std::string key = detail::trim(line.substr(0, colon)), value = detail::trim(line.substr(colon + 1));
    if (key == "vars") {
      vars = VarOrder(detail::split_list(value, ','));
      if (vars->empty()) fail("empty variable list");
    } else if (key == "order") {
      try {
        std::size_t used = 0;
        order = std::stoi(value, &used);
        if (used != value.size() || *order < 0) throw std::invalid_argument("order");
      } catch (const std::exception&) {
        fail("order must be a non-negative integer");
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!vars) throw ParseError("missing 'vars:' line", 0);
  if (!order) throw ParseError("missing 'order:' line", 0);
  JetSpace J(*vars, *order);
  std::map<std::size_t, JetPoly> cons;
  for (const auto& [lhs, rhs] : lines) {
    std::string name;
    std::string level;
    auto parts = detail::split_list(lhs, ' ');
    if (parts.size() == 2) {
      name = parts[0];
      level = parts[1];
    } else if (parts.size() == 1 && parts[0].find('.') != std::string::npos) {
      name = parts[0].substr(0, parts[0].rfind('.'));
      level = parts[0].substr(parts[0].rfind('.') + 1);
    } else {
      throw ParseError("bad constraint target '" + lhs + "'", 0);
    }
    auto a = vars->find(name);
    if (!a) throw ParseError("unknown variable '" + name + "'", 0);
    int j = 0;
    try {
      std::size_t used = 0;
      j = std::stoi(level, &used);
      if (used != level.size()) throw std::invalid_argument("level");
    } catch (const std::exception&) {
      throw ParseError("bad level '" + level + "'", 0);
    }
    if (j < 0 || j > *order) throw ParseError("level " + level + " out of range", 0);
    JetPoly g = to_rat_poly(parse_expr(rhs), J.slots());
    if (!cons.emplace(J.slot(*a, j), g).second) throw ParseError("duplicate constraint for " + lhs, 0);
  }
  return GraphSubbundle(J, cons);
}

inline std::string to_string(const GraphSubbundle& Q) {
  std::string out = "vars: ";
  for (std::size_t a = 0; a < Q.base().size(); ++a) out += (a ? ", " : "") + Q.base()[a];
  out += "\norder: " + std::to_string(Q.order()) + "\n";
  for (const auto& [s, g] : Q.constraints())
    out += Q.base()[Q.space().var_of(s)] + " " + std::to_string(Q.space().level_of(s)) + " = " +
           to_string(to_expr(g)) + "\n";
  return out;
}

}  // namespace wtg
