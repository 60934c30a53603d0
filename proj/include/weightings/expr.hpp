#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace wtg {

enum class ExprKind { Constant, Variable, Power, Product, Apply, Sum };

// Registry order fixes the printed name and the tie-break inside the total order.
enum class Function { Sin, Cos, Exp };

inline const char* function_name(Function f) {
  switch (f) {
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
    case Function::Exp: return "exp";
  }
  return "?";
}

class Expr;

struct ExprNode {
  ExprKind kind = ExprKind::Constant;
  Rational value;           // Constant value, or Product coefficient
  std::string name;         // Variable
  Function fn = Function::Sin;
  int exponent = 0;         // Power
  std::vector<Expr> args;   // Sum terms / Product factors / Power base / Apply argument
};

/// Immutable expression handle. Every public constructor returns canonical form,
/// so two Expr values are equal iff their trees are structurally identical.
class Expr {
 public:
  Expr() : Expr(Rational(0)) {}
  Expr(const Rational& q);  // NOLINT: constants convert implicitly
  Expr(long n) : Expr(Rational(n)) {}  // NOLINT
  Expr(int n) : Expr(Rational(n)) {}   // NOLINT

  static Expr variable(std::string name);

  ExprKind kind() const { return node_->kind; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  Function fn() const { return node_->fn; }
  int exponent() const { return node_->exponent; }
  const std::vector<Expr>& args() const { return node_->args; }

  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_zero() const { return is_constant() && value() == 0; }
  bool is_one() const { return is_constant() && value() == 1; }

  static Expr from_node(ExprNode node) {
    Expr e;
    e.node_ = std::make_shared<const ExprNode>(std::move(node));
    return e;
  }

 private:
  std::shared_ptr<const ExprNode> node_;
};

// ---- structural total order ----

inline int compare(const Expr& a, const Expr& b);

inline int compare_lists(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = compare(a[i], b[i])) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

inline int compare(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Constant:
      return a.value() < b.value() ? -1 : (b.value() < a.value() ? 1 : 0);
    case ExprKind::Variable:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case ExprKind::Power:
      if (int c = compare(a.args()[0], b.args()[0])) return c;
      return a.exponent() < b.exponent() ? -1 : (a.exponent() > b.exponent() ? 1 : 0);
    case ExprKind::Product:
      if (int c = compare_lists(a.args(), b.args())) return c;
      return a.value() < b.value() ? -1 : (b.value() < a.value() ? 1 : 0);
    case ExprKind::Apply:
      if (int c = compare(a.args()[0], b.args()[0])) return c;
      return a.fn() < b.fn() ? -1 : (a.fn() > b.fn() ? 1 : 0);
    case ExprKind::Sum:
      return compare_lists(a.args(), b.args());
  }
  return 0;
}

inline bool operator==(const Expr& a, const Expr& b) { return compare(a, b) == 0; }
inline bool operator!=(const Expr& a, const Expr& b) { return compare(a, b) != 0; }

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

namespace detail {

// Variables sort before function applications, which sort before parenthesized sums.
inline int base_rank(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Variable: return 0;
    case ExprKind::Apply: return 1;
    default: return 2;
  }
}

inline const Expr& factor_base(const Expr& f) { return f.kind() == ExprKind::Power ? f.args()[0] : f; }
inline int factor_exponent(const Expr& f) { return f.kind() == ExprKind::Power ? f.exponent() : 1; }

inline bool factor_less(const Expr& a, const Expr& b) {
  const Expr& ba = factor_base(a);
  const Expr& bb = factor_base(b);
  int ra = base_rank(ba), rb = base_rank(bb);
  if (ra != rb) return ra < rb;
  if (int c = compare(ba, bb)) return c < 0;
  return factor_exponent(a) < factor_exponent(b);
}

// Exponents of plain variables appearing in a (coefficient-free) term.
inline std::map<std::string, int> variable_exponents(const Expr& term) {
  std::map<std::string, int> out;
  auto visit = [&](const Expr& f) {
    const Expr& b = factor_base(f);
    if (b.kind() == ExprKind::Variable) out[b.name()] += factor_exponent(f);
  };
  if (term.kind() == ExprKind::Product) {
    for (const auto& f : term.args()) visit(f);
  } else {
    visit(term);
  }
  return out;
}

inline int total_degree(const std::map<std::string, int>& m) {
  int d = 0;
  for (const auto& [k, v] : m) d += v;
  return d;
}

// Constants first, then total variable degree ascending, then lexicographically
// descending exponents over sorted names, then structure.
inline bool term_less(const Expr& a, const Expr& b) {
  if (a.is_constant() != b.is_constant()) return a.is_constant();
  auto ea = variable_exponents(a), eb = variable_exponents(b);
  int da = total_degree(ea), db = total_degree(eb);
  if (da != db) return da < db;
  std::set<std::string> names;
  for (const auto& [k, v] : ea) names.insert(k);
  for (const auto& [k, v] : eb) names.insert(k);
  for (const auto& n : names) {
    int xa = ea.count(n) ? ea.at(n) : 0;
    int xb = eb.count(n) ? eb.at(n) : 0;
    if (xa != xb) return xa > xb;
  }
  return compare(a, b) < 0;
}

// Split c*rest into (c, rest); rest is 1 for constants.
inline std::pair<Rational, Expr> split_coefficient(const Expr& t) {
  if (t.is_constant()) return {t.value(), Expr(1)};
  if (t.kind() != ExprKind::Product) return {Rational(1), t};
  if (t.args().size() == 1) return {t.value(), t.args()[0]};
  ExprNode n;
  n.kind = ExprKind::Product;
  n.value = 1;
  n.args = t.args();
  return {t.value(), Expr::from_node(std::move(n))};
}

inline Expr scale_part(const Rational& c, const Expr& part) {
  if (c == 0) return Expr(0);
  if (part.is_constant()) return Expr(Rational(c * part.value()));
  if (c == 1) return part;
  ExprNode n;
  n.kind = ExprKind::Product;
  n.value = c;
  if (part.kind() == ExprKind::Product) {
    n.args = part.args();
  } else {
    n.args = {part};
  }
  return Expr::from_node(std::move(n));
}

}  // namespace detail

inline Expr::Expr(const Rational& q) {
  ExprNode n;
  n.kind = ExprKind::Constant;
  n.value = q;
  node_ = std::make_shared<const ExprNode>(std::move(n));
}

inline Expr Expr::variable(std::string name) {
  ExprNode n;
  n.kind = ExprKind::Variable;
  n.name = std::move(name);
  return from_node(std::move(n));
}

// ---- canonical constructors ----

inline Expr sum(const std::vector<Expr>& terms) {
  Rational constant = 0;
  std::map<Expr, Rational, ExprLess> groups;
  auto add = [&](const Expr& t) {
    if (t.is_constant()) {
      constant += t.value();
      return;
    }
    auto [c, part] = detail::split_coefficient(t);
    auto it = groups.find(part);
    if (it == groups.end()) {
      groups.emplace(part, c);
    } else {
      it->second += c;
    }
  };
  for (const auto& t : terms) {
    if (t.kind() == ExprKind::Sum) {
      for (const auto& s : t.args()) add(s);
    } else {
      add(t);
    }
  }
  std::vector<Expr> out;
  if (constant != 0) out.emplace_back(constant);
  for (const auto& [part, c] : groups)
    if (c != 0) out.push_back(detail::scale_part(c, part));
  if (out.empty()) return Expr(0);
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), detail::term_less);
  ExprNode n;
  n.kind = ExprKind::Sum;
  n.args = std::move(out);
  return Expr::from_node(std::move(n));
}

inline Expr power(const Expr& base, int n);

inline Expr product(const std::vector<Expr>& factors) {
  Rational coeff = 1;
  std::map<Expr, int, ExprLess> groups;
  auto add_factor = [&](const Expr& f) {
    groups[detail::factor_base(f)] += detail::factor_exponent(f);
  };
  for (const auto& f : factors) {
    switch (f.kind()) {
      case ExprKind::Constant:
        coeff *= f.value();
        break;
      case ExprKind::Product:
        coeff *= f.value();
        for (const auto& g : f.args()) add_factor(g);
        break;
      default:
        add_factor(f);
    }
  }
  if (coeff == 0) return Expr(0);
  std::vector<Expr> out;
  for (const auto& [b, k] : groups) {
    if (k == 0) continue;
    if (k == 1) {
      out.push_back(b);
    } else {
      ExprNode n;
      n.kind = ExprKind::Power;
      n.exponent = k;
      n.args = {b};
      out.push_back(Expr::from_node(std::move(n)));
    }
  }
  if (out.empty()) return Expr(coeff);
  if (coeff == 1 && out.size() == 1) return out[0];
  if (out.size() == 1 && out[0].kind() == ExprKind::Sum) {
    // c*(a + b) is stored as c*a + c*b
    std::vector<Expr> ts;
    for (const auto& t : out[0].args()) ts.push_back(product({Expr(coeff), t}));
    return sum(ts);
  }
  std::sort(out.begin(), out.end(), detail::factor_less);
  ExprNode n;
  n.kind = ExprKind::Product;
  n.value = coeff;
  n.args = std::move(out);
  return Expr::from_node(std::move(n));
}

/// Integer powers. Negative exponents are allowed only for nonzero constants.
inline Expr power(const Expr& base, int n) {
  if (n == 0) return Expr(1);
  if (n == 1) return base;
  if (base.is_constant()) {
    if (base.value() == 0 && n < 0) throw Error("division by zero");
    return Expr(pow(base.value(), n));
  }
  if (n < 0) throw Error("negative power of a non-constant expression");
  switch (base.kind()) {
    case ExprKind::Power:
      return power(base.args()[0], base.exponent() * n);
    case ExprKind::Product: {
      std::vector<Expr> fs{Expr(pow(base.value(), n))};
      for (const auto& f : base.args()) fs.push_back(power(f, n));
      return product(fs);
    }
    default: {
      ExprNode node;
      node.kind = ExprKind::Power;
      node.exponent = n;
      node.args = {base};
      return Expr::from_node(std::move(node));
    }
  }
}

inline Expr apply(Function fn, const Expr& arg) {
  if (arg.is_zero()) return fn == Function::Sin ? Expr(0) : Expr(1);
  ExprNode n;
  n.kind = ExprKind::Apply;
  n.fn = fn;
  n.args = {arg};
  return Expr::from_node(std::move(n));
}

inline Expr var(const std::string& name) { return Expr::variable(name); }

inline Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
inline Expr operator-(const Expr& a) { return product({Expr(-1), a}); }
inline Expr operator-(const Expr& a, const Expr& b) { return sum({a, -b}); }
inline Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
inline Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
inline Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
inline Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

inline Expr sin(const Expr& e) { return apply(Function::Sin, e); }
inline Expr cos(const Expr& e) { return apply(Function::Cos, e); }
inline Expr exp(const Expr& e) { return apply(Function::Exp, e); }

// ---- printing ----

inline std::string to_string(const Expr& e);

namespace detail {

inline bool is_negative_term(const Expr& t) {
  if (t.is_constant()) return t.value() < 0;
  if (t.kind() == ExprKind::Product) return t.value() < 0;
  return false;
}

inline std::string print_factor(const Expr& f) {
  if (f.kind() == ExprKind::Sum) return "(" + to_string(f) + ")";
  return to_string(f);
}

}  // namespace detail

inline std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.value().get_str();
    case ExprKind::Variable:
      return e.name();
    case ExprKind::Power:
      return detail::print_factor(e.args()[0]) + "^" + std::to_string(e.exponent());
    case ExprKind::Apply:
      return std::string(function_name(e.fn())) + "(" + to_string(e.args()[0]) + ")";
    case ExprKind::Product: {
      std::string out;
      if (e.value() == -1) {
        out = "-";
      } else if (e.value() != 1) {
        out = e.value().get_str() + "*";
      }
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += "*";
        out += detail::print_factor(e.args()[i]);
      }
      return out;
    }
    case ExprKind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        const Expr& t = e.args()[i];
        if (i == 0) {
          out = to_string(t);
        } else if (detail::is_negative_term(t)) {
          out += " - " + to_string(-t);
        } else {
          out += " + " + to_string(t);
        }
      }
      return out;
    }
  }
  return "";
}

// ---- queries ----

inline void collect_variables(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == ExprKind::Variable) {
    out.insert(e.name());
    return;
  }
  for (const auto& a : e.args()) collect_variables(a, out);
}

inline std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_variables(e, out);
  return out;
}

inline bool contains_variable(const Expr& e, const std::string& v) {
  if (e.kind() == ExprKind::Variable) return e.name() == v;
  for (const auto& a : e.args())
    if (contains_variable(a, v)) return true;
  return false;
}

}  // namespace wtg
