#pragma once

#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "weightings.hpp"
#include "problem_file.hpp"
#include "render.hpp"

namespace wtg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Bad invocation: missing or malformed flag values.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Rendered {
  std::string text;
  Json json;
  int code = kExitOk;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(wtg::detail::trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(wtg::detail::trim(cur));
  return out;
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

inline std::string fixed(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace detail

/// Parsed flags plus a lazily loaded problem file.
class Invocation {
 public:
  std::string command;
  std::string weights, file, expr, field, map, names, chart, sign = "+", multi, vars, coords;
  int order = 0, degree = 0, level = 0;
  std::uint64_t seed = 0;
  bool json = false;
  std::map<std::string, bool> given;

  bool has(const std::string& flag) const {
    auto it = given.find(flag);
    return it != given.end() && it->second;
  }

  const ProblemFile* problem() {
    if (!has("--file")) return nullptr;
    if (!problem_) problem_ = parse_problem_file(read_text_file(file));
    return &*problem_;
  }

  std::string file_text() { return read_text_file(file); }

  WeightSequence weight_sequence(const char* section = "weights") {
    std::vector<std::pair<std::string, int>> as;
    std::string source = "--weights";
    if (has("--weights") && std::string(section) == "weights") {
      try {
        as = parse_weight_assignments(weights);
      } catch (const ParseError& e) {
        throw UsageError("--weights: " + std::string(e.what()));
      }
    } else if (const ProblemFile* pf = problem(); pf && pf->has(section)) {
      source = std::string("[") + section + "]";
      for (const auto& e : pf->entries(section)) as.emplace_back(e.key, to_int(e.value, source));
    } else {
      throw UsageError("missing --weights");
    }
    if (as.empty()) throw UsageError(source + ": no variables");
    int r = 0;
    for (const auto& [v, w] : as) r = std::max(r, w);
    if (has("--order")) {
      r = order;
    } else if (const ProblemFile* pf = problem(); pf) {
      if (auto* e = pf->find("options", "order")) r = to_int(e->value, "[options] order");
    }
    // A well-formed but inconsistent order is a domain error, not a usage error.
    return WeightSequence::from_assignments(as, r);
  }

  Expr expression() {
    std::string text, source = "--expr";
    if (has("--expr")) {
      text = expr;
    } else if (const ProblemFile* pf = problem(); pf && pf->find("expressions", "f")) {
      text = pf->find("expressions", "f")->value;
      source = "[expressions] f";
    } else {
      throw UsageError("missing --expr");
    }
    try {
      return parse_expr(text);
    } catch (const ParseError& e) {
      throw UsageError(source + ": " + e.what());
    }
  }

  int integer(const std::string& flag, int value, const std::string& option_key) {
    if (has(flag)) return value;
    if (const ProblemFile* pf = problem(); pf)
      if (auto* e = pf->find("options", option_key)) return to_int(e->value, "[options] " + option_key);
    throw UsageError("missing " + flag);
  }

  std::string text_option(const std::string& flag, const std::string& value, const std::string& option_key,
                          std::optional<std::string> fallback = std::nullopt) {
    if (has(flag)) return value;
    if (const ProblemFile* pf = problem(); pf)
      if (auto* e = pf->find("options", option_key)) return e->value;
    if (fallback) return *fallback;
    throw UsageError("missing " + flag);
  }

  /// "name: expr; name: expr" from a flag, or key = value lines from a file section.
  std::vector<std::pair<std::string, Expr>> assignments(const std::string& flag, const std::string& value,
                                                        const std::string& section) {
    std::vector<std::pair<std::string, std::string>> raw;
    std::string source = flag;
    if (has(flag)) {
      for (const auto& item : detail::split(value, ';')) {
        if (item.empty()) continue;
        auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError(flag + ": expected 'name: expression' in '" + item + "'");
        raw.emplace_back(wtg::detail::trim(item.substr(0, colon)), wtg::detail::trim(item.substr(colon + 1)));
      }
    } else if (const ProblemFile* pf = problem(); pf && pf->has(section)) {
      source = "[" + section + "]";
      for (const auto& e : pf->entries(section)) raw.emplace_back(e.key, e.value);
    } else {
      throw UsageError("missing " + flag);
    }
    std::vector<std::pair<std::string, Expr>> out;
    for (const auto& [k, v] : raw) {
      if (!wtg::detail::is_identifier(k)) throw UsageError(source + ": invalid name '" + k + "'");
      for (const auto& [seen, e] : out)
        if (seen == k) throw UsageError(source + ": duplicate name '" + k + "'");
      try {
        out.emplace_back(k, parse_expr(v));
      } catch (const ParseError& e) {
        throw UsageError(source + " " + k + ": " + e.what());
      }
    }
    return out;
  }

  /// Components per variable of `order`; missing components are zero.
  std::vector<Expr> field_components(const VarOrder& vars) {
    auto comps = assignments("--field", field, "field");
    std::vector<Expr> out(vars.size(), Expr(0));
    for (const auto& [k, e] : comps) {
      auto i = vars.find(k);
      if (!i) throw UsageError("--field: unknown variable '" + k + "'");
      out[*i] = e;
    }
    return out;
  }

 private:
  static int to_int(const std::string& s, const std::string& source) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError(source + ": expected an integer, got '" + s + "'");
    }
  }

  std::optional<ProblemFile> problem_;
};

namespace detail {

inline PolyVectorField weighted_field(const std::vector<Expr>& comps, const WeightSequence& W) {
  PolyVectorField X;
  for (const auto& c : comps) X.components.push_back(to_weighted(c, W));
  return X;
}

inline std::string poly_text(const WeightedPoly& p, const WeightSequence& W) {
  return to_string(p, &W.positive_weights());
}

inline Json degree_json(Degree d) { return d.is_infinite() ? Json("inf") : Json(d.value()); }

inline std::string vector_text(const GradedLieAlgebra& L, const GradedLieAlgebra::Vector& v) {
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) terms.push_back(Expr(v[k]) * var(L.label(k)));
  return terms.empty() ? "0" : to_string(sum(terms));
}

}  // namespace detail

// ---- commands ----

inline Rendered cmd_wdeg(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  Degree d = taylor_filtration_degree(inv.expression(), W);
  return {d.str(), detail::degree_json(d)};
}

inline Rendered cmd_happrox(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  Expr f = inv.expression();
  int i = inv.integer("--degree", inv.degree, "degree");
  WeightedPoly h = taylor_homogeneous_approx(f, W, i);
  return {detail::poly_text(h, W), poly_json(h)};
}

inline Rendered cmd_gens(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  int i = inv.integer("--degree", inv.degree, "degree");
  auto gens = ideal_generators(W, i);
  std::vector<std::string> parts;
  Json list = Json::array();
  for (const auto& s : gens) {
    parts.push_back(monomial_string(W.vars(), s));
    list.push_back(monomial_json(s, "1"));
  }
  Json j;
  j["vars"] = W.vars().names();
  j["generators"] = std::move(list);
  return {detail::join(parts, ", "), j};
}

namespace detail {

inline VarOrder base_vars(Invocation& inv) {
  if (inv.has("--vars")) {
    auto names = split(inv.vars, ',');
    for (const auto& n : names)
      if (!wtg::detail::is_identifier(n)) throw UsageError("--vars: invalid variable name '" + n + "'");
    try {
      return VarOrder(names);
    } catch (const Error& e) {
      throw UsageError(std::string("--vars: ") + e.what());
    }
  }
  return inv.weight_sequence().vars();
}

inline int jet_order(Invocation& inv) {
  if (inv.has("--order")) return inv.order;
  if (!inv.has("--vars")) return inv.weight_sequence().order();
  throw UsageError("missing --order");
}

}  // namespace detail

inline Rendered cmd_jet_lift(Invocation& inv) {
  VarOrder base = detail::base_vars(inv);
  JetSpace J(base, detail::jet_order(inv));
  int i = inv.integer("--level", inv.level, "level");
  if (i < 0 || i > J.order()) throw PreconditionError("lift level " + std::to_string(i) + " outside 0.." + std::to_string(J.order()));
  JetPoly p = jet_lift(inv.expression(), i, J);
  return {to_string(p), poly_json(p)};
}

inline Rendered cmd_vf_lift(Invocation& inv) {
  VarOrder base = detail::base_vars(inv);
  JetSpace J(base, detail::jet_order(inv));
  int i = inv.integer("--level", inv.level, "level");
  RatVectorField X;
  for (const auto& c : inv.field_components(base)) X.components.push_back(to_rat_poly(c, base));
  JetVectorField L = vf_lift(X, i, J);
  std::vector<std::string> parts;
  Json comps = Json::array();
  for (const auto& [slot, c] : L.components) {
    std::string coeff = to_string(c);
    std::string d = "D_" + J.slots()[slot];
    parts.push_back(coeff == "1" ? d : (c.terms().size() > 1 ? "(" + coeff + ")" : coeff) + "*" + d);
    Json e;
    e["slot"] = J.slots()[slot];
    e["coefficient"] = poly_json(c);
    comps.push_back(std::move(e));
  }
  return {parts.empty() ? "0" : detail::join(parts, " + "), comps};
}

inline Rendered cmd_nu_trans(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  const ProblemFile* pf = inv.problem();
  WeightSequence Wt = pf && pf->has("target-weights") ? inv.weight_sequence("target-weights") : W;
  auto comps = inv.assignments("--map", inv.map, "map");
  CoordinateChange phi{W, Wt, std::vector<Expr>(Wt.size(), Expr(0))};
  std::vector<bool> seen(Wt.size(), false);
  for (const auto& [k, e] : comps) {
    auto b = Wt.vars().find(k);
    if (!b) throw UsageError("--map: unknown target variable '" + k + "'");
    phi.components[*b] = e;
    seen[*b] = true;
  }
  for (std::size_t b = 0; b < Wt.size(); ++b)
    if (!seen[b]) throw UsageError("--map: missing component for '" + Wt.vars()[b] + "'");
  std::vector<std::string> names;
  std::string name_text = inv.text_option("--names", inv.names, "names", std::string());
  if (!name_text.empty()) names = detail::split(name_text, ',');
  auto nu = nu_transition(phi, names);
  std::vector<std::string> parts;
  Json j;
  j["target"] = Wt.vars().names();
  j["components"] = Json::array();
  for (const auto& e : nu) {
    parts.push_back(to_string(e));
    j["components"].push_back(to_string(e));
  }
  return {"(" + detail::join(parts, ", ") + ")", j};
}

inline Rendered cmd_def_interp(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  int i = inv.integer("--degree", inv.degree, "degree");
  auto F = def_interpolant(inv.expression(), i, W);
  Json j;
  j["expr"] = to_string(F.expr);
  j["degree"] = i;
  j["coordinates"] = W.vars().names();
  j["coordinates"].push_back(F.t);
  return {to_string(F.expr), j};
}

inline Rendered cmd_theta(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  std::string s = to_string(theta_field(W));
  Json j;
  j["field"] = s;
  return {s, j};
}

inline Rendered cmd_blowup(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  std::string c_name = inv.text_option("--chart", inv.chart, "chart");
  auto c = W.vars().find(c_name);
  if (!c) throw UsageError("--chart: unknown variable '" + c_name + "'");
  std::string sign_text = inv.text_option("--sign", inv.sign, "sign", std::string("+"));
  int sign = 0;
  if (sign_text == "+" || sign_text == "1" || sign_text == "+1") sign = 1;
  if (sign_text == "-" || sign_text == "-1") sign = -1;
  if (sign == 0) throw UsageError("--sign: expected + or -, got '" + sign_text + "'");
  BlowupChart ch = blowup_chart(W, *c, sign);
  Json j;
  j["chart"] = c_name;
  j["sign"] = sign > 0 ? "+" : "-";
  j["map"] = Json::array();
  for (std::size_t k = 0; k < ch.z.size(); ++k)
    j["map"].push_back({{"target", ch.z[k]}, {"value", to_string(ch.forward.components[k])}});
  const ProblemFile* pf = inv.problem();
  if (!inv.has("--field") && !(pf && pf->has("field"))) return {to_string(ch.forward), j};
  PolyVectorField X = detail::weighted_field(inv.field_components(W.vars()), W);
  auto lift = blowup_lift_vf(X, W, ch);
  std::string s = field_string(lift, ch.z);
  j["lift"] = s;
  return {s, j};
}

inline Rendered cmd_check_q(Invocation& inv) {
  if (!inv.has("--file")) throw UsageError("missing --file");
  std::string text = inv.file_text();
  bool sectioned = false;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      line = wtg::detail::trim(line);
      if (!line.empty() && line.front() == '[') sectioned = true;
    }
  }
  if (sectioned) {
    const ProblemFile* pf = inv.problem();
    if (!pf->has("graph")) throw UsageError("--file: no [graph] section");
    text = pf->graph_text;
  }
  GraphSubbundle Q = parse_graph_subbundle(text);
  WeightingVerdict v = check_weighting(Q, inv.seed);
  if (v.accepted) return {"WEIGHTING: " + v.weights->str(), verdict_json(v)};
  return {std::string(reason_code(v.reason)) + ": witness " + v.witness, verdict_json(v), kExitDomain};
}

inline Rendered cmd_adapt(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  const ProblemFile* pf = inv.problem();
  Frame F = coordinate_frame(W);
  if (pf && pf->has("frame")) {
    for (auto& V : F.fields) V = zero_field(W);
    for (const auto& e : pf->entries("frame")) {
      auto dot = e.key.find('.');
      std::size_t k = static_cast<std::size_t>(std::stoul(e.key.substr(1, dot - 1)));
      auto a = W.vars().find(e.key.substr(dot + 1));
      if (k < 1 || k > W.size()) throw UsageError("[frame]: field index out of range in '" + e.key + "'");
      if (!a) throw UsageError("[frame]: unknown variable in '" + e.key + "'");
      Expr c;
      try {
        c = parse_expr(e.value);
      } catch (const ParseError& err) {
        throw UsageError("[frame] " + e.key + ": " + err.what());
      }
      F.fields[k - 1].components[*a] = to_weighted(c, W);
    }
  }
  validate_frame(F);
  auto ys = inv.assignments("--coords", inv.coords, "coordinates");
  if (ys.size() != W.size())
    throw UsageError("expected " + std::to_string(W.size()) + " coordinates, got " + std::to_string(ys.size()));
  AdaptedChange change = adapted_coordinates(F, ys);
  std::vector<std::string> ynames;
  for (const auto& [n, e] : ys) ynames.push_back(n);
  VarOrder yv(ynames);
  std::vector<std::string> lines;
  Json j;
  j["trace"] = Json::array();
  for (const auto& t : change.trace) {
    if (t.chi.is_zero()) continue;
    std::string mono = monomial_string(yv, t.s);
    lines.push_back("chi(" + W.vars()[t.a] + ", " + mono + ") = " + to_string(t.chi) + ", c = " + t.c.get_str());
    j["trace"].push_back({{"var", W.vars()[t.a]}, {"monomial", mono}, {"chi", to_string(t.chi)}, {"c", t.c.get_str()}});
  }
  j["coordinates"] = Json::array();
  for (std::size_t a = 0; a < W.size(); ++a) {
    lines.push_back(W.vars()[a] + " = " + to_string(change.x[a]));
    j["coordinates"].push_back({{"var", W.vars()[a]}, {"expr", to_string(change.x[a])}});
  }
  return {detail::join(lines, "\n"), j};
}

inline Rendered cmd_euler_like(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  bool ok = euler_like_check(detail::weighted_field(inv.field_components(W.vars()), W), W);
  return {ok ? "true" : "false", Json(ok)};
}

inline Rendered cmd_scale_order(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  ScalingOptions opt;
  opt.seed = inv.seed;
  if (!inv.has("--seed"))
    if (const ProblemFile* pf = inv.problem(); pf)
      if (auto* e = pf->find("options", "seed")) opt.seed = static_cast<std::uint64_t>(std::stoull(e->value));
  ScalingReport r = scaling_order_estimate(inv.expression(), W, opt);
  Json j;
  j["order"] = r.order;
  j["residual"] = r.residual;
  j["samples"] = r.samples;
  j["base_point"] = Json::array();
  for (const auto& q : r.base_point) j["base_point"].push_back(q.get_str());
  std::string s = "order " + detail::fixed(r.order, "%.6f") + " residual " + detail::fixed(r.residual, "%.3e") +
                  " samples " + std::to_string(r.samples);
  return {s, j};
}

inline Rendered cmd_nilpotent(Invocation& inv) {
  WeightSequence W = inv.weight_sequence();
  GradedLieAlgebra L = nilpotent_frames(W);
  std::vector<std::string> lines{"dim k = " + std::to_string(L.dim()), "dim l = " + std::to_string(L.dim_l())};
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < L.dim(); ++i) labels.push_back(L.label(i));
  lines.push_back("basis: " + detail::join(labels, ", "));
  Json j;
  j["dim_k"] = L.dim();
  j["dim_l"] = L.dim_l();
  j["basis"] = labels;
  j["brackets"] = Json::array();
  for (std::size_t a = 0; a < L.dim(); ++a)
    for (std::size_t b = a + 1; b < L.dim(); ++b) {
      auto v = L.bracket(L.unit(a), L.unit(b));
      bool zero = true;
      for (const auto& x : v) zero = zero && x == 0;
      if (zero) continue;
      std::string s = detail::vector_text(L, v);
      lines.push_back("[" + labels[a] + ", " + labels[b] + "] = " + s);
      j["brackets"].push_back({{"left", labels[a]}, {"right", labels[b]}, {"value", s}});
    }
  return {detail::join(lines, "\n"), j};
}

inline Rendered cmd_total_weight(Invocation& inv) {
  if (!inv.has("--multi")) throw UsageError("missing --multi");
  MultiWeight MW;
  try {
    MW = parse_multi_weight(inv.multi);
  } catch (const Error& e) {
    throw UsageError(std::string("--multi: ") + e.what());
  }
  int r = 0;
  for (const auto& w : MW.weights) {
    int t = 0;
    for (int x : w) t += x;
    r = std::max(r, t);
  }
  if (inv.has("--order")) r = inv.order;
  WeightSequence W = total_weighting(MW, r);
  Json j;
  j["vars"] = W.vars().names();
  j["weights"] = W.weights();
  j["order"] = W.order();
  std::string s = W.str();
  if (inv.has("--expr")) {
    Expr f = inv.expression();
    Polynomial<Expr> p = poly_normal_form(f, MW.vars);
    auto degs = multi_filtration_degree(p, MW);
    std::vector<std::string> ds;
    j["multi_degree"] = Json::array();
    for (auto d : degs) {
      ds.push_back(d.str());
      j["multi_degree"].push_back(detail::degree_json(d));
    }
    s += "\nmulti-degree (" + detail::join(ds, ", ") + ")";
  }
  return {s, j};
}

// ---- entry point ----

/// Runs one invocation (args without the program name); returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted filtrations, jets and weighted normal bundles", "weightings"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all commands");
  Invocation inv;

  using Handler = std::function<Rendered(Invocation&)>;
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  auto add_flags = [&](CLI::App* sub, const std::vector<std::string>& flags) {
    for (const auto& f : flags) {
      CLI::Option* o = nullptr;
      if (f == "--weights") o = sub->add_option(f, inv.weights, "Weights, e.g. x=1,y=2,z=3");
      if (f == "--order") o = sub->add_option(f, inv.order, "Order r");
      if (f == "--file") o = sub->add_option(f, inv.file, "Problem file");
      if (f == "--expr") o = sub->add_option(f, inv.expr, "Expression");
      if (f == "--field") o = sub->add_option(f, inv.field, "Vector field, e.g. \"x: 1; y: x^2\"");
      if (f == "--map") o = sub->add_option(f, inv.map, "Coordinate change, e.g. \"x: x + y; y: y\"");
      if (f == "--names") o = sub->add_option(f, inv.names, "Graded coordinate names, comma separated");
      if (f == "--degree") o = sub->add_option(f, inv.degree, "Degree i");
      if (f == "--level") o = sub->add_option(f, inv.level, "Lift level i");
      if (f == "--chart") o = sub->add_option(f, inv.chart, "Blow-up direction (variable name)");
      if (f == "--sign") o = sub->add_option(f, inv.sign, "Chart sign, + or -");
      if (f == "--seed") o = sub->add_option(f, inv.seed, "Random seed (default 0)");
      if (f == "--multi") o = sub->add_option(f, inv.multi, "Multi-weights, e.g. x=(1,0),y=(0,1)");
      if (f == "--vars") o = sub->add_option(f, inv.vars, "Chart variables, comma separated");
      if (f == "--coords") o = sub->add_option(f, inv.coords, "New coordinates, e.g. \"y1: x1; y2: x2 + x1^2\"");
      options.emplace_back(f, o);
    }
    options.emplace_back("--json", sub->add_flag("--json", inv.json, "Render JSON"));
  };
  auto command = [&](const std::string& name, const std::string& help, const std::vector<std::string>& flags,
                     Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(sub, flags);
    handlers.emplace_back(sub, std::move(h));
  };

  const std::vector<std::string> wf{"--weights", "--order", "--file"};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> all = wf;
    all.insert(all.end(), extra.begin(), extra.end());
    return all;
  };
  command("wdeg", "Filtration degree of an expression", with({"--expr"}), cmd_wdeg);
  command("happrox", "Homogeneous approximation of degree i", with({"--expr", "--degree"}), cmd_happrox);
  command("gens", "Monomial generators of the degree-i ideal", with({"--degree"}), cmd_gens);
  command("jet-lift", "Lift f^(i) to the r-th tangent bundle", with({"--vars", "--expr", "--level"}), cmd_jet_lift);
  command("vf-lift", "Lift X^(-i) to the r-th tangent bundle", with({"--vars", "--field", "--level"}), cmd_vf_lift);
  command("nu-trans", "Transition map on the weighted normal bundle", with({"--map", "--names"}), cmd_nu_trans);
  command("def-interp", "Deformation-space interpolant of degree i", with({"--expr", "--degree"}), cmd_def_interp);
  command("theta", "The vector field Theta on the deformation space", wf, cmd_theta);
  command("blowup", "Weighted blow-up chart and vector field lift", with({"--chart", "--sign", "--field"}), cmd_blowup);
  command("check-q", "Decide whether a graph subbundle comes from a weighting", {"--file", "--seed"}, cmd_check_q);
  command("adapt", "Adapted coordinates from a frame", with({"--coords"}), cmd_adapt);
  command("euler-like", "Check whether a vector field is Euler-like", with({"--field"}), cmd_euler_like);
  command("scale-order", "Numeric scaling order estimate", with({"--expr", "--seed"}), cmd_scale_order);
  command("nilpotent", "Nilpotent Lie algebra of the weighting", wf, cmd_nilpotent);
  command("total-weight", "Total weighting of a multi-weighting", {"--multi", "--order", "--expr"}, cmd_total_weight);

  std::vector<std::string> argv_store{"weightings"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const auto& [flag, opt] : options)
    if (opt && opt->count() > 0) inv.given[flag] = true;

  for (auto& [sub, handler] : handlers) {
    if (!sub->parsed()) continue;
    inv.command = sub->get_name();
    try {
      Rendered r = handler(inv);
      if (inv.json)
        out << envelope(inv.command, r.json).dump(2) << "\n";
      else
        out << r.text << "\n";
      return r.code;
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const ParseError& e) {
      err << "parse error: " << e.what() << "\n";
      return kExitUsage;
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kExitDomain;
    }
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace wtg::cli
