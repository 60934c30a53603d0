#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "weighting_check.hpp"

namespace wtg {

using Json = nlohmann::ordered_json;

inline constexpr const char* kJsonSchemaVersion = "1";

inline Json envelope(const std::string& op, Json result) {
  Json j;
  j["op"] = op;
  j["result"] = std::move(result);
  j["version"] = kJsonSchemaVersion;
  return j;
}

inline Json monomial_json(const Exponent& s, const std::string& coefficient) {
  Json t;
  t["exponents"] = s;
  t["coefficient"] = coefficient;
  return t;
}

template <class C>
Json poly_json(const Polynomial<C>& p) {
  Json j;
  j["vars"] = p.vars().names();
  Json terms = Json::array();
  for (const auto& [s, c] : p.terms()) terms.push_back(monomial_json(s, to_string(CoeffTraits<C>::to_expr(c))));
  j["terms"] = std::move(terms);
  return j;
}

namespace detail {

template <class C, class Coeff>
Polynomial<C> poly_from_json(const Json& j, Coeff&& coeff) {
  VarOrder vars(j.at("vars").get<std::vector<std::string>>());
  Polynomial<C> p(vars);
  for (const auto& t : j.at("terms")) p.add_term(t.at("exponents").get<Exponent>(), coeff(t.at("coefficient").get<std::string>()));
  return p;
}

}  // namespace detail

inline RatPoly rat_poly_from_json(const Json& j) {
  return detail::poly_from_json<Rational>(j, [](const std::string& s) { return parse_rational(s); });
}

inline Polynomial<Expr> expr_poly_from_json(const Json& j) {
  return detail::poly_from_json<Expr>(j, [](const std::string& s) { return parse_expr(s); });
}

inline Json verdict_json(const WeightingVerdict& v) {
  Json j;
  if (v.accepted) {
    j["verdict"] = "weighting";
    j["weights"] = v.weights->weights();
    j["vars"] = v.weights->vars().names();
    return j;
  }
  j["verdict"] = "rejected";
  j["reason"] = reason_code(v.reason);
  j["witness"] = v.witness;
  j["detail"] = v.detail;
  if (v.q_dimension) j["q_dimension"] = *v.q_dimension;
  if (v.reconstructed_dimension) j["reconstructed_dimension"] = *v.reconstructed_dimension;
  return j;
}

}  // namespace wtg
