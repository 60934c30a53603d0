#pragma once

#include <algorithm>
#include <compare>
#include <cctype>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace wtg {

/// Nonnegative integer or +infinity. The zero function has infinite degree.
class Degree {
 public:
  constexpr Degree(int v) : value_(v) {}  // NOLINT
  static constexpr Degree infinity() { return Degree(kInf); }
  constexpr bool is_infinite() const { return value_ == kInf; }
  constexpr int value() const { return value_; }

  friend constexpr auto operator<=>(Degree a, Degree b) = default;
  friend constexpr Degree operator+(Degree a, Degree b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return Degree(a.value_ + b.value_);
  }
  friend constexpr Degree operator-(Degree a, int k) {
    return a.is_infinite() ? a : Degree(a.value_ - k);
  }
  std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

 private:
  static constexpr int kInf = std::numeric_limits<int>::max();
  int value_;
};

/// Weight sequence on an ordered chart: variables sorted by nondecreasing weight
/// (stable in input order), together with the order r.
class WeightSequence {
 public:
  WeightSequence() = default;

  static WeightSequence from_assignments(const std::vector<std::pair<std::string, int>>& assignments,
                                         int order) {
    if (assignments.empty()) throw Error("empty weight assignment");
    std::vector<std::pair<std::string, int>> sorted = assignments;
    for (const auto& [v, w] : sorted)
      if (w < 0) throw Error("negative weight for '" + v + "'");
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    WeightSequence W;
    std::vector<std::string> names;
    for (const auto& [v, w] : sorted) {
      names.push_back(v);
      W.weights_.push_back(w);
    }
    W.vars_ = VarOrder(names);
    if (order < W.weights_.back())
      throw Error("order " + std::to_string(order) + " is below the maximal weight " +
                  std::to_string(W.weights_.back()));
    W.order_ = order;
    std::vector<std::string> pos, zero;
    for (std::size_t a = 0; a < names.size(); ++a) {
      if (W.weights_[a] > 0) {
        pos.push_back(names[a]);
        W.positive_weights_.push_back(W.weights_[a]);
      } else {
        zero.push_back(names[a]);
      }
    }
    W.positive_ = VarOrder(pos);
    W.zero_ = VarOrder(zero);
    return W;
  }

  /// Weights given in variable order; the order defaults to the maximal weight.
  static WeightSequence from_weights(const std::vector<std::string>& names, const std::vector<int>& w,
                                     std::optional<int> order = std::nullopt) {
    if (names.size() != w.size()) throw Error("weight count does not match variable count");
    std::vector<std::pair<std::string, int>> as;
    for (std::size_t i = 0; i < names.size(); ++i) as.emplace_back(names[i], w[i]);
    int r = order ? *order : (w.empty() ? 0 : *std::max_element(w.begin(), w.end()));
    return from_assignments(as, r);
  }

  const VarOrder& vars() const { return vars_; }
  const std::vector<int>& weights() const { return weights_; }
  int order() const { return order_; }
  std::size_t size() const { return weights_.size(); }
  int weight(std::size_t a) const { return weights_.at(a); }
  int weight_of(const std::string& v) const { return weights_[vars_.index_of(v)]; }

  /// k_i = #{a : w_a <= i}
  std::size_t count(int i) const {
    return static_cast<std::size_t>(
        std::count_if(weights_.begin(), weights_.end(), [i](int w) { return w <= i; }));
  }
  std::size_t k0() const { return count(0); }
  std::vector<std::size_t> counts() const {
    std::vector<std::size_t> k;
    for (int i = 0; i <= order_; ++i) k.push_back(count(i));
    return k;
  }

  /// Indices of F~_{-i} = {a : w_a <= i}.
  std::vector<std::size_t> flag(int i) const {
    std::vector<std::size_t> out;
    for (std::size_t a = 0; a < weights_.size(); ++a)
      if (weights_[a] <= i) out.push_back(a);
    return out;
  }

  const VarOrder& positive_vars() const { return positive_; }
  const std::vector<int>& positive_weights() const { return positive_weights_; }
  const VarOrder& zero_vars() const { return zero_; }

  /// Position of variable a among the positive-weight variables.
  std::optional<std::size_t> positive_index(std::size_t a) const { return positive_.find(vars_[a]); }

  friend bool operator==(const WeightSequence& a, const WeightSequence& b) {
    return a.vars_ == b.vars_ && a.weights_ == b.weights_ && a.order_ == b.order_;
  }

  std::string str() const {
    std::string out;
    for (std::size_t a = 0; a < size(); ++a) {
      if (a) out += ",";
      out += vars_[a] + "=" + std::to_string(weights_[a]);
    }
    return out + "; r=" + std::to_string(order_);
  }

 private:
  VarOrder vars_;
  std::vector<int> weights_;
  int order_ = 0;
  VarOrder positive_;
  std::vector<int> positive_weights_;
  VarOrder zero_;
};

/// Parses "x=1,y=2,z=3".
inline std::vector<std::pair<std::string, int>> parse_weight_assignments(const std::string& text) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    item = trim(item);
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("malformed weight assignment '" + item + "'", pos);
    std::string name = trim(item.substr(0, eq));
    std::string value = trim(item.substr(eq + 1));
    if (name.empty() || value.empty()) throw ParseError("malformed weight assignment '" + item + "'", pos);
    for (char ch : name)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
        throw ParseError("invalid variable name '" + name + "'", pos);
    std::size_t used = 0;
    int w = 0;
    try {
      w = std::stoi(value, &used);
    } catch (const std::exception&) {
      throw ParseError("malformed weight '" + value + "'", pos + eq + 1);
    }
    if (used != value.size()) throw ParseError("malformed weight '" + value + "'", pos + eq + 1);
    out.emplace_back(name, w);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline WeightSequence weight_sequence(const std::vector<std::pair<std::string, int>>& assignments, int order) {
  return WeightSequence::from_assignments(assignments, order);
}

}  // namespace wtg
