#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "expr.hpp"

namespace wtg {

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Expr expr() {
    bool negate = false;
    if (accept('-')) {
      negate = true;
    } else {
      accept('+');
    }
    Expr first = term();
    std::vector<Expr> terms{negate ? -first : first};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return sum(terms);
  }

  Expr term() {
    std::vector<Expr> factors{factor()};
    for (;;) {
      if (accept('*')) {
        factors.push_back(factor());
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = factor();
        if (!d.is_constant()) {
          pos_ = at;
          fail("division by a non-constant expression");
        }
        if (d.value() == 0) {
          pos_ = at;
          fail("division by zero");
        }
        factors.emplace_back(Rational(1 / d.value()));
      } else {
        break;
      }
    }
    return product(factors);
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      skip_space();
      bool neg = accept('-');
      skip_space();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected integer exponent");
      if (pos_ - start > 6) fail("exponent too large");
      int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (neg) n = -n;
      try {
        return power(b, n);
      } catch (const Error& e) {
        pos_ = start;
        fail(e.what());
      }
    }
    return b;
  }

  Expr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Expr(Rational(Integer(std::string(text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      // jet slot suffix such as x2.1
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      if (peek() == '(') {
        Function fn;
        if (name == "sin") {
          fn = Function::Sin;
        } else if (name == "cos") {
          fn = Function::Cos;
        } else if (name == "exp") {
          fn = Function::Exp;
        } else {
          pos_ = start;
          fail("unknown function '" + name + "'");
        }
        accept('(');
        Expr arg = expr();
        if (!accept(')')) fail("expected ')'");
        return apply(fn, arg);
      }
      return Expr::variable(name);
    }
    if (accept('(')) {
      Expr e = expr();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the expression grammar and returns the canonical form.
inline Expr parse_expr(std::string_view text) { return detail::ExprParser(text).parse(); }

}  // namespace wtg
