/*
   Copyright 2026 The qsym Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "scalar.hpp"

namespace qsym {

/// Integer bindings available inside exponents, e.g. {"u", 1}, {"M", 0}.
using IntEnv = std::map<std::string, long, std::less<>>;

/// Scalar bindings for names such as alpha or a0; unresolved names become free indeterminates.
using ScalarLookup = std::function<std::optional<QScalar>(std::string_view)>;

namespace detail {

// Recursive descent over  expr := term (+|- term)*,  term := unary (*|/ unary)*,
// unary := -unary | power,  power := atom [^ exponent].  Exponents are integer expressions.
class expr_parser {
 public:
  expr_parser(std::string_view text, const IntEnv& env, const ScalarLookup& lookup, bool allow_free)
      : s_(text), env_(env), lookup_(lookup), allow_free_(allow_free) {}

  QScalar scalar() {
    QScalar v = scalar_sum();
    expect_end();
    return v;
  }

  long integer() {
    long v = int_sum();
    expect_end();
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) {
    throw parse_error(what + " at offset " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
  }

  void expect_end() {
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  mpz_class number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  QScalar scalar_sum() {
    QScalar v = scalar_product();
    for (;;) {
      if (eat('+'))
        v = v + scalar_product();
      else if (eat('-'))
        v = v - scalar_product();
      else
        return v;
    }
  }

  QScalar scalar_product() {
    QScalar v = scalar_unary();
    for (;;) {
      if (eat('*'))
        v = v * scalar_unary();
      else if (eat('/'))
        v = v / scalar_unary();
      else
        return v;
    }
  }

  QScalar scalar_unary() {
    if (eat('-')) return -scalar_unary();
    if (eat('+')) return scalar_unary();
    QScalar base = scalar_atom();
    if (eat('^')) return base.pow(int_exponent());
    return base;
  }

  QScalar scalar_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      QScalar v = scalar_sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return QScalar(mpq_class(number()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      if (name == "z" || name == "zeta") return QScalar::zeta(1);
      if (name == "q") return QScalar::q(1);
      if (lookup_)
        if (auto v = lookup_(name)) return *v;
      if (auto it = env_.find(name); it != env_.end()) return QScalar(it->second);
      if (!allow_free_) fail("unknown name '" + name + "'");
      return QScalar::symbol(name);
    }
    fail("expected a value");
  }

  long int_exponent() {
    if (eat('-')) return -int_exponent();
    if (eat('+')) return int_exponent();
    return int_atom();
  }

  long int_sum() {
    long v = int_product();
    for (;;) {
      if (eat('+'))
        v += int_product();
      else if (eat('-'))
        v -= int_product();
      else
        return v;
    }
  }

  long int_product() {
    long v = int_unary();
    while (eat('*')) v *= int_unary();
    return v;
  }

  long int_unary() {
    if (eat('-')) return -int_unary();
    if (eat('+')) return int_unary();
    return int_atom();
  }

  long int_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      long v = int_sum();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class n = number();
      if (!n.fits_slong_p()) fail("integer out of range");
      return n.get_si();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      auto it = env_.find(name);
      if (it == env_.end()) fail("unknown integer parameter '" + name + "'");
      return it->second;
    }
    fail("expected an integer");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const IntEnv& env_;
  const ScalarLookup& lookup_;
  bool allow_free_;
};

}  // namespace detail

/// Parses a scalar literal such as "(1 - q^2)^-2 * c0^-1" or "-3/2*z^4".
inline QScalar parse_scalar(std::string_view text, const IntEnv& env = {}, const ScalarLookup& lookup = {},
                            bool allow_free = true) {
  return detail::expr_parser(text, env, lookup, allow_free).scalar();
}

inline long eval_int(std::string_view text, const IntEnv& env = {}) {
  static const ScalarLookup none;
  return detail::expr_parser(text, env, none, false).integer();
}

}  // namespace qsym
