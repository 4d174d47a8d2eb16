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

#include <stdexcept>
#include <string>

namespace qsym {

/// Base class of every exception thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class division_by_zero : public error {
 public:
  division_by_zero() : error("division by zero") {}
};

/// Raised when a general Laurent polynomial is passed where a single term is required.
class not_a_monomial : public error {
 public:
  using error::error;
};

class zero_polynomial : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  using error::error;
};

/// Both e and f act as zero: the action carries no extreme-index data.
class trivial_action : public error {
 public:
  trivial_action() : error("e and f act as identically zero operators (type II action)") {}
};

enum class violation {
  zero_rs,             // (r,s) = (0,0)
  zero_discriminant,   // D = rv - su = 0
  signature_mismatch,  // (D, G) or parameter shape does not match the series
  parity,              // D = 4, G = 2 needs u and v even
  no_solutions,        // D = 4, G = 4 admits no minimal weight pair
  zero_coefficient,    // a coefficient flagged nonzero evaluates to zero
  coefficient_arity,   // unknown or missing coefficient name
  minimality,          // (r,s) is not minimal for the weight pair
  non_generic,         // alpha^m beta^n = 1 for some (m,n) != (0,0)
  weight_relation,     // alpha^u beta^v != q^2
  rational_part,       // weight constant outside the sign * zeta^k form
  not_weight_type,     // k does not act diagonally
  precondition,        // any other violated precondition
  document,            // malformed document
};

inline const char* to_string(violation v) {
  switch (v) {
    case violation::zero_rs: return "zero_rs";
    case violation::zero_discriminant: return "zero_discriminant";
    case violation::signature_mismatch: return "signature_mismatch";
    case violation::parity: return "parity";
    case violation::no_solutions: return "no_solutions";
    case violation::zero_coefficient: return "zero_coefficient";
    case violation::coefficient_arity: return "coefficient_arity";
    case violation::minimality: return "minimality";
    case violation::non_generic: return "non_generic";
    case violation::weight_relation: return "weight_relation";
    case violation::rational_part: return "rational_part";
    case violation::not_weight_type: return "not_weight_type";
    case violation::precondition: return "precondition";
    case violation::document: return "document";
  }
  return "unknown";
}

/// A typed rejection of invalid input; `kind()` names the violated constraint.
class validation_error : public error {
 public:
  validation_error(violation kind, const std::string& what)
      : error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  violation kind() const noexcept { return kind_; }

 private:
  violation kind_;
};

/// Raised by the genericity test; carries the relation alpha^m beta^n = 1 that was found.
class non_generic_error : public validation_error {
 public:
  non_generic_error(long m, long n)
      : validation_error(violation::non_generic,
                         "weight pair satisfies alpha^" + std::to_string(m) + " beta^" +
                             std::to_string(n) + " = 1"),
        m_(m),
        n_(n) {}

  long m() const noexcept { return m_; }
  long n() const noexcept { return n_; }

 private:
  long m_;
  long n_;
};

}  // namespace qsym
