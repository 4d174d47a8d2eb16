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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "qplane.hpp"
#include "scalar.hpp"

namespace qsym {

/*
 * A U_q(sl2)-symmetry of the Laurent quantum plane, given by k on generators and the
 * images of x and y under e and f.  Everything else follows from the twisted Leibniz rules
 *   e(ab) = a e(b) + e(a) k(b),   f(ab) = f(a) b + k^{-1}(a) f(b).
 */
struct SymmetryAction {
  AutomorphismSpec k_spec;
  LaurentPoly e_x, e_y, f_x, f_y;

  bool weight_type() const { return k_spec.sigma == SL2Z::identity(); }

  /// (alpha, beta) when k is diagonal with weight constants of the form sign * zeta^k * r.
  std::optional<WeightPair> weights() const {
    if (!weight_type()) return std::nullopt;
    auto a = WeightConstant::from_scalar(k_spec.mu);
    auto b = WeightConstant::from_scalar(k_spec.nu);
    if (!a || !b) return std::nullopt;
    return WeightPair{*a, *b};
  }
};

enum class Generator { k, k_inv, e, f };

inline const char* to_string(Generator g) {
  switch (g) {
    case Generator::k: return "k";
    case Generator::k_inv: return "k^-1";
    case Generator::e: return "e";
    case Generator::f: return "f";
  }
  return "?";
}

using GeneratorWord = std::vector<Generator>;

enum class Variable { x, y };

/// Evaluates generators on Laurent polynomials, caching the images of powers of x and y.
class ActionEngine {
 public:
  explicit ActionEngine(SymmetryAction s) : s_(std::move(s)), k_inv_(automorphism_invert(s_.k_spec)) {}

  const SymmetryAction& action() const { return s_; }

  LaurentPoly apply(Generator g, const LaurentPoly& p) {
    switch (g) {
      case Generator::k: return apply_automorphism(s_.k_spec, p);
      case Generator::k_inv: return apply_automorphism(k_inv_, p);
      default: break;
    }
    LaurentPoly out;
    for (const auto& t : p.terms()) out += t.c * on_monomial(g, t.e.i, t.e.j);
    return out;
  }

  /// Applies the word right to left, i.e. {e, f} acts as e(f(p)).
  LaurentPoly apply_word(const GeneratorWord& w, LaurentPoly p) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) p = apply(*it, p);
    return p;
  }

  /// e or f on x^i y^j with unit coefficient.
  const LaurentPoly& on_monomial(Generator g, long i, long j) {
    auto& cache = g == Generator::e ? e_mono_ : f_mono_;
    auto key = std::make_pair(i, j);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    LaurentPoly r;
    if (g == Generator::e) {
      // e(x^i y^j) = x^i e(y^j) + e(x^i) k(y^j)
      r = LaurentPoly::x(i) * power_image(Generator::e, Variable::y, j) +
          power_image(Generator::e, Variable::x, i) * k_power(Variable::y, j, false);
    } else {
      // f(x^i y^j) = f(x^i) y^j + k^{-1}(x^i) f(y^j)
      r = power_image(Generator::f, Variable::x, i) * LaurentPoly::y(j) +
          k_power(Variable::x, i, true) * power_image(Generator::f, Variable::y, j);
    }
    return cache.emplace(key, std::move(r)).first->second;
  }

  /// e or f on x^p or y^p, built from the Leibniz recursion and the inverse rule.
  const LaurentPoly& power_image(Generator g, Variable v, long p) {
    auto& cache = power_cache_[index(g, v)];
    if (auto it = cache.find(p); it != cache.end()) return it->second;
    LaurentPoly r;
    LaurentPoly var = v == Variable::x ? LaurentPoly::x() : LaurentPoly::y();
    auto pw = [&](long n) { return v == Variable::x ? LaurentPoly::x(n) : LaurentPoly::y(n); };
    if (p == 0) {
      r = {};
    } else if (p == 1) {
      r = g == Generator::e ? (v == Variable::x ? s_.e_x : s_.e_y) : (v == Variable::x ? s_.f_x : s_.f_y);
    } else if (p > 1) {
      LaurentPoly prev = power_image(g, v, p - 1);
      LaurentPoly first = power_image(g, v, 1);
      if (g == Generator::e)  // e(u^{p-1} u) = u^{p-1} e(u) + e(u^{p-1}) k(u)
        r = pw(p - 1) * first + prev * k_power(v, 1, false);
      else  // f(u^{p-1} u) = f(u^{p-1}) u + k^{-1}(u^{p-1}) f(u)
        r = prev * var + k_power(v, p - 1, true) * first;
    } else {
      long n = -p;
      LaurentPoly pos = power_image(g, v, n);
      if (g == Generator::e)  // e(w^{-1}) = -w^{-1} e(w) k(w)^{-1}
        r = -(pw(-n) * pos * mono_inverse(k_power(v, n, false)));
      else  // f(w^{-1}) = -(k^{-1}(w))^{-1} f(w) w^{-1}
        r = -(mono_inverse(k_power(v, n, true)) * pos * pw(-n));
    }
    return cache.emplace(p, std::move(r)).first->second;
  }

 private:
  static std::size_t index(Generator g, Variable v) {
    return (g == Generator::e ? 0 : 2) + (v == Variable::x ? 0 : 1);
  }

  LaurentPoly k_power(Variable v, long n, bool inverse) {
    LaurentPoly m = v == Variable::x ? LaurentPoly::x(n) : LaurentPoly::y(n);
    return apply_automorphism(inverse ? k_inv_ : s_.k_spec, m);
  }

  SymmetryAction s_;
  AutomorphismSpec k_inv_;
  std::map<std::pair<long, long>, LaurentPoly> e_mono_, f_mono_;
  std::map<long, LaurentPoly> power_cache_[4];
};

inline LaurentPoly act(Generator g, const LaurentPoly& p, const SymmetryAction& s) {
  return ActionEngine(s).apply(g, p);
}

inline LaurentPoly act_word(const GeneratorWord& w, const LaurentPoly& p, const SymmetryAction& s) {
  return ActionEngine(s).apply_word(w, p);
}

namespace detail {

/// (A^p - B^p)/(A - B) as an explicit finite sum, for every integer p.
inline QScalar geometric(const QScalar& a, const QScalar& b, long p) {
  if (p == 0) return {};
  long n = p > 0 ? p : -p;
  QScalar sum;
  QScalar ap = 1;
  for (long t = 0; t < n; ++t) {
    sum += ap * b.pow(n - 1 - t);
    ap *= a;
  }
  if (p > 0) return sum;
  return -(a.pow(-n) * b.pow(-n) * sum);
}

}  // namespace detail

/*
 * Closed form of e(x^p), e(y^p), f(x^p), f(y^p) for weight-type actions, term by term in the
 * image of the generator: a factor (A^p - B^p)/(A - B) with (A, B) depending on the case.
 */
inline LaurentPoly closed_power(Generator g, Variable v, long p, const SymmetryAction& s) {
  if (!s.weight_type()) throw validation_error(violation::not_weight_type, "closed power formulas need a diagonal k");
  if (g != Generator::e && g != Generator::f) throw validation_error(violation::precondition, "closed_power takes e or f");
  const QScalar& alpha = s.k_spec.mu;
  const QScalar& beta = s.k_spec.nu;
  const LaurentPoly& base = g == Generator::e ? (v == Variable::x ? s.e_x : s.e_y) : (v == Variable::x ? s.f_x : s.f_y);
  std::vector<LaurentPoly::Term> out;
  for (const auto& t : base.terms()) {
    const long i = t.e.i, j = t.e.j;
    QScalar a, b;
    if (g == Generator::e && v == Variable::x) {
      a = alpha * QScalar::q(static_cast<int>(j));
      b = 1;
    } else if (g == Generator::e) {
      a = beta;
      b = QScalar::q(static_cast<int>(i));
    } else if (v == Variable::x) {
      a = alpha.inverse();
      b = QScalar::q(static_cast<int>(j));
    } else {
      a = beta.inverse() * QScalar::q(static_cast<int>(i));
      b = 1;
    }
    QScalar c = t.c * detail::geometric(a, b, p);
    if (v == Variable::x)
      out.push_back({{p - 1 + i, j}, c});
    else
      out.push_back({{i, p - 1 + j}, c});
  }
  return LaurentPoly::from_terms(std::move(out));
}

}  // namespace qsym
