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

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "scalar.hpp"

namespace qsym {

/// Exponent pair of the normal-ordered monomial x^i y^j.
struct Exp2 {
  long i = 0;
  long j = 0;
  auto operator<=>(const Exp2&) const = default;
};

/*
 * Element of the Laurent quantum plane  C_q[x^{+-1}, y^{+-1}],  yx = q xy,
 * stored as normal-ordered terms c * x^i y^j sorted by (i, j).
 */
class LaurentPoly {
 public:
  struct Term {
    Exp2 e;
    QScalar c;
  };

  LaurentPoly() = default;

  static LaurentPoly monomial(const QScalar& c, long i, long j) {
    LaurentPoly p;
    if (!c.is_zero()) p.terms_.push_back({{i, j}, c});
    return p;
  }
  static LaurentPoly constant(const QScalar& c) { return monomial(c, 0, 0); }
  static LaurentPoly one() { return monomial(QScalar(1), 0, 0); }
  static LaurentPoly x(long i = 1) { return monomial(QScalar(1), i, 0); }
  static LaurentPoly y(long j = 1) { return monomial(QScalar(1), 0, j); }

  /// Builds from arbitrary terms, merging duplicates and dropping zeros.
  static LaurentPoly from_terms(std::vector<Term> ts) {
    std::sort(ts.begin(), ts.end(), [](const Term& a, const Term& b) { return a.e < b.e; });
    LaurentPoly p;
    for (auto& t : ts) {
      if (!p.terms_.empty() && p.terms_.back().e == t.e)
        p.terms_.back().c += t.c;
      else
        p.terms_.push_back(std::move(t));
    }
    std::erase_if(p.terms_, [](const Term& t) { return t.c.is_zero(); });
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  QScalar coeff(long i, long j) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), Exp2{i, j},
                               [](const Term& t, const Exp2& e) { return t.e < e; });
    return (it != terms_.end() && it->e == Exp2{i, j}) ? it->c : QScalar();
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, false); }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return merge(a, b, true); }

  /// Scalar multiple.
  friend LaurentPoly operator*(const QScalar& s, const LaurentPoly& p) {
    if (s.is_zero()) return {};
    LaurentPoly r;
    r.terms_.reserve(p.size());
    for (const auto& t : p.terms_) {
      QScalar c = s * t.c;
      if (!c.is_zero()) r.terms_.push_back({t.e, std::move(c)});
    }
    return r;
  }

  /// Multiplies every coefficient by q^k; cheap, no renormalisation.
  LaurentPoly times_q(long k) const {
    LaurentPoly r = *this;
    for (auto& t : r.terms_) t.c = t.c.times_zeta(static_cast<int>(2 * k));
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t k = 0; k < a.size(); ++k)
      if (a.terms_[k].e != b.terms_[k].e || !(a.terms_[k].c == b.terms_[k].c)) return false;
    return true;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& t : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + t.c.to_string() + ")";
      if (t.e.i != 0) out += "*x^" + std::to_string(t.e.i);
      if (t.e.j != 0) out += "*y^" + std::to_string(t.e.j);
    }
    return out;
  }

 private:
  static LaurentPoly merge(const LaurentPoly& a, const LaurentPoly& b, bool subtract) {
    LaurentPoly r;
    r.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->e < j->e)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->e < i->e) {
        r.terms_.push_back({j->e, subtract ? -j->c : j->c});
        ++j;
      } else {
        QScalar c = subtract ? i->c - j->c : i->c + j->c;
        if (!c.is_zero()) r.terms_.push_back({i->e, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  std::vector<Term> terms_;
};

/// Product in the quantum plane: (x^a y^b)(x^c y^d) = q^{bc} x^{a+c} y^{b+d}.
inline LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms())
      out.push_back({{s.e.i + t.e.i, s.e.j + t.e.j}, (s.c * t.c).times_zeta(static_cast<int>(2 * s.e.j * t.e.i))});
  return LaurentPoly::from_terms(std::move(out));
}

inline LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) { return poly_mul(a, b); }

/// (c x^i y^j)^{-1} = c^{-1} q^{ij} x^{-i} y^{-j}.
inline LaurentPoly mono_inverse(const LaurentPoly& m) {
  if (m.is_zero()) throw division_by_zero();
  if (!m.is_monomial()) throw not_a_monomial("only single terms are invertible in the quantum plane");
  const auto& t = m.terms()[0];
  return LaurentPoly::monomial(t.c.inverse().times_zeta(static_cast<int>(2 * t.e.i * t.e.j)), -t.e.i, -t.e.j);
}

/// (c x^a y^b)^n = c^n q^{ab n(n-1)/2} x^{an} y^{bn}, valid for every integer n.
inline LaurentPoly mono_pow(const LaurentPoly& m, long n) {
  if (!m.is_monomial()) throw not_a_monomial("mono_pow needs a single term");
  const auto& t = m.terms()[0];
  long tri = n * (n - 1) / 2;
  return LaurentPoly::monomial(t.c.pow(n).times_zeta(static_cast<int>(2 * t.e.i * t.e.j * tri)), t.e.i * n,
                               t.e.j * n);
}

/// Integer 2x2 matrix (a b; c d).
struct IntMatrix2 {
  long a = 1, b = 0, c = 0, d = 1;
  long det() const { return a * d - b * c; }
  friend IntMatrix2 operator*(const IntMatrix2& p, const IntMatrix2& r) {
    return {p.a * r.a + p.b * r.c, p.a * r.b + p.b * r.d, p.c * r.a + p.d * r.c, p.c * r.b + p.d * r.d};
  }
  bool operator==(const IntMatrix2&) const = default;
  std::string to_string() const {
    return "(" + std::to_string(a) + " " + std::to_string(b) + "; " + std::to_string(c) + " " + std::to_string(d) +
           ")";
  }
};

/// Element of SL(2,Z); construction rejects determinants other than 1.
class SL2Z {
 public:
  SL2Z() = default;
  SL2Z(long k, long m, long l, long n) : m_{k, m, l, n} {
    if (m_.det() != 1) throw validation_error(violation::precondition, "matrix " + m_.to_string() + " is not in SL(2,Z)");
  }
  explicit SL2Z(const IntMatrix2& m) : SL2Z(m.a, m.b, m.c, m.d) {}

  static SL2Z identity() { return {}; }
  static SL2Z minus_identity() { return {-1, 0, 0, -1}; }

  long k() const { return m_.a; }
  long m() const { return m_.b; }
  long l() const { return m_.c; }
  long n() const { return m_.d; }
  const IntMatrix2& matrix() const { return m_; }

  SL2Z inverse() const { return {m_.d, -m_.b, -m_.c, m_.a}; }
  friend SL2Z operator*(const SL2Z& p, const SL2Z& r) { return SL2Z(p.m_ * r.m_); }
  bool operator==(const SL2Z&) const = default;
  std::string to_string() const { return m_.to_string(); }

 private:
  IntMatrix2 m_;
};

/// x -> mu x^k y^m,  y -> nu x^l y^n  for sigma = (k m; l n).
struct AutomorphismSpec {
  SL2Z sigma;
  QScalar mu = 1;
  QScalar nu = 1;

  static AutomorphismSpec identity() { return {}; }
  static AutomorphismSpec diagonal(const QScalar& mu, const QScalar& nu) { return {SL2Z{}, mu, nu}; }
  bool operator==(const AutomorphismSpec&) const = default;

  LaurentPoly image_x() const { return LaurentPoly::monomial(mu, sigma.k(), sigma.m()); }
  LaurentPoly image_y() const { return LaurentPoly::monomial(nu, sigma.l(), sigma.n()); }
};

/// phi(c x^i y^j) = c phi(x)^i phi(y)^j, computed with the closed power formula.
inline LaurentPoly apply_automorphism(const AutomorphismSpec& phi, const LaurentPoly& p) {
  if (phi.mu.is_zero() || phi.nu.is_zero()) throw validation_error(violation::precondition, "automorphism scalars must be nonzero");
  std::vector<LaurentPoly::Term> out;
  out.reserve(p.size());
  const long k = phi.sigma.k(), m = phi.sigma.m(), l = phi.sigma.l(), n = phi.sigma.n();
  for (const auto& t : p.terms()) {
    const long i = t.e.i, j = t.e.j;
    // (x^k y^m)^i (x^l y^n)^j with the reordering factor q^{(m i)(l j)}
    long qexp = k * m * (i * (i - 1) / 2) + l * n * (j * (j - 1) / 2) + (m * i) * (l * j);
    QScalar c = t.c * phi.mu.pow(i) * phi.nu.pow(j);
    out.push_back({{k * i + l * j, m * i + n * j}, c.times_zeta(static_cast<int>(2 * qexp))});
  }
  return LaurentPoly::from_terms(std::move(out));
}

/// (outer o inner)(p) = outer(inner(p)).
inline AutomorphismSpec automorphism_compose(const AutomorphismSpec& outer, const AutomorphismSpec& inner) {
  LaurentPoly ix = apply_automorphism(outer, inner.image_x());
  LaurentPoly iy = apply_automorphism(outer, inner.image_y());
  const auto& tx = ix.terms()[0];
  const auto& ty = iy.terms()[0];
  return {SL2Z(tx.e.i, tx.e.j, ty.e.i, ty.e.j), tx.c, ty.c};
}

inline AutomorphismSpec automorphism_invert(const AutomorphismSpec& phi) {
  // phi o T is diagonal for T the unit-scalar map of sigma^{-1}; undo that diagonal on the right.
  AutomorphismSpec t{phi.sigma.inverse(), 1, 1};
  AutomorphismSpec d = automorphism_compose(phi, t);
  return automorphism_compose(t, AutomorphismSpec::diagonal(d.mu.inverse(), d.nu.inverse()));
}

/// alpha with p * x = alpha x p, beta with p * y = beta y p, for a single term p.
struct WeightPair {
  WeightConstant alpha;
  WeightConstant beta;
  bool operator==(const WeightPair&) const = default;
};

/// Weight of a nonzero Laurent polynomial w.r.t. a diagonal k; nothing if it is not homogeneous.
inline std::optional<WeightConstant> weight_of(const LaurentPoly& p, const WeightPair& w) {
  if (p.is_zero()) throw zero_polynomial("weight of the zero polynomial is undefined");
  std::optional<WeightConstant> result;
  for (const auto& t : p.terms()) {
    WeightConstant wt = w.alpha.pow(t.e.i) * w.beta.pow(t.e.j);
    if (!result)
      result = wt;
    else if (!(*result == wt))
      return std::nullopt;
  }
  return result;
}

/// (alpha, beta) -> (alpha^k beta^m, alpha^l beta^n).
inline WeightPair int_matrix_weight_action(const IntMatrix2& s, const WeightPair& w) {
  return {w.alpha.pow(s.a) * w.beta.pow(s.b), w.alpha.pow(s.c) * w.beta.pow(s.d)};
}

inline WeightPair sl2z_weight_action(const SL2Z& s, const WeightPair& w) {
  return int_matrix_weight_action(s.matrix(), w);
}

}  // namespace qsym
