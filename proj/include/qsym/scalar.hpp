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

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <deque>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace qsym {

/*
 * Exact arithmetic in Q(zeta, t_1, ..., t_k) where zeta is transcendental, q = zeta^2 and the
 * t_i are named free coefficients.  Elements are kept as numerator / product of factors.
 */

/// Number of exponent slots in a monomial.  Slot 0 belongs to zeta.
inline constexpr std::size_t kSlots = 24;

namespace detail {

struct symbol_registry {
  std::mutex mu;
  std::deque<std::string> names{"z"};
};

inline symbol_registry& registry() {
  static symbol_registry r;
  return r;
}

inline bool valid_symbol_name(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(s[0])) return false;
  for (char c : s)
    if (!alpha(c) && !digit(c)) return false;
  return true;
}

}  // namespace detail

/// Returns the exponent slot of a free coefficient, creating it on first use.
inline std::size_t intern_symbol(std::string_view name) {
  if (!detail::valid_symbol_name(name)) throw parse_error("invalid indeterminate name '" + std::string(name) + "'");
  if (name == "z" || name == "q" || name == "zeta") throw parse_error("'" + std::string(name) + "' is reserved");
  auto& reg = detail::registry();
  std::lock_guard lock(reg.mu);
  for (std::size_t i = 1; i < reg.names.size(); ++i)
    if (reg.names[i] == name) return i;
  if (reg.names.size() >= kSlots)
    throw error("too many distinct indeterminates (limit " + std::to_string(kSlots - 1) + ")");
  reg.names.emplace_back(name);
  return reg.names.size() - 1;
}

inline std::string symbol_name(std::size_t slot) {
  auto& reg = detail::registry();
  std::lock_guard lock(reg.mu);
  return slot < reg.names.size() ? reg.names[slot] : std::string("?");
}

class Monomial {
 public:
  Monomial() = default;

  static Monomial zeta(int k) {
    Monomial m;
    m.e_[0] = k;
    return m;
  }

  static Monomial symbol(std::size_t slot, int k = 1) {
    Monomial m;
    m.e_.at(slot) = k;
    return m;
  }

  int operator[](std::size_t i) const { return e_[i]; }
  int& operator[](std::size_t i) { return e_[i]; }

  bool is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
  }

  bool only_zeta() const {
    return std::all_of(e_.begin() + 1, e_.end(), [](int x) { return x == 0; });
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kSlots; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
  }

  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kSlots; ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
  }

  Monomial pow(int n) const {
    Monomial r;
    for (std::size_t i = 0; i < kSlots; ++i) r.e_[i] = e_[i] * n;
    return r;
  }

  /// Componentwise <=, i.e. divisibility in the polynomial ring.
  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kSlots; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  static Monomial min(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kSlots; ++i) r.e_[i] = std::min(a.e_[i], b.e_[i]);
    return r;
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::array<std::int32_t, kSlots> e_{};
};

/// Laurent polynomial over Q in zeta and the named indeterminates.
class ZetaPoly {
 public:
  struct Term {
    Monomial mono;
    mpq_class coef;
    bool operator==(const Term& o) const { return mono == o.mono && coef == o.coef; }
  };

  ZetaPoly() = default;
  ZetaPoly(const mpq_class& c) {  // NOLINT
    if (c != 0) terms_.push_back({Monomial{}, c});
  }
  ZetaPoly(long c) : ZetaPoly(mpq_class(c)) {}  // NOLINT
  ZetaPoly(const Monomial& m, const mpq_class& c = 1) {
    if (c != 0) terms_.push_back({m, c});
  }

  static ZetaPoly from_terms(std::vector<Term> ts) {
    ZetaPoly p;
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coef == 1; }
  bool is_monomial() const { return terms_.size() == 1; }

  bool only_zeta() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.only_zeta(); });
  }

  /// Componentwise minimum exponent over all terms; identity for the zero polynomial.
  Monomial min_exponents() const {
    if (terms_.empty()) return {};
    Monomial m = terms_[0].mono;
    for (const auto& t : terms_) m = Monomial::min(m, t.mono);
    return m;
  }

  ZetaPoly times(const Monomial& m) const {
    ZetaPoly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef});
    return r;  // multiplying by a monomial preserves order
  }

  ZetaPoly scaled(const mpq_class& c) const {
    if (c == 0) return {};
    ZetaPoly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  ZetaPoly operator-() const { return scaled(-1); }

  friend ZetaPoly operator+(const ZetaPoly& a, const ZetaPoly& b) { return merge(a, b, 1); }
  friend ZetaPoly operator-(const ZetaPoly& a, const ZetaPoly& b) { return merge(a, b, -1); }

  friend ZetaPoly operator*(const ZetaPoly& a, const ZetaPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.times(a.terms_[0].mono).scaled(a.terms_[0].coef);
    if (b.size() == 1) return a.times(b.terms_[0].mono).scaled(b.terms_[0].coef);
    ZetaPoly r;
    r.terms_.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) r.terms_.push_back({s.mono * t.mono, s.coef * t.coef});
    r.normalize();
    return r;
  }

  ZetaPoly pow(unsigned n) const {
    ZetaPoly result(1), base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  bool operator==(const ZetaPoly& o) const { return terms_ == o.terms_; }

  /// Total order used to keep denominator factor lists canonical.
  friend std::strong_ordering compare(const ZetaPoly& a, const ZetaPoly& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.terms_[i].mono <=> b.terms_[i].mono; c != 0) return c;
      int c = cmp(a.terms_[i].coef, b.terms_[i].coef);
      if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
  }

  /// Exact quotient p / f in the Laurent ring, or nothing if f does not divide p.
  friend std::optional<ZetaPoly> exact_div(const ZetaPoly& p, const ZetaPoly& f) {
    if (f.is_zero()) throw division_by_zero();
    if (p.is_zero()) return ZetaPoly{};
    Monomial ps = p.min_exponents(), fs = f.min_exponents();
    ZetaPoly r = p.times(Monomial{} / ps);
    ZetaPoly g = f.times(Monomial{} / fs);
    if (g.size() == 1) return r.scaled(1 / g.terms_[0].coef).times(ps / (fs * g.terms_[0].mono));
    const Term& lead = g.terms_.back();
    std::vector<Term> quotient;
    while (!r.is_zero()) {
      const Term& top = r.terms_.back();
      if (!lead.mono.divides(top.mono)) return std::nullopt;
      Term t{top.mono / lead.mono, top.coef / lead.coef};
      quotient.push_back(t);
      r = r - g.times(t.mono).scaled(t.coef);
    }
    std::reverse(quotient.begin(), quotient.end());
    ZetaPoly q;
    q.terms_ = std::move(quotient);  // produced in strictly decreasing order
    return q.times(ps / fs);
  }

 private:
  static ZetaPoly merge(const ZetaPoly& a, const ZetaPoly& b, int sign) {
    ZetaPoly r;
    r.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin(), j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->mono < j->mono)) {
        r.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->mono < i->mono) {
        r.terms_.push_back({j->mono, sign > 0 ? j->coef : mpq_class(-j->coef)});
        ++j;
      } else {
        mpq_class c = sign > 0 ? mpq_class(i->coef + j->coef) : mpq_class(i->coef - j->coef);
        if (c != 0) r.terms_.push_back({i->mono, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono)
        out.back().coef += t.coef;
      else
        out.push_back(std::move(t));
    }
    std::erase_if(out, [](const Term& t) { return t.coef == 0; });
    terms_ = std::move(out);
  }

  std::vector<Term> terms_;  // ascending by monomial, no zero coefficients
};

/*
 * Splits p = content * shift * f with f content-free over Z, every exponent of f
 * non-negative with minimum 0 in each slot, and the lowest term of f positive.
 */
struct NormalizedPoly {
  mpq_class content;
  Monomial shift;
  ZetaPoly primitive;
};

inline NormalizedPoly normalize_poly(const ZetaPoly& p) {
  if (p.is_zero()) throw division_by_zero();
  Monomial shift = p.min_exponents();
  mpz_class num_gcd = 0, den_lcm = 1;
  for (const auto& t : p.terms()) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  mpq_class content(num_gcd, den_lcm);
  content.canonicalize();
  if (p.terms()[0].coef < 0) content = -content;
  return {content, shift, p.times(Monomial{} / shift).scaled(1 / content)};
}

namespace detail {

inline std::string monomial_string(const Monomial& m, bool negate_exponents = false) {
  std::string out;
  for (std::size_t i = 0; i < kSlots; ++i) {
    int e = negate_exponents ? -m[i] : m[i];
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += symbol_name(i);
    if (e != 1) {
      out += '^';
      out += e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e);
    }
  }
  return out;
}

inline std::string poly_string(const ZetaPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    mpq_class c = t.coef;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono = monomial_string(t.mono);
    if (mono.empty())
      out += c.get_str();
    else if (c == 1)
      out += mono;
    else
      out += c.get_str() + "*" + mono;
  }
  return out;
}

}  // namespace detail

/// Exact element of Q(zeta, free coefficients).
class QScalar {
 public:
  struct Factor {
    ZetaPoly poly;  // normalized, never a monomial
    int power;
    bool operator==(const Factor& o) const { return power == o.power && poly == o.poly; }
  };

  QScalar() = default;
  QScalar(long c) : num_(c) {}                // NOLINT
  QScalar(const mpq_class& c) : num_(c) {}    // NOLINT
  QScalar(ZetaPoly p) : num_(std::move(p)) {}  // NOLINT

  static QScalar zeta(int k) { return QScalar(ZetaPoly(Monomial::zeta(k))); }
  /// q^k = zeta^(2k).
  static QScalar q(int k = 1) { return zeta(2 * k); }
  static QScalar symbol(std::string_view name, int k = 1) {
    return QScalar(ZetaPoly(Monomial::symbol(intern_symbol(name), k)));
  }

  const ZetaPoly& num() const { return num_; }
  const std::vector<Factor>& den_factors() const { return den_; }

  ZetaPoly den() const {
    ZetaPoly d(1);
    for (const auto& f : den_) d = d * f.poly.pow(f.power);
    return d;
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.empty() && num_.is_one(); }
  bool is_polynomial() const { return den_.empty(); }

  /// Rational value if the element is a constant.
  std::optional<mpq_class> as_rational() const {
    if (is_zero()) return mpq_class(0);
    if (!den_.empty() || num_.size() != 1 || !num_.terms()[0].mono.is_one()) return std::nullopt;
    return num_.terms()[0].coef;
  }

  QScalar operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  QScalar times_zeta(int k) const {
    if (k == 0) return *this;
    QScalar r = *this;
    r.num_ = r.num_.times(Monomial::zeta(k));
    return r;
  }

  friend QScalar operator+(const QScalar& a, const QScalar& b) { return add(a, b, false); }
  friend QScalar operator-(const QScalar& a, const QScalar& b) { return add(a, b, true); }

  friend QScalar operator*(const QScalar& a, const QScalar& b) {
    if (a.is_zero() || b.is_zero()) return {};
    QScalar r;
    r.num_ = a.num_ * b.num_;
    if (a.den_.empty()) {
      r.den_ = b.den_;
      if (!a.num_.is_monomial()) r.cancel();
      return r;
    }
    if (b.den_.empty()) {
      r.den_ = a.den_;
      if (!b.num_.is_monomial()) r.cancel();
      return r;
    }
    r.den_ = a.den_;
    for (const auto& f : b.den_) r.add_factor(f.poly, f.power);
    r.cancel();
    return r;
  }

  QScalar inverse() const {
    if (is_zero()) throw division_by_zero();
    QScalar r;
    auto n = normalize_poly(num_);
    ZetaPoly top = den().times(Monomial{} / n.shift).scaled(1 / n.content);
    r.num_ = std::move(top);
    if (!n.primitive.is_one()) r.den_.push_back(Factor{std::move(n.primitive), 1});
    r.cancel();
    return r;
  }

  friend QScalar operator/(const QScalar& a, const QScalar& b) {
    if (b.is_zero()) throw division_by_zero();
    if (b.den_.empty() && b.num_.is_monomial()) {
      const auto& t = b.num_.terms()[0];
      QScalar r = a;
      r.num_ = r.num_.times(Monomial{} / t.mono).scaled(1 / t.coef);
      return r;
    }
    return a * b.inverse();
  }

  QScalar pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    QScalar result(1), base = *this;
    while (n) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n) base = base * base;
    }
    return result;
  }

  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar& operator/=(const QScalar& o) { return *this = *this / o; }

  /// Field equality, decided by n1*d2 - n2*d1 == 0.
  friend bool operator==(const QScalar& a, const QScalar& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return (a.num_ * b.den() - b.num_ * a.den()).is_zero();
  }

  /// Numerator and denominator text with negative exponents moved below the bar.
  std::string to_string() const {
    Monomial low = num_.min_exponents();
    Monomial lift = Monomial::min(low, Monomial{});  // only negative exponents
    ZetaPoly top = num_.times(Monomial{} / lift);
    std::string bottom = detail::monomial_string(lift, true);
    for (const auto& f : den_) {
      if (!bottom.empty()) bottom += '*';
      bottom += "(" + detail::poly_string(f.poly) + ")";
      if (f.power != 1) bottom += "^" + std::to_string(f.power);
    }
    if (bottom.empty()) return detail::poly_string(top);
    return "(" + detail::poly_string(top) + ")/(" + bottom + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const QScalar& s) { return os << s.to_string(); }

 private:
  static QScalar add(const QScalar& a, const QScalar& b, bool subtract) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return subtract ? -b : b;
    QScalar r;
    if (a.den_ == b.den_) {
      r.num_ = subtract ? a.num_ - b.num_ : a.num_ + b.num_;
      if (r.num_.is_zero()) return {};
      r.den_ = a.den_;
      if (!r.den_.empty()) r.cancel();
      return r;
    }
    // Common denominator: for each factor take the larger power.
    std::vector<Factor> common = a.den_;
    for (const auto& f : b.den_) {
      auto it = std::find_if(common.begin(), common.end(), [&](const Factor& g) { return g.poly == f.poly; });
      if (it == common.end())
        common.push_back(f);
      else
        it->power = std::max(it->power, f.power);
    }
    auto lift = [&](const QScalar& s) {
      ZetaPoly m(1);
      for (const auto& f : common) {
        int have = 0;
        for (const auto& g : s.den_)
          if (g.poly == f.poly) have = g.power;
        if (f.power > have) m = m * f.poly.pow(static_cast<unsigned>(f.power - have));
      }
      return s.num_ * m;
    };
    r.num_ = subtract ? lift(a) - lift(b) : lift(a) + lift(b);
    if (r.num_.is_zero()) return {};
    r.den_ = std::move(common);
    r.sort_den();
    r.cancel();
    return r;
  }

  void sort_den() {
    std::sort(den_.begin(), den_.end(), [](const Factor& x, const Factor& y) { return compare(x.poly, y.poly) < 0; });
  }

  void add_factor(const ZetaPoly& p, int power) {
    for (auto& f : den_)
      if (f.poly == p) {
        f.power += power;
        return;
      }
    den_.push_back({p, power});
    sort_den();
  }

  void cancel() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (auto& f : den_) {
      while (f.power > 0) {
        auto quotient = exact_div(num_, f.poly);
        if (!quotient) break;
        num_ = std::move(*quotient);
        --f.power;
      }
    }
    std::erase_if(den_, [](const Factor& f) { return f.power == 0; });
  }

  ZetaPoly num_;
  std::vector<Factor> den_;  // sorted, distinct, positive powers
};

/// Integer power with exact arithmetic.
inline QScalar pow(const QScalar& s, long n) { return s.pow(n); }

/*
 * A weight constant sign * zeta^k * r with r a positive rational.  Weight pairs of
 * minimal integral parameters are always of this shape (r = 1 in the catalogued cases).
 */
struct WeightConstant {
  int sign = 1;
  long zeta_exponent = 0;
  mpq_class rational_part = 1;

  static WeightConstant q_power(long k, int sign = 1) { return {sign, 2 * k, 1}; }

  QScalar to_scalar() const {
    return QScalar(ZetaPoly(Monomial::zeta(static_cast<int>(zeta_exponent)), rational_part * sign));
  }

  WeightConstant pow(long n) const {
    mpq_class r = 1, b = n < 0 ? mpq_class(1 / rational_part) : rational_part;
    for (long i = 0; i < (n < 0 ? -n : n); ++i) r *= b;
    return {(n % 2 != 0) ? sign : 1, zeta_exponent * n, r};
  }

  friend WeightConstant operator*(const WeightConstant& a, const WeightConstant& b) {
    return {a.sign * b.sign, a.zeta_exponent + b.zeta_exponent, a.rational_part * b.rational_part};
  }

  bool operator==(const WeightConstant& o) const {
    return sign == o.sign && zeta_exponent == o.zeta_exponent && rational_part == o.rational_part;
  }

  bool is_one() const { return sign == 1 && zeta_exponent == 0 && rational_part == 1; }

  /// Recognizes c * zeta^k with c a nonzero rational; anything else yields nothing.
  static std::optional<WeightConstant> from_scalar(const QScalar& s) {
    if (!s.is_polynomial() || !s.num().is_monomial()) return std::nullopt;
    const auto& t = s.num().terms()[0];
    if (!t.mono.only_zeta()) return std::nullopt;
    mpq_class c = t.coef;
    return WeightConstant{c < 0 ? -1 : 1, t.mono[0], c < 0 ? mpq_class(-c) : c};
  }

  std::string to_string() const { return to_scalar().to_string(); }
};

inline WeightConstant weight_pow(const WeightConstant& w, long n) { return w.pow(n); }

}  // namespace qsym
