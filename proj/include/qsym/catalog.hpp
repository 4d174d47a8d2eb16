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
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "action.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "qplane.hpp"
#include "scalar.hpp"

namespace qsym {

/// Phi = (r s; u v) with alpha^r beta^s = 1 and alpha^u beta^v = q^2, plus the series shape.
struct IntegralParams {
  long r = 0, s = 0, u = 0, v = 0;
  long M = 0;
  long L = -1;  // -1: take from the series
  long N = -1;

  long discriminant() const { return r * v - s * u; }
  long gcd_rs() const { return std::gcd(r, s); }

  /// Same data with (r, s) negated when D < 0, so that D > 0; the sign flip only reindexes.
  IntegralParams canonical() const {
    IntegralParams p = *this;
    if (discriminant() < 0) {
      p.r = -r;
      p.s = -s;
    }
    return p;
  }

  IntEnv env() const { return {{"r", r}, {"s", s}, {"u", u}, {"v", v}, {"M", M}}; }

  bool operator==(const IntegralParams&) const = default;
};

struct Invariants {
  long D;
  long G;
};

/// D = rv - su and G = gcd(r, s) > 0.
inline Invariants invariants(const IntegralParams& p) {
  if (p.r == 0 && p.s == 0) throw validation_error(violation::zero_rs, "(r,s) must not be (0,0)");
  return {p.discriminant(), p.gcd_rs()};
}

enum class SeriesId {
  TypeI,
  TypeII,
  Generic,
  D1G1E1F3,
  D1G1E2F4,
  D1G1E3F3,
  D1G1E2F2,
  D1G1E4F2,
  D1G1E3F1,
  D2G1E1F3a,
  D2G1E1F3b,
  D2G1E2F2a,
  D2G1E2F2b,
  D2G1E3F1a,
  D2G1E3F1b,
  D2G2E1F3,
  D2G2E2F2,
  D2G2E3F1,
  D4G1E1F2a,
  D4G1E1F2b,
  D4G1E2F1a,
  D4G1E2F1b,
  D4G2E1F2a,
  D4G2E1F2b,
  D4G2E2F1a,
  D4G2E2F1b,
  D1N2L0,
  D1N2L1,
  D1N2L2,
  D2N1L0,
  D2N1L1,
};

enum class Family { type1, type2, generic, nongeneric };

/// Which weight pair formula a series uses.
enum class WeightRule { none, D1, D2G1a, D2G1b, D2G2, D4G1a, D4G1b, D4G2a, D4G2b };

inline const char* to_string(WeightRule w) {
  switch (w) {
    case WeightRule::none: return "-";
    case WeightRule::D1: return "(q^-2s, q^2r)";
    case WeightRule::D2G1a: return "(q^-s, q^r)";
    case WeightRule::D2G1b: return "((-1)^s q^-s, (-1)^r q^r)";
    case WeightRule::D2G2: return "((-1)^v q^-s, (-1)^u q^r)";
    case WeightRule::D4G1a: return "(z^-s, z^r)";
    case WeightRule::D4G1b: return "((-1)^s z^-s, (-1)^r z^r)";
    case WeightRule::D4G2a: return "(-q^-s', (-1)^(r'+1) q^r')";
    case WeightRule::D4G2b: return "((-1)^(s'+1) q^-s', -q^r')";
  }
  return "?";
}

struct CoefficientSpec {
  std::string name;
  bool nonzero;
};

/// Setting `coefficient` to zero in the target series reproduces the embedded one term for term.
struct Embedding {
  SeriesId target;
  std::string coefficient;
};

struct SeriesInfo {
  SeriesId id;
  std::string name;
  Family family;
  long D = 0, G = 0, L = 0, N = 0;
  WeightRule rule = WeightRule::none;
  std::vector<CoefficientSpec> coefficients;
  // Coefficient formulas of the structural images, indexed by w (for e) and t (for f).
  std::vector<std::pair<long, std::string>> e_terms;
  std::vector<std::pair<long, std::string>> f_terms;
  std::optional<Embedding> embedding;

  bool embedded() const { return embedding.has_value(); }
};

namespace detail {

// Common prefactor q^{(u+Mr)(v+Ms)+3} (1-q^2)^{-2}.
inline const std::string K = "q^((u+M*r)*(v+M*s)+3)*(1-q^2)^-2";
inline const std::string C0_from_a0 = "-a0^-1*" + K;
inline const std::string A0_from_c0 = "-c0^-1*" + K;
inline const std::string C1_from_a1 = "a0^-2*a1*q^((u+M*r)*(v+M*s)+2-2*s*u-2*M*r*s)*(1-q^2)^-2";
inline const std::string C2_from_a2 = "-a0^-2*a2*q^((u+M*r)*(v+M*s)+1-4*s*u-4*M*r*s)*(1-q^2)^-2";
inline const std::string A1_from_c1 = "c0^-2*c1*q^((u+M*r)*(v+M*s)+2*s*u+4+2*M*r*s)*(1-q^2)^-2";

inline SeriesInfo nongeneric(SeriesId id, std::string name, long D, long G, long L, long N, WeightRule rule,
                             std::vector<CoefficientSpec> coeffs, std::vector<std::pair<long, std::string>> e,
                             std::vector<std::pair<long, std::string>> f,
                             std::optional<Embedding> emb = std::nullopt) {
  return {id, std::move(name), Family::nongeneric, D, G, L, N, rule, std::move(coeffs), std::move(e), std::move(f),
          std::move(emb)};
}

inline std::vector<SeriesInfo> build_table() {
  using W = WeightRule;
  using S = SeriesId;
  std::vector<SeriesInfo> t;
  t.push_back({S::TypeI, "TypeI", Family::type1, 0, 0, 0, 0, W::none, {{"alpha", true}, {"beta", true}}, {}, {}, {}});
  t.push_back({S::TypeII, "TypeII", Family::type2, 0, 0, 0, 0, W::none, {{"eps_x", true}, {"eps_y", true}}, {}, {}, {}});
  t.push_back({S::Generic, "Generic", Family::generic, 0, 0, 0, 0, W::none,
               {{"u", false}, {"v", false}, {"alpha", true}, {"beta", true}, {"a", true}}, {}, {}, {}});

  // D = 1
  t.push_back(nongeneric(S::D1G1E1F3, "D1G1E1F3", 1, 1, 0, 4, W::D1, {{"c0", true}, {"c2", false}, {"c4", false}},
                         {{0, A0_from_c0}}, {{0, "c0"}, {2, "c2"}, {4, "c4"}}));
  t.push_back(nongeneric(S::D1G1E2F4, "D1G1E2F4", 1, 1, 1, 4, W::D1, {{"c0", true}, {"c1", true}, {"c2", false}},
                         {{0, A0_from_c0}, {1, A1_from_c1}},
                         {{0, "c0"}, {1, "c1"}, {2, "c2"}, {3, "c0^-1*c1*c2*q^(2*r*s)"}}));
  t.push_back(nongeneric(S::D1G1E3F3, "D1G1E3F3", 1, 1, 2, 4, W::D1, {{"a0", true}, {"a1", true}, {"a2", false}},
                         {{0, "a0"}, {1, "a1"}, {2, "a2"}}, {{0, C0_from_a0}, {1, C1_from_a1}, {2, C2_from_a2}}));
  t.push_back(nongeneric(S::D1G1E2F2, "D1G1E2F2", 1, 1, 2, 4, W::D1, {{"a0", true}, {"a2", false}, {"c2", false}},
                         {{0, "a0"}, {2, "a2"}}, {{0, C0_from_a0}, {2, "c2"}}));
  t.push_back(nongeneric(S::D1G1E4F2, "D1G1E4F2", 1, 1, 3, 4, W::D1, {{"a0", true}, {"a1", true}, {"a2", false}},
                         {{0, "a0"}, {1, "a1"}, {2, "a2"}, {3, "a0^-1*a1*a2*q^(2*r*s)"}},
                         {{0, C0_from_a0}, {1, C1_from_a1}}));
  t.push_back(nongeneric(S::D1G1E3F1, "D1G1E3F1", 1, 1, 4, 4, W::D1, {{"a0", true}, {"a2", false}, {"a4", false}},
                         {{0, "a0"}, {2, "a2"}, {4, "a4"}}, {{0, C0_from_a0}}));

  // D = 2
  struct D2 {
    S e1f3, e2f2, e3f1;
    const char* suffix;
    long G;
    W rule;
  };
  for (const D2& d : {D2{S::D2G1E1F3a, S::D2G1E2F2a, S::D2G1E3F1a, "G1", 1, W::D2G1a},
                      D2{S::D2G1E1F3b, S::D2G1E2F2b, S::D2G1E3F1b, "G1", 1, W::D2G1b},
                      D2{S::D2G2E1F3, S::D2G2E2F2, S::D2G2E3F1, "G2", 2, W::D2G2}}) {
    std::string tag = d.rule == W::D2G1a ? "(a)" : d.rule == W::D2G1b ? "(b)" : "";
    std::string pre = std::string("D2") + d.suffix;
    t.push_back(nongeneric(d.e1f3, pre + "E1F3" + tag, 2, d.G, 0, 2, d.rule,
                           {{"c0", true}, {"c1", false}, {"c2", false}}, {{0, A0_from_c0}},
                           {{0, "c0"}, {1, "c1"}, {2, "c2"}}));
    t.push_back(nongeneric(d.e2f2, pre + "E2F2" + tag, 2, d.G, 1, 2, d.rule,
                           {{"a0", true}, {"a1", false}, {"c1", false}}, {{0, "a0"}, {1, "a1"}},
                           {{0, C0_from_a0}, {1, "c1"}}));
    t.push_back(nongeneric(d.e3f1, pre + "E3F1" + tag, 2, d.G, 2, 2, d.rule,
                           {{"a0", true}, {"a1", false}, {"a2", false}}, {{0, "a0"}, {1, "a1"}, {2, "a2"}},
                           {{0, C0_from_a0}}));
  }

  // D = 4
  struct D4 {
    S e1f2, e2f1;
    std::string pre;
    long G;
    W rule;
  };
  for (const D4& d : {D4{S::D4G1E1F2a, S::D4G1E2F1a, "D4G1", 1, W::D4G1a},
                      D4{S::D4G1E1F2b, S::D4G1E2F1b, "D4G1", 1, W::D4G1b},
                      D4{S::D4G2E1F2a, S::D4G2E2F1a, "D4G2", 2, W::D4G2a},
                      D4{S::D4G2E1F2b, S::D4G2E2F1b, "D4G2", 2, W::D4G2b}}) {
    std::string tag = (d.rule == W::D4G1a || d.rule == W::D4G2a) ? "(a)" : "(b)";
    t.push_back(nongeneric(d.e1f2, d.pre + "E1F2" + tag, 4, d.G, 0, 1, d.rule, {{"c0", true}, {"c1", false}},
                           {{0, A0_from_c0}}, {{0, "c0"}, {1, "c1"}}));
    t.push_back(nongeneric(d.e2f1, d.pre + "E2F1" + tag, 4, d.G, 1, 1, d.rule, {{"a0", true}, {"a1", false}},
                           {{0, "a0"}, {1, "a1"}}, {{0, C0_from_a0}}));
  }

  // Embedded series without a name of their own.
  t.push_back(nongeneric(S::D1N2L0, "D1N2L0", 1, 1, 0, 2, W::D1, {{"c0", true}, {"c2", false}}, {{0, A0_from_c0}},
                         {{0, "c0"}, {2, "c2"}}, Embedding{S::D1G1E1F3, "c4"}));
  t.push_back(nongeneric(S::D1N2L1, "D1N2L1", 1, 1, 1, 2, W::D1, {{"a0", true}, {"a1", true}},
                         {{0, "a0"}, {1, "a1"}}, {{0, C0_from_a0}, {1, C1_from_a1}}, Embedding{S::D1G1E4F2, "a2"}));
  t.push_back(nongeneric(S::D1N2L2, "D1N2L2", 1, 1, 2, 2, W::D1, {{"a0", true}, {"a2", false}},
                         {{0, "a0"}, {2, "a2"}}, {{0, C0_from_a0}}, Embedding{S::D1G1E3F1, "a4"}));
  t.push_back(nongeneric(S::D2N1L0, "D2N1L0", 2, 1, 0, 1, W::D2G1a, {{"c0", true}, {"c1", false}},
                         {{0, A0_from_c0}}, {{0, "c0"}, {1, "c1"}}, Embedding{S::D2G1E1F3a, "c2"}));
  t.push_back(nongeneric(S::D2N1L1, "D2N1L1", 2, 1, 1, 1, W::D2G1a, {{"a0", true}, {"a1", false}},
                         {{0, "a0"}, {1, "a1"}}, {{0, C0_from_a0}}, Embedding{S::D2G1E3F1a, "a2"}));
  return t;
}

}  // namespace detail

/// The immutable series table, in enum order.
inline const std::vector<SeriesInfo>& series_table() {
  static const std::vector<SeriesInfo> table = detail::build_table();
  return table;
}

inline const SeriesInfo& series_info(SeriesId id) {
  for (const auto& s : series_table())
    if (s.id == id) return s;
  throw error("unknown series id");
}

inline std::optional<SeriesId> series_from_name(std::string_view name) {
  for (const auto& s : series_table())
    if (s.name == name) return s.id;
  // accept the variant letter without parentheses, e.g. D2G1E1F3a
  for (const auto& s : series_table()) {
    std::string flat = s.name;
    std::erase(flat, '(');
    std::erase(flat, ')');
    if (flat == name) return s.id;
  }
  return std::nullopt;
}

/// Series sorted by (D, G, L) with the classical families first; optional filters on D and G.
inline std::vector<const SeriesInfo*> list_series(std::optional<long> d = {}, std::optional<long> g = {}) {
  std::vector<const SeriesInfo*> out;
  for (const auto& s : series_table()) {
    if (d && (s.family != Family::nongeneric || s.D != *d || s.embedded())) continue;
    if (g && (s.family != Family::nongeneric || s.G != *g || s.embedded())) continue;
    out.push_back(&s);
  }
  std::stable_sort(out.begin(), out.end(), [](const SeriesInfo* a, const SeriesInfo* b) {
    return std::tie(a->D, a->G, a->L) < std::tie(b->D, b->G, b->L);
  });
  return out;
}

/// Free coefficient values by name.
using CoefficientSet = std::map<std::string, QScalar, std::less<>>;

/// Every coefficient of the series as its own indeterminate.
inline CoefficientSet symbolic_coefficients(SeriesId id) {
  CoefficientSet c;
  for (const auto& spec : series_info(id).coefficients) c[spec.name] = QScalar::symbol(spec.name);
  return c;
}

// ---------------------------------------------------------------------------------------------
// Classical families

inline SymmetryAction make_type1(const WeightConstant& alpha, const WeightConstant& beta) {
  SymmetryAction s;
  s.k_spec = {SL2Z::minus_identity(), alpha.to_scalar().inverse(), beta.to_scalar().inverse()};
  return s;
}

inline SymmetryAction make_type2(int eps_x, int eps_y) {
  if ((eps_x != 1 && eps_x != -1) || (eps_y != 1 && eps_y != -1))
    throw validation_error(violation::precondition, "type II signs must be +1 or -1");
  SymmetryAction s;
  s.k_spec = AutomorphismSpec::diagonal(eps_x, eps_y);
  return s;
}

namespace detail {

/// Splits the integers > 1 into pairwise coprime factors whose products recover every input.
inline std::vector<mpz_class> coprime_base(std::vector<mpz_class> xs) {
  std::erase_if(xs, [](const mpz_class& x) { return x <= 1; });
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    for (std::size_t i = 0; i < xs.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < xs.size() && !changed; ++j) {
        mpz_class g = gcd(xs[i], xs[j]);
        if (g > 1) {
          mpz_class a = xs[i] / g, b = xs[j] / g;
          xs.erase(xs.begin() + static_cast<long>(j));
          xs.erase(xs.begin() + static_cast<long>(i));
          for (const auto& y : {a, g, b})
            if (y > 1) xs.push_back(y);
          changed = true;
        }
      }
  }
  return xs;
}

inline long valuation(mpz_class n, const mpz_class& b) {
  long k = 0;
  while (n % b == 0) {
    n /= b;
    ++k;
  }
  return k;
}

}  // namespace detail

/*
 * Finds a primitive (m, n) != (0, 0) with alpha^m beta^n = 1, if one exists.  Each constant is
 * a vector (zeta exponent, valuations of the rational part over a coprime base); a relation
 * exists iff the two vectors are dependent, and the sign decides between (m0, n0) and (2m0, 2n0).
 */
inline std::optional<std::pair<long, long>> multiplicative_relation(const WeightConstant& alpha,
                                                                    const WeightConstant& beta) {
  auto parts = [](const mpq_class& r) {
    return std::vector<mpz_class>{mpz_class(r.get_num()), mpz_class(r.get_den())};
  };
  std::vector<mpz_class> all;
  for (const auto& x : parts(alpha.rational_part)) all.push_back(x);
  for (const auto& x : parts(beta.rational_part)) all.push_back(x);
  auto base = detail::coprime_base(all);
  auto vec = [&](const WeightConstant& w) {
    std::vector<long> v{w.zeta_exponent};
    for (const auto& b : base)
      v.push_back(detail::valuation(mpz_class(w.rational_part.get_num()), b) -
                  detail::valuation(mpz_class(w.rational_part.get_den()), b));
    return v;
  };
  std::vector<long> va = vec(alpha), vb = vec(beta);
  bool za = std::all_of(va.begin(), va.end(), [](long x) { return x == 0; });
  bool zb = std::all_of(vb.begin(), vb.end(), [](long x) { return x == 0; });
  long m0 = 0, n0 = 0;
  if (za && zb) {
    if (alpha.sign == 1) return std::make_pair(1L, 0L);
    if (beta.sign == 1) return std::make_pair(0L, 1L);
    return std::make_pair(1L, -1L);
  }
  if (za) {
    m0 = 1;
  } else if (zb) {
    n0 = 1;
  } else {
    // dependent iff every 2x2 minor vanishes
    for (std::size_t i = 0; i < va.size(); ++i)
      for (std::size_t j = i + 1; j < va.size(); ++j)
        if (va[i] * vb[j] - va[j] * vb[i] != 0) return std::nullopt;
    std::size_t k = 0;
    while (va[k] == 0 && vb[k] == 0) ++k;
    long g = std::gcd(va[k], vb[k]);
    m0 = vb[k] / g;
    n0 = -va[k] / g;
  }
  if (m0 < 0 || (m0 == 0 && n0 < 0)) {
    m0 = -m0;
    n0 = -n0;
  }
  int sign = (m0 % 2 != 0 ? alpha.sign : 1) * (n0 % 2 != 0 ? beta.sign : 1);
  if (sign == 1) return std::make_pair(m0, n0);
  return std::make_pair(2 * m0, 2 * n0);
}

inline SymmetryAction make_generic(long u, long v, const WeightConstant& alpha, const WeightConstant& beta,
                                   const QScalar& a) {
  if (a.is_zero()) throw validation_error(violation::zero_coefficient, "generic parameter a must be nonzero");
  if (!(alpha.pow(u) * beta.pow(v) == WeightConstant::q_power(2)))
    throw validation_error(violation::weight_relation, "alpha^u beta^v must equal q^2");
  if (auto rel = multiplicative_relation(alpha, beta)) throw non_generic_error(rel->first, rel->second);
  QScalar al = alpha.to_scalar(), be = beta.to_scalar();
  QScalar pref = a * QScalar::q(static_cast<int>(u * v + 3)) / (QScalar(1) - QScalar::q(2)).pow(2);
  SymmetryAction s;
  s.k_spec = AutomorphismSpec::diagonal(al, be);
  s.e_x = LaurentPoly::monomial(pref * (QScalar(1) - al * QScalar::q(static_cast<int>(v))), u + 1, v);
  s.e_y = LaurentPoly::monomial(pref * (QScalar::q(static_cast<int>(u)) - be), u, v + 1);
  s.f_x = LaurentPoly::monomial(-(al.inverse() - QScalar::q(static_cast<int>(-v))) / a, -u + 1, -v);
  s.f_y = LaurentPoly::monomial(-(be.inverse() * QScalar::q(static_cast<int>(-u)) - QScalar(1)) / a, -u, -v + 1);
  return s;
}

// ---------------------------------------------------------------------------------------------
// Non-generic series

enum class Variant { a, b };

inline bool is_one(const WeightPair& w, long r, long s) { return (w.alpha.pow(r) * w.beta.pow(s)).is_one(); }

/// True iff no divisor d > 1 of gcd(r, s) gives alpha^{r/d} beta^{s/d} = 1.
inline bool minimality_check(long r, long s, const WeightPair& w) {
  if (!is_one(w, r, s)) throw validation_error(violation::precondition, "alpha^r beta^s != 1");
  long g = std::gcd(r, s);
  for (long d = 2; d <= g; ++d)
    if (g % d == 0 && is_one(w, r / d, s / d)) return false;
  return true;
}

namespace detail {

inline int neg_one_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

inline WeightPair weights_for_rule(WeightRule rule, const IntegralParams& p) {
  const long r = p.r, s = p.s, u = p.u, v = p.v;
  switch (rule) {
    case WeightRule::D1: return {{1, -4 * s, 1}, {1, 4 * r, 1}};
    case WeightRule::D2G1a: return {{1, -2 * s, 1}, {1, 2 * r, 1}};
    case WeightRule::D2G1b: return {{neg_one_pow(s), -2 * s, 1}, {neg_one_pow(r), 2 * r, 1}};
    case WeightRule::D2G2: return {{neg_one_pow(v), -2 * s, 1}, {neg_one_pow(u), 2 * r, 1}};
    case WeightRule::D4G1a: return {{1, -s, 1}, {1, r, 1}};
    case WeightRule::D4G1b: return {{neg_one_pow(s), -s, 1}, {neg_one_pow(r), r, 1}};
    case WeightRule::D4G2a: return {{-1, -s, 1}, {neg_one_pow(r / 2 + 1), r, 1}};
    case WeightRule::D4G2b: return {{neg_one_pow(s / 2 + 1), -s, 1}, {-1, r, 1}};
    case WeightRule::none: break;
  }
  throw validation_error(violation::precondition, "series has no weight rule");
}

inline WeightRule rule_for(long D, long G, Variant variant) {
  if (D == 1 && G == 1) return WeightRule::D1;
  if (D == 2 && G == 1) return variant == Variant::a ? WeightRule::D2G1a : WeightRule::D2G1b;
  if (D == 2 && G == 2) return WeightRule::D2G2;
  if (D == 4 && G == 1) return variant == Variant::a ? WeightRule::D4G1a : WeightRule::D4G1b;
  if (D == 4 && G == 2) return variant == Variant::a ? WeightRule::D4G2a : WeightRule::D4G2b;
  if (D == 4 && G == 4)
    throw validation_error(violation::no_solutions, "D = 4 with G = 4 admits no minimal weight pair");
  throw validation_error(violation::signature_mismatch,
                         "no series with |D| = " + std::to_string(D) + ", G = " + std::to_string(G));
}

inline void check_params(const IntegralParams& p) {
  if (p.r == 0 && p.s == 0) throw validation_error(violation::zero_rs, "(r,s) must not be (0,0)");
  if (p.discriminant() == 0) throw validation_error(violation::zero_discriminant, "D = rv - su must be nonzero");
}

}  // namespace detail

/// Weight pair for |D| in {1,2,4} with the given variant; (r, s) is sign-normalised so that D > 0.
inline WeightPair weight_constants_for(const IntegralParams& params, Variant variant = Variant::a) {
  detail::check_params(params);
  IntegralParams p = params.canonical();
  long D = p.discriminant(), G = p.gcd_rs();
  WeightRule rule = detail::rule_for(D, G, variant);
  if (rule == WeightRule::D4G2a || rule == WeightRule::D4G2b)
    if (p.u % 2 != 0 || p.v % 2 != 0)
      throw validation_error(violation::parity, "D = 4, G = 2 requires both u and v even");
  return detail::weights_for_rule(rule, p);
}

inline WeightPair weight_constants_for(SeriesId id, const IntegralParams& params) {
  const SeriesInfo& info = series_info(id);
  if (info.family != Family::nongeneric)
    throw validation_error(violation::precondition, info.name + " has no integral parameters");
  detail::check_params(params);
  IntegralParams p = params.canonical();
  long D = p.discriminant(), G = p.gcd_rs();
  if (D == 4 && G == 4)
    throw validation_error(violation::no_solutions, "D = 4 with G = 4 admits no minimal weight pair");
  if (D != info.D || G != info.G)
    throw validation_error(violation::signature_mismatch,
                           info.name + " needs |D| = " + std::to_string(info.D) + ", G = " + std::to_string(info.G) +
                               " but parameters give |D| = " + std::to_string(D) + ", G = " + std::to_string(G));
  if (info.rule == WeightRule::D4G2a || info.rule == WeightRule::D4G2b)
    if (p.u % 2 != 0 || p.v % 2 != 0)
      throw validation_error(violation::parity, "D = 4, G = 2 requires both u and v even");
  return detail::weights_for_rule(info.rule, p);
}

/// Structural images built from coefficient tables A_w (e side) and C_t (f side).
inline SymmetryAction structural_action(const IntegralParams& params, const WeightPair& w,
                                        const std::map<long, QScalar>& A, const std::map<long, QScalar>& C) {
  IntegralParams p = params.canonical();
  const long r = p.r, s = p.s, u = p.u, v = p.v, M = p.M;
  QScalar al = w.alpha.to_scalar(), be = w.beta.to_scalar();
  QScalar al_inv = al.inverse(), be_inv = be.inverse();
  std::vector<LaurentPoly::Term> ex, ey, fx, fy;
  for (const auto& [k, a] : A) {
    long W = M + k;
    long i = u + W * r, j = v + W * s;
    ex.push_back({{i + 1, j}, a * (QScalar(1) - al * QScalar::q(static_cast<int>(j)))});
    ey.push_back({{i, j + 1}, a * (QScalar::q(static_cast<int>(i)) - be)});
  }
  for (const auto& [k, c] : C) {
    long T = -M + k;
    long i = -u + T * r, j = -v + T * s;
    fx.push_back({{i + 1, j}, c * (al_inv - QScalar::q(static_cast<int>(j)))});
    fy.push_back({{i, j + 1}, c * (be_inv * QScalar::q(static_cast<int>(i)) - QScalar(1))});
  }
  SymmetryAction out;
  out.k_spec = AutomorphismSpec::diagonal(al, be);
  out.e_x = LaurentPoly::from_terms(std::move(ex));
  out.e_y = LaurentPoly::from_terms(std::move(ey));
  out.f_x = LaurentPoly::from_terms(std::move(fx));
  out.f_y = LaurentPoly::from_terms(std::move(fy));
  return out;
}

/// Evaluated coefficient tables of a series instance.
struct SeriesCoefficients {
  std::map<long, QScalar> A;
  std::map<long, QScalar> C;
};

inline SeriesCoefficients series_coefficients(SeriesId id, const IntegralParams& params, const CoefficientSet& coeffs) {
  const SeriesInfo& info = series_info(id);
  for (const auto& [name, value] : coeffs) {
    auto it = std::find_if(info.coefficients.begin(), info.coefficients.end(),
                           [&](const CoefficientSpec& c) { return c.name == name; });
    if (it == info.coefficients.end())
      throw validation_error(violation::coefficient_arity, info.name + " has no coefficient '" + name + "'");
  }
  for (const auto& spec : info.coefficients) {
    auto it = coeffs.find(spec.name);
    if (it == coeffs.end())
      throw validation_error(violation::coefficient_arity, info.name + " needs coefficient '" + spec.name + "'");
    if (spec.nonzero && it->second.is_zero())
      throw validation_error(violation::zero_coefficient, info.name + " needs " + spec.name + " != 0");
  }
  IntEnv env = params.canonical().env();
  ScalarLookup lookup = [&](std::string_view name) -> std::optional<QScalar> {
    if (auto it = coeffs.find(name); it != coeffs.end()) return it->second;
    return std::nullopt;
  };
  SeriesCoefficients out;
  for (const auto& [w, f] : info.e_terms) out.A[w] = parse_scalar(f, env, lookup, false);
  for (const auto& [t, f] : info.f_terms) out.C[t] = parse_scalar(f, env, lookup, false);
  return out;
}

inline SymmetryAction make_nongeneric(SeriesId id, const IntegralParams& params, const CoefficientSet& coeffs) {
  const SeriesInfo& info = series_info(id);
  if (info.family != Family::nongeneric)
    throw validation_error(violation::signature_mismatch, info.name + " is not a non-generic series");
  if ((params.L >= 0 && params.L != info.L) || (params.N >= 0 && params.N != info.N))
    throw validation_error(violation::signature_mismatch,
                           info.name + " has L = " + std::to_string(info.L) + ", N = " + std::to_string(info.N));
  WeightPair w = weight_constants_for(id, params);
  IntegralParams p = params.canonical();
  if (!minimality_check(p.r, p.s, w))
    throw validation_error(violation::minimality, "(r,s) is not minimal for the weight pair");
  if (!(w.alpha.pow(p.u) * w.beta.pow(p.v) == WeightConstant::q_power(2)))
    throw validation_error(violation::weight_relation, "alpha^u beta^v != q^2");
  SeriesCoefficients sc = series_coefficients(id, params, coeffs);
  return structural_action(params, w, sc.A, sc.C);
}

}  // namespace qsym
