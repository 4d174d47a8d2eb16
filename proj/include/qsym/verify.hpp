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

#include "action.hpp"
#include "catalog.hpp"
#include "errors.hpp"
#include "qplane.hpp"
#include "scalar.hpp"

namespace qsym {

struct CheckEntry {
  std::string check;
  std::string target;
  LaurentPoly residual;
  long failures = 0;  // number of failing cases folded into this entry
};

struct VerificationReport {
  std::vector<CheckEntry> entries;

  bool pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const CheckEntry& e) { return e.residual.is_zero() && e.failures == 0; });
  }

  const CheckEntry* first_failure() const {
    for (const auto& e : entries)
      if (!e.residual.is_zero() || e.failures) return &e;
    return nullptr;
  }
};

struct VerifyOptions {
  long leibniz_range = 3;  // monomial exponents in [-range, range]
  bool leibniz = true;
};

namespace detail {

inline std::string monomial_name(long i, long j) {
  if (i == 0 && j == 0) return "1";
  std::string s;
  if (i != 0) s += i == 1 ? "x" : "x^" + std::to_string(i);
  if (j != 0) s += (s.empty() ? "" : "*") + std::string(j == 1 ? "y" : "y^" + std::to_string(j));
  return s;
}

}  // namespace detail

/*
 * The module-algebra axioms as residuals: Hopf relations applied to x, y, x^-1, y^-1, the unit
 * conditions, and twisted Leibniz rules on all pairs of monomials with bounded exponents.
 */
inline VerificationReport verify_module_algebra(const SymmetryAction& s, const VerifyOptions& opt = {}) {
  ActionEngine eng(s);
  VerificationReport rep;
  const LaurentPoly gens[] = {LaurentPoly::x(), LaurentPoly::y(), LaurentPoly::x(-1), LaurentPoly::y(-1)};
  const char* names[] = {"x", "y", "x^-1", "y^-1"};
  const QScalar q2 = QScalar::q(2), qm2 = QScalar::q(-2);
  const QScalar kfac = (QScalar::q() - QScalar::q(-1)).inverse();

  for (int g = 0; g < 4; ++g) {
    const LaurentPoly& p = gens[g];
    LaurentPoly kp = eng.apply(Generator::k, p), kip = eng.apply(Generator::k_inv, p);
    rep.entries.push_back({"k k^-1", names[g], eng.apply(Generator::k, kip) - p});
    rep.entries.push_back({"k^-1 k", names[g], eng.apply(Generator::k_inv, kp) - p});
  }
  for (int g = 0; g < 4; ++g) {
    const LaurentPoly& p = gens[g];
    LaurentPoly kp = eng.apply(Generator::k, p);
    LaurentPoly ep = eng.apply(Generator::e, p), fp = eng.apply(Generator::f, p);
    rep.entries.push_back({"ke - q^2 ek", names[g], eng.apply(Generator::k, ep) - q2 * eng.apply(Generator::e, kp)});
    rep.entries.push_back({"kf - q^-2 fk", names[g], eng.apply(Generator::k, fp) - qm2 * eng.apply(Generator::f, kp)});
  }
  for (int g = 0; g < 4; ++g) {
    const LaurentPoly& p = gens[g];
    LaurentPoly lhs = eng.apply(Generator::e, eng.apply(Generator::f, p)) - eng.apply(Generator::f, eng.apply(Generator::e, p));
    LaurentPoly rhs = kfac * (eng.apply(Generator::k, p) - eng.apply(Generator::k_inv, p));
    rep.entries.push_back({"ef - fe", names[g], lhs - rhs});
  }
  const LaurentPoly one = LaurentPoly::one();
  rep.entries.push_back({"unit e", "1", eng.apply(Generator::e, one)});
  rep.entries.push_back({"unit f", "1", eng.apply(Generator::f, one)});
  rep.entries.push_back({"unit k", "1", eng.apply(Generator::k, one) - one});

  if (opt.leibniz) {
    CheckEntry le{"leibniz e", "panel", {}, 0}, lf{"leibniz f", "panel", {}, 0}, lk{"leibniz k", "panel", {}, 0};
    const long R = opt.leibniz_range;
    for (long a = -R; a <= R; ++a)
      for (long b = -R; b <= R; ++b)
        for (long c = -R; c <= R; ++c)
          for (long d = -R; d <= R; ++d) {
            LaurentPoly u = LaurentPoly::x(a) * LaurentPoly::y(b);
            LaurentPoly v = LaurentPoly::x(c) * LaurentPoly::y(d);
            LaurentPoly uv = u * v;
            LaurentPoly kv = eng.apply(Generator::k, v), ku = eng.apply(Generator::k, u);
            LaurentPoly ev = eng.apply(Generator::e, v), eu = eng.apply(Generator::e, u);
            LaurentPoly fv = eng.apply(Generator::f, v), fu = eng.apply(Generator::f, u);
            std::string where = detail::monomial_name(a, b) + " | " + detail::monomial_name(c, d);
            auto record = [&](CheckEntry& entry, LaurentPoly res) {
              if (res.is_zero()) return;
              if (entry.failures++ == 0) {
                entry.residual = std::move(res);
                entry.target = where;
              }
            };
            record(le, eng.apply(Generator::e, uv) - (u * ev + eu * kv));
            record(lf, eng.apply(Generator::f, uv) - (fu * v + eng.apply(Generator::k_inv, u) * fv));
            record(lk, eng.apply(Generator::k, uv) - ku * kv);
          }
    rep.entries.push_back(std::move(le));
    rep.entries.push_back(std::move(lf));
    rep.entries.push_back(std::move(lk));
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------
// Structural data of series instances

/// Absolute progression indices W (e side) and T (f side) with their recovered coefficients.
struct StructuralData {
  std::map<long, QScalar> A;  // keyed by W, e(x) term x^{u+1+Wr} y^{v+Ws}
  std::map<long, QScalar> C;  // keyed by T, f(x) term x^{-u+1+Tr} y^{-v+Ts}
};

namespace detail {

// Index W with (di, dj) = W (r, s), if any.
inline std::optional<long> progression_index(long di, long dj, long r, long s) {
  if (r != 0) {
    if (di % r != 0) return std::nullopt;
    long w = di / r;
    return dj == w * s ? std::optional<long>(w) : std::nullopt;
  }
  if (di != 0 || dj % s != 0) return std::nullopt;
  return dj / s;
}

}  // namespace detail

/// Reads A_W and C_T back from the images, dividing out whichever structural factor is nonzero.
inline StructuralData structural_data(const SymmetryAction& s, const IntegralParams& params) {
  if (!s.weight_type()) throw validation_error(violation::not_weight_type, "structural data needs a diagonal k");
  IntegralParams p = params.canonical();
  const QScalar& al = s.k_spec.mu;
  const QScalar& be = s.k_spec.nu;
  StructuralData out;
  auto fail = [](const std::string& what) {
    throw validation_error(violation::precondition, "image term " + what + " is off the progression of the parameters");
  };
  auto put = [](std::map<long, QScalar>& m, long k, const QScalar& c) {
    auto it = m.find(k);
    if (it == m.end()) m.emplace(k, c);
  };
  for (const auto& t : s.e_x.terms()) {
    auto W = detail::progression_index(t.e.i - (p.u + 1), t.e.j - p.v, p.r, p.s);
    if (!W) fail("of e(x)");
    QScalar fac = QScalar(1) - al * QScalar::q(static_cast<int>(t.e.j));
    if (!fac.is_zero()) put(out.A, *W, t.c / fac);
  }
  for (const auto& t : s.e_y.terms()) {
    auto W = detail::progression_index(t.e.i - p.u, t.e.j - (p.v + 1), p.r, p.s);
    if (!W) fail("of e(y)");
    QScalar fac = QScalar::q(static_cast<int>(t.e.i)) - be;
    if (!fac.is_zero()) put(out.A, *W, t.c / fac);
  }
  for (const auto& t : s.f_x.terms()) {
    auto T = detail::progression_index(t.e.i - (1 - p.u), t.e.j + p.v, p.r, p.s);
    if (!T) fail("of f(x)");
    QScalar fac = al.inverse() - QScalar::q(static_cast<int>(t.e.j));
    if (!fac.is_zero()) put(out.C, *T, t.c / fac);
  }
  for (const auto& t : s.f_y.terms()) {
    auto T = detail::progression_index(t.e.i + p.u, t.e.j - (1 - p.v), p.r, p.s);
    if (!T) fail("of f(y)");
    QScalar fac = be.inverse() * QScalar::q(static_cast<int>(t.e.i)) - QScalar(1);
    if (!fac.is_zero()) put(out.C, *T, t.c / fac);
  }
  return out;
}

/// Closed double-sum form of (ef - fe)(x) and (ef - fe)(y) for a structural instance.
inline std::pair<LaurentPoly, LaurentPoly> ef_fe_closed(const SymmetryAction& s, const IntegralParams& params) {
  StructuralData sd = structural_data(s, params);
  IntegralParams p = params.canonical();
  const long D = p.discriminant();
  const QScalar& al = s.k_spec.mu;
  const QScalar& be = s.k_spec.nu;
  std::vector<LaurentPoly::Term> xs, ys;
  for (const auto& [W, a] : sd.A)
    for (const auto& [T, c] : sd.C) {
      const long i = W + T;
      QScalar pre = (a * c).times_zeta(static_cast<int>(2 * (p.u + W * p.r) * (-p.v + T * p.s)));
      QScalar qd = QScalar::q(static_cast<int>(-2 + i * D));
      xs.push_back({{1 + i * p.r, i * p.s},
                    pre * (al * QScalar::q(static_cast<int>(i * p.s)) - al.inverse()) * (qd - QScalar(1))});
      ys.push_back({{i * p.r, 1 + i * p.s},
                    pre * (be.inverse() * QScalar::q(static_cast<int>(i * p.r)) - be) * (QScalar(1) - qd)});
    }
  return {LaurentPoly::from_terms(std::move(xs)), LaurentPoly::from_terms(std::move(ys))};
}

struct ExtremeIndexReport {
  std::optional<long> minind_e, maxind_e, minind_f, maxind_f;  // relative to M (e) and -M (f)
  bool min_sum_zero = false;
  bool max_sum_zero = false;
  bool law_holds = false;  // exactly one extreme sum vanishes and the other, i, has iD in {2, 4}
  long other_sum = 0;
};

inline ExtremeIndexReport compute_extreme_indices(const SymmetryAction& s, const IntegralParams& params) {
  bool e_zero = s.e_x.is_zero() && s.e_y.is_zero();
  bool f_zero = s.f_x.is_zero() && s.f_y.is_zero();
  if (e_zero && f_zero) throw trivial_action();
  StructuralData sd = structural_data(s, params);
  const long M = params.M;
  ExtremeIndexReport rep;
  if (!sd.A.empty()) {
    rep.minind_e = sd.A.begin()->first - M;
    rep.maxind_e = sd.A.rbegin()->first - M;
  }
  if (!sd.C.empty()) {
    rep.minind_f = sd.C.begin()->first + M;
    rep.maxind_f = sd.C.rbegin()->first + M;
  }
  if (rep.minind_e && rep.minind_f) {
    const long D = params.canonical().discriminant();
    long lo = *rep.minind_e + *rep.minind_f, hi = *rep.maxind_e + *rep.maxind_f;
    rep.min_sum_zero = lo == 0;
    rep.max_sum_zero = hi == 0;
    if (rep.min_sum_zero != rep.max_sum_zero) {
      rep.other_sum = rep.min_sum_zero ? hi : lo;
      long iD = rep.other_sum * D;
      rep.law_holds = iD == 2 || iD == 4 || iD == -2 || iD == -4;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------------------------

/// Psi^{-1} o pi(.) o Psi with Psi = phi.
inline SymmetryAction conjugate(const SymmetryAction& s, const AutomorphismSpec& phi) {
  ActionEngine eng(s);
  AutomorphismSpec inv = automorphism_invert(phi);
  SymmetryAction out;
  out.k_spec = automorphism_compose(inv, automorphism_compose(s.k_spec, phi));
  LaurentPoly px = phi.image_x(), py = phi.image_y();
  out.e_x = apply_automorphism(inv, eng.apply(Generator::e, px));
  out.e_y = apply_automorphism(inv, eng.apply(Generator::e, py));
  out.f_x = apply_automorphism(inv, eng.apply(Generator::f, px));
  out.f_y = apply_automorphism(inv, eng.apply(Generator::f, py));
  return out;
}

/// Phi' = Phi sigma^{-1}, the integral parameters of the conjugated action.
inline IntegralParams conjugate_params(const IntegralParams& p, const SL2Z& sigma) {
  IntMatrix2 phi{p.r, p.s, p.u, p.v};
  IntMatrix2 res = phi * sigma.inverse().matrix();
  IntegralParams out = p;
  out.r = res.a;
  out.s = res.b;
  out.u = res.c;
  out.v = res.d;
  return out;
}

enum class OrbitVerdict { yes, no, unknown };

inline const char* to_string(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::yes: return "yes";
    case OrbitVerdict::no: return "no";
    case OrbitVerdict::unknown: return "unknown";
  }
  return "?";
}

struct OrbitResult {
  OrbitVerdict verdict;
  std::optional<SL2Z> witness;  // sigma with sigma(w1) = w2
  std::string reason;
};

namespace detail {

// (g, x, y) with a x + b y = g = gcd(a, b) >= 0.
inline std::tuple<long, long, long> ext_gcd(long a, long b) {
  long old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    long qt = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - qt * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - qt * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - qt * t);
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

// sigma in SL(2,Z) with sigma (g, 0)^T = (a, b)^T.
inline SL2Z column_basis(long a, long b, long g) {
  auto [gg, x, y] = ext_gcd(a / g, b / g);
  (void)gg;
  return SL2Z(a / g, -y, b / g, x);
}

inline bool signs_match(const SL2Z& s, const WeightPair& w1, const WeightPair& w2) {
  WeightPair img = sl2z_weight_action(s, w1);
  return img.alpha.sign == w2.alpha.sign && img.beta.sign == w2.beta.sign;
}

}  // namespace detail

/*
 * Decides whether sigma(w1) = w2 for some sigma in SL(2,Z).  Zeta exponents must correspond under
 * an integer map (gcd test, then the coset sigma_B (1 t; 0 1) sigma_A^{-1}); signs transform
 * through sigma mod 2, so only the parity of t matters.  t is scanned in the order 0, 1, -1, ...
 * up to `bound`; both parities seen means the answer is definite.
 */
inline OrbitResult orbit_check(const WeightPair& w1, const WeightPair& w2, long bound = 64) {
  for (const auto* w : {&w1.alpha, &w1.beta, &w2.alpha, &w2.beta})
    if (w->rational_part != 1)
      throw validation_error(violation::rational_part, "orbit_check needs weight constants of the form +-zeta^k");
  const long a = w1.alpha.zeta_exponent, b = w1.beta.zeta_exponent;
  const long a2 = w2.alpha.zeta_exponent, b2 = w2.beta.zeta_exponent;
  if (a == 0 && b == 0) {
    if (a2 != 0 || b2 != 0) return {OrbitVerdict::no, std::nullopt, "zeta exponent vectors differ in gcd"};
    // SL(2,Z) maps onto SL(2,F2); these six lifts cover it.
    static const long lifts[6][4] = {{1, 0, 0, 1}, {1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, -1, 0}, {0, 1, -1, -1}, {1, 1, -1, 0}};
    for (const auto& m : lifts) {
      SL2Z s(m[0], m[1], m[2], m[3]);
      if (detail::signs_match(s, w1, w2)) return {OrbitVerdict::yes, s, "sign vectors related mod 2"};
    }
    return {OrbitVerdict::no, std::nullopt, "sign vectors lie in different SL(2,F2)-orbits"};
  }
  const long g = std::gcd(a, b), g2 = std::gcd(a2, b2);
  if (g != g2) return {OrbitVerdict::no, std::nullopt, "gcd of zeta exponents differs"};
  SL2Z sa = detail::column_basis(a, b, g), sb = detail::column_basis(a2, b2, g);
  SL2Z sa_inv = sa.inverse();
  bool even_seen = false, odd_seen = false;
  for (long k = 0; k <= 2 * bound; ++k) {
    long t = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    if (std::abs(t) > bound) break;
    SL2Z s = sb * SL2Z(1, t, 0, 1) * sa_inv;
    if (detail::signs_match(s, w1, w2)) return {OrbitVerdict::yes, s, "witness found at t = " + std::to_string(t)};
    (t % 2 == 0 ? even_seen : odd_seen) = true;
    if (even_seen && odd_seen) return {OrbitVerdict::no, std::nullopt, "no sign-compatible solution (period 2 in t)"};
  }
  return {OrbitVerdict::unknown, std::nullopt, "search bound exhausted"};
}

/// Linkage between e(x)/e(y) and between f(x)/f(y) coefficients forced by yx = qxy.
inline VerificationReport check_lemma_ratios(const SymmetryAction& s) {
  if (!s.weight_type()) throw validation_error(violation::not_weight_type, "ratio relations need a diagonal k");
  const QScalar& al = s.k_spec.mu;
  const QScalar& be = s.k_spec.nu;
  const QScalar al_inv = al.inverse(), be_inv = be.inverse();
  std::vector<Exp2> e_keys, f_keys;  // the (i, j) of each relation
  for (const auto& t : s.e_x.terms()) e_keys.push_back({t.e.i - 1, t.e.j});
  for (const auto& t : s.e_y.terms()) e_keys.push_back({t.e.i, t.e.j - 1});
  for (const auto& t : s.f_x.terms()) f_keys.push_back({t.e.i - 1, t.e.j});
  for (const auto& t : s.f_y.terms()) f_keys.push_back({t.e.i, t.e.j - 1});
  std::vector<LaurentPoly::Term> e_res, f_res;
  for (const auto& k : e_keys) {
    QScalar a = s.e_x.coeff(k.i + 1, k.j), b = s.e_y.coeff(k.i, k.j + 1);
    e_res.push_back({k, a * (QScalar::q(static_cast<int>(k.i)) - be) - b * (QScalar(1) - al * QScalar::q(static_cast<int>(k.j)))});
  }
  for (const auto& k : f_keys) {
    QScalar c = s.f_x.coeff(k.i + 1, k.j), d = s.f_y.coeff(k.i, k.j + 1);
    f_res.push_back({k, c * (QScalar(1) - be_inv * QScalar::q(static_cast<int>(k.i))) -
                            d * (QScalar::q(static_cast<int>(k.j)) - al_inv)});
  }
  // Duplicate keys carry identical residuals; keep one of each.
  auto dedupe = [](std::vector<LaurentPoly::Term> v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.e < y.e; });
    v.erase(std::unique(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.e == y.e; }), v.end());
    return LaurentPoly::from_terms(std::move(v));
  };
  VerificationReport rep;
  rep.entries.push_back({"ratio e", "a_{i+1,j}(q^i - beta) - b_{i,j+1}(1 - alpha q^j)", dedupe(e_res)});
  rep.entries.push_back({"ratio f", "c_{i+1,j}(1 - beta^-1 q^i) - d_{i,j+1}(q^j - alpha^-1)", dedupe(f_res)});
  return rep;
}

/// True iff k, e and f send x and y into the polynomial subalgebra.
inline bool subalgebra_invariance(const SymmetryAction& s) {
  auto nonneg = [](const LaurentPoly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.e.i >= 0 && t.e.j >= 0; });
  };
  return nonneg(s.k_spec.image_x()) && nonneg(s.k_spec.image_y()) && nonneg(s.e_x) && nonneg(s.e_y) &&
         nonneg(s.f_x) && nonneg(s.f_y);
}

}  // namespace qsym
