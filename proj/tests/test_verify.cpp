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

#include <catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace qsym;

namespace {

WeightConstant wq(long k, int sign = 1) { return WeightConstant::q_power(k, sign); }

SymmetryAction scaled_e(SymmetryAction s, const QScalar& c) {
  s.e_x = c * s.e_x;
  s.e_y = c * s.e_y;
  return s;
}

const CheckEntry* find_entry(const VerificationReport& r, std::string_view check, std::string_view target) {
  for (const auto& e : r.entries)
    if (e.check == check && e.target == target) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("type II actions verify and leave the polynomial subalgebra invariant", "[verify]") {
  for (int a : {1, -1})
    for (int b : {1, -1}) {
      auto s = make_type2(a, b);
      auto rep = verify_module_algebra(s);
      CHECK(rep.pass());
      CHECK(rep.first_failure() == nullptr);
      CHECK(subalgebra_invariance(s));
      CHECK(check_lemma_ratios(s).pass());
      CHECK_THROWS_AS(compute_extreme_indices(s, {1, 0, 0, 1}), trivial_action);
    }
}

TEST_CASE("type I and generic actions move x outside the polynomial subalgebra", "[verify]") {
  auto t1 = make_type1(wq(2), wq(-1, -1));
  CHECK(verify_module_algebra(t1).pass());
  CHECK_FALSE(subalgebra_invariance(t1));
  auto g = make_generic(1, 0, wq(2), WeightConstant{1, 0, 3}, QScalar::symbol("a"));
  CHECK(verify_module_algebra(g).pass());
  CHECK_FALSE(subalgebra_invariance(g));
}

TEST_CASE("doubling e on a generic action breaks ef - fe on x", "[verify]") {
  auto g = make_generic(1, 0, wq(2), WeightConstant{1, 0, 3}, QScalar::symbol("a"));
  auto rep = verify_module_algebra(scaled_e(g, 2));
  CHECK_FALSE(rep.pass());
  const auto* ent = find_entry(rep, "ef - fe", "x");
  REQUIRE(ent);
  CHECK_FALSE(ent->residual.is_zero());
  // the k-relations and Leibniz rules are homogeneous in e and still hold
  CHECK(find_entry(rep, "ke - q^2 ek", "x")->residual.is_zero());
  CHECK(find_entry(rep, "leibniz e", "panel")->failures == 0);
}

TEST_CASE("ratio check detects a doubled e(y)", "[verify]") {
  IntegralParams p{1, 2, 1, 3};
  auto s = make_nongeneric(SeriesId::D1G1E3F3, p, symbolic_coefficients(SeriesId::D1G1E3F3));
  REQUIRE(check_lemma_ratios(s).pass());
  s.e_y = QScalar(2) * s.e_y;
  auto rep = check_lemma_ratios(s);
  CHECK_FALSE(rep.pass());
  CHECK(rep.first_failure()->check == "ratio e");
  SymmetryAction empty;
  empty.k_spec = AutomorphismSpec::diagonal(QScalar::q(2), QScalar::q(-3));
  CHECK(check_lemma_ratios(empty).pass());
}

TEST_CASE("extreme indices on the worked examples", "[verify]") {
  IntegralParams p{0, 1, -1, 0};
  auto s = make_nongeneric(SeriesId::D1G1E1F3, p, symbolic_coefficients(SeriesId::D1G1E1F3));
  auto r = compute_extreme_indices(s, p);
  CHECK(r.minind_e == 0);
  CHECK(r.maxind_e == 0);
  CHECK(r.minind_f == 0);
  CHECK(r.maxind_f == 4);
  CHECK(r.min_sum_zero);
  CHECK_FALSE(r.max_sum_zero);
  CHECK(r.other_sum * std::abs(p.discriminant()) == 4);
  CHECK(r.law_holds);

  IntegralParams p2{1, 1, -1, 1};
  REQUIRE(p2.discriminant() == 2);
  auto s2 = make_nongeneric(SeriesId::D2G1E2F2a, p2, symbolic_coefficients(SeriesId::D2G1E2F2a));
  const auto& info = series_info(SeriesId::D2G1E2F2a);
  CHECK(info.N == 2);
  CHECK(info.L == 1);
  auto r2 = compute_extreme_indices(s2, p2);
  CHECK(r2.law_holds);
  CHECK(r2.other_sum == 2);
  CHECK(r2.other_sum * 2 == 4);
}

TEST_CASE("closed ef - fe agrees with the recursion", "[verify][property]") {
  for (SeriesId id : {SeriesId::D1G1E3F3, SeriesId::D2G2E2F2, SeriesId::D4G1E2F1b, SeriesId::D1G1E2F4}) {
    for (const IntegralParams& p : {IntegralParams{1, 2, 1, 3, -1}, IntegralParams{2, 2, 1, 2, 1},
                                    IntegralParams{1, 1, -1, 3, 0}, IntegralParams{0, 1, -1, 0, 2}}) {
      SymmetryAction s;
      try {
        s = make_nongeneric(id, p, symbolic_coefficients(id));
      } catch (const validation_error&) {
        continue;
      }
      auto [cx, cy] = ef_fe_closed(s, p);
      CHECK(cx == act_word({Generator::e, Generator::f}, LaurentPoly::x(), s) -
                      act_word({Generator::f, Generator::e}, LaurentPoly::x(), s));
      CHECK(cy == act_word({Generator::e, Generator::f}, LaurentPoly::y(), s) -
                      act_word({Generator::f, Generator::e}, LaurentPoly::y(), s));
      CHECK(structural_data(s, p).A.size() <= 4);
    }
  }
}

TEST_CASE("structural data rejects terms off the progression", "[verify]") {
  IntegralParams p{1, 2, 1, 3};
  auto s = make_nongeneric(SeriesId::D1G1E3F3, p, symbolic_coefficients(SeriesId::D1G1E3F3));
  s.e_x = s.e_x + LaurentPoly::monomial(QScalar(1), 7, -5);
  try {
    structural_data(s, p);
    FAIL("expected a rejection");
  } catch (const validation_error& e) {
    CHECK(e.kind() == violation::precondition);
  }
}

TEST_CASE("conjugation", "[verify][property]") {
  IntegralParams p{1, 2, 1, 3, -1};
  auto s = make_nongeneric(SeriesId::D1G1E3F3, p, symbolic_coefficients(SeriesId::D1G1E3F3));
  auto id = conjugate(s, AutomorphismSpec{});
  CHECK(id.k_spec == s.k_spec);
  CHECK(id.e_x == s.e_x);
  CHECK(id.e_y == s.e_y);
  CHECK(id.f_x == s.f_x);
  CHECK(id.f_y == s.f_y);

  std::mt19937 rng(9);
  VerifyOptions quick{1, true};
  for (int trial = 0; trial < 3; ++trial) {
    SL2Z sigma = qsym::testing::random_sl2z(rng);
    AutomorphismSpec phi{sigma, QScalar::symbol("m"), QScalar::symbol("n")};
    auto c = conjugate(s, phi);
    CHECK(verify_module_algebra(c, quick).pass());
    // weights move by sigma
    CHECK(c.weights() == sl2z_weight_action(sigma, *s.weights()));
    auto cp = conjugate_params(p, sigma);
    auto iv = invariants(cp);
    CHECK(std::abs(iv.D) == 1);
    CHECK(iv.G == 1);
    auto [cx, cy] = ef_fe_closed(c, cp);
    CHECK(cx == act_word({Generator::e, Generator::f}, LaurentPoly::x(), c) -
                    act_word({Generator::f, Generator::e}, LaurentPoly::x(), c));
    (void)cy;
  }
}

TEST_CASE("type I weights reduce to the unit pair", "[verify]") {
  // alpha = q^2, beta = q^-4 ; mu = q, nu = q^-2 gives the same class as (1, 1) up to rescaling
  auto s = make_type1(wq(2), wq(-4));
  AutomorphismSpec phi = AutomorphismSpec::diagonal(QScalar::q(1), QScalar::q(-2));
  auto c = conjugate(s, phi);
  auto unit = make_type1(wq(0), wq(0));
  CHECK(c.k_spec == unit.k_spec);
  CHECK(verify_module_algebra(c).pass());
}

TEST_CASE("orbit_check", "[verify]") {
  auto r = orbit_check({wq(-1, -1), wq(0, -1)}, {wq(-1), wq(0, -1)});
  CHECK(r.verdict == OrbitVerdict::yes);
  REQUIRE(r.witness);
  CHECK(r.witness->matrix() == IntMatrix2{1, 1, 0, 1});

  auto same = orbit_check({wq(3), wq(-2, -1)}, {wq(3), wq(-2, -1)});
  CHECK(same.verdict == OrbitVerdict::yes);
  REQUIRE(same.witness);
  CHECK(sl2z_weight_action(*same.witness, {wq(3), wq(-2, -1)}) == WeightPair{wq(3), wq(-2, -1)});

  // G = 1 series with the sign-twisted weights are not related
  for (auto [rr, ss] : {std::pair{1L, 2L}, {3L, 1L}, {2L, 3L}}) {
    WeightPair w1{wq(-ss), wq(rr)};
    WeightPair w2{wq(-ss, (ss % 2) ? -1 : 1), wq(rr, (rr % 2) ? -1 : 1)};
    auto v = orbit_check(w1, w2);
    CHECK(v.verdict == OrbitVerdict::no);
  }
  CHECK(orbit_check({wq(1), wq(0)}, {wq(2), wq(0)}).verdict == OrbitVerdict::no);
  CHECK(orbit_check({wq(0, -1), wq(0)}, {wq(0), wq(0, -1)}).verdict == OrbitVerdict::yes);
  CHECK(orbit_check({wq(0, -1), wq(0)}, {wq(0), wq(0)}).verdict == OrbitVerdict::no);
  CHECK(orbit_check({wq(-1, -1), wq(0, -1)}, {wq(-1), wq(0, -1)}, 0).verdict == OrbitVerdict::unknown);
  try {
    orbit_check({WeightConstant{1, 0, 2}, wq(0)}, {wq(0), wq(0)});
    FAIL("expected a rejection");
  } catch (const validation_error& e) {
    CHECK(e.kind() == violation::rational_part);
  }
}

TEST_CASE("orbit witnesses are correct on random pairs", "[verify][property]") {
  std::mt19937 rng(123);
  std::uniform_int_distribution<long> ex(-6, 6);
  std::uniform_int_distribution<int> sg(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    WeightPair w{WeightConstant{sg(rng) ? 1 : -1, ex(rng), 1}, WeightConstant{sg(rng) ? 1 : -1, ex(rng), 1}};
    SL2Z s = qsym::testing::random_sl2z(rng);
    WeightPair img = sl2z_weight_action(s, w);
    auto res = orbit_check(w, img);
    REQUIRE(res.verdict == OrbitVerdict::yes);
    CHECK(sl2z_weight_action(*res.witness, w) == img);
    // flip one sign; either an honest no or a witness that really works
    WeightPair other = img;
    other.alpha.sign = -other.alpha.sign;
    auto r2 = orbit_check(w, other);
    if (r2.verdict == OrbitVerdict::yes) CHECK(sl2z_weight_action(*r2.witness, w) == other);
  }
}
