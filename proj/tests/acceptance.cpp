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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include "qsym/cli.hpp"
#include "test_support.hpp"

using namespace qsym;
namespace fs = std::filesystem;

namespace {

struct Instance {
  SeriesId id;
  IntegralParams p;
  SymmetryAction s;
};

struct Tally {
  long checked = 0;
  std::vector<std::string> problems;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok && problems.size() < 8) problems.push_back(what);
    if (!ok && problems.size() == 8) problems.push_back("...");
  }
  bool ok() const { return problems.empty(); }
};

int failures = 0;

void report(int n, const std::string& title, const Tally& t, double seconds) {
  std::ostringstream line;
  line << (t.ok() ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << t.checked << " checks, "
       << static_cast<long>(seconds * 1000) << " ms)";
  std::cout << line.str() << "\n";
  for (const auto& p : t.problems) std::cout << "    " << p << "\n";
  std::cout.flush();
  if (!t.ok()) ++failures;
}

template <class F>
void criterion(int n, const std::string& title, F&& body) {
  Tally t;
  auto start = std::chrono::steady_clock::now();
  try {
    body(t);
  } catch (const std::exception& e) {
    t.expect(false, std::string("exception: ") + e.what());
  }
  std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
  report(n, title, t, el.count());
}

std::string label(const Instance& in) {
  std::ostringstream o;
  o << series_info(in.id).name << " (r,s,u,v,M)=(" << in.p.r << "," << in.p.s << "," << in.p.u << "," << in.p.v << ","
    << in.p.M << ")";
  return o.str();
}

// Distinct tuples in the box |r|,|s|,|u|,|v| <= 4, |M| <= 2 accepted by the series, drawn at random.
std::vector<Instance> sample_instances(SeriesId id, std::size_t want, std::mt19937& rng) {
  std::uniform_int_distribution<long> c(-4, 4), m(-2, 2);
  std::vector<Instance> out;
  std::set<std::array<long, 5>> seen;
  for (int draw = 0; draw < 400000 && out.size() < want; ++draw) {
    IntegralParams p{c(rng), c(rng), c(rng), c(rng), m(rng)};
    if (!seen.insert({p.r, p.s, p.u, p.v, p.M}).second) continue;
    try {
      out.push_back({id, p, make_nongeneric(id, p, symbolic_coefficients(id))});
    } catch (const validation_error&) {
    }
  }
  return out;
}

LaurentPoly ef_minus_fe(const SymmetryAction& s, const LaurentPoly& g) {
  return act_word({Generator::e, Generator::f}, g, s) - act_word({Generator::f, Generator::e}, g, s);
}

std::vector<fs::path> fixtures(const char* sub) {
  std::vector<fs::path> v;
  for (const auto& e : fs::directory_iterator(fs::path(QSYM_FIXTURES) / sub)) v.push_back(e.path());
  std::sort(v.begin(), v.end());
  return v;
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

WeightConstant wq(long k, int sign = 1) { return WeightConstant::q_power(k, sign); }

}  // namespace

int main() {
  std::mt19937 rng(20260101);
  std::vector<Instance> named, embedded;
  for (const auto& info : series_table()) {
    if (info.family != Family::nongeneric) continue;
    auto got = sample_instances(info.id, 5, rng);
    (info.embedded() ? embedded : named).insert((info.embedded() ? embedded : named).end(), got.begin(), got.end());
  }

  criterion(1, "every named series verifies on 5 symbolic parameter tuples", [&](Tally& t) {
    for (const auto& info : series_table()) {
      if (info.family != Family::nongeneric || info.embedded()) continue;
      long n = std::count_if(named.begin(), named.end(), [&](const Instance& in) { return in.id == info.id; });
      t.expect(n >= 5, info.name + ": only " + std::to_string(n) + " tuples found");
    }
    for (const auto& in : named) {
      auto rep = verify_module_algebra(in.s);
      const auto* f = rep.first_failure();
      t.expect(rep.pass(), label(in) + (f ? ": " + f->check + " on " + f->target : ""));
    }
  });

  std::vector<SymmetryAction> classical;
  criterion(2, "type I (5 pairs), type II (4), generic (5) verify", [&](Tally& t) {
    std::vector<WeightPair> t1 = {{wq(1), wq(0)}, {wq(2), wq(-1, -1)}, {wq(0, -1), wq(3)},
                                  {WeightConstant{1, 0, 2}, wq(-2)}, {WeightConstant{-1, 3, mpq_class(2, 3)}, wq(5)}};
    for (const auto& w : t1) classical.push_back(make_type1(w.alpha, w.beta));
    for (int a : {1, -1})
      for (int b : {1, -1}) classical.push_back(make_type2(a, b));
    QScalar a = QScalar::symbol("a");
    classical.push_back(make_generic(1, 0, wq(2), WeightConstant{1, 0, 3}, a));
    classical.push_back(make_generic(0, 1, WeightConstant{1, 0, 5}, wq(2), a));
    classical.push_back(make_generic(1, 1, WeightConstant{1, 2, 2}, WeightConstant{1, 2, mpq_class(1, 2)}, a));
    classical.push_back(make_generic(2, -1, WeightConstant{1, 2, 3}, WeightConstant{1, 0, 9}, a));
    classical.push_back(make_generic(-1, 1, WeightConstant{1, 0, 5}, WeightConstant{1, 4, 5}, QScalar(7)));
    classical.push_back(make_generic(1, 0, wq(2), WeightConstant{-1, 0, 7}, a));
    for (std::size_t i = 0; i < classical.size(); ++i) {
      auto rep = verify_module_algebra(classical[i]);
      t.expect(rep.pass(), "classical instance " + std::to_string(i));
    }
  });

  criterion(3, "embedded series verify and specialise term for term into their targets", [&](Tally& t) {
    for (const auto& info : series_table()) {
      if (!info.embedded()) continue;
      long n = 0;
      for (const auto& in : embedded) {
        if (in.id != info.id) continue;
        ++n;
        t.expect(verify_module_algebra(in.s).pass(), label(in) + " does not verify");
        CoefficientSet c = symbolic_coefficients(in.id);
        c[info.embedding->coefficient] = QScalar();
        auto target = make_nongeneric(info.embedding->target, in.p, c);
        bool same = target.k_spec == in.s.k_spec && target.e_x == in.s.e_x && target.e_y == in.s.e_y &&
                    target.f_x == in.s.f_x && target.f_y == in.s.f_y;
        t.expect(same, label(in) + " differs from " + series_info(info.embedding->target).name + " with " +
                           info.embedding->coefficient + " = 0");
      }
      t.expect(n >= 3, info.name + ": too few tuples");
    }
  });

  criterion(4, "doubling e with f fixed breaks ef - fe on every named series", [&](Tally& t) {
    for (const auto& info : series_table()) {
      if (info.family != Family::nongeneric || info.embedded()) continue;
      for (const auto& in : named) {
        if (in.id != info.id) continue;
        SymmetryAction s = in.s;
        s.e_x = QScalar(2) * s.e_x;
        s.e_y = QScalar(2) * s.e_y;
        LaurentPoly kfac_x = (QScalar::q() - QScalar::q(-1)).inverse() *
                             (act(Generator::k, LaurentPoly::x(), s) - act(Generator::k_inv, LaurentPoly::x(), s));
        LaurentPoly kfac_y = (QScalar::q() - QScalar::q(-1)).inverse() *
                             (act(Generator::k, LaurentPoly::y(), s) - act(Generator::k_inv, LaurentPoly::y(), s));
        bool broken = !(ef_minus_fe(s, LaurentPoly::x()) - kfac_x).is_zero() ||
                      !(ef_minus_fe(s, LaurentPoly::y()) - kfac_y).is_zero();
        t.expect(broken, label(in) + " still satisfies ef - fe");
        break;
      }
    }
  });

  criterion(5, "closed ef - fe and closed powers agree with the recursive engine", [&](Tally& t) {
    for (const auto& in : named) {
      auto [cx, cy] = ef_fe_closed(in.s, in.p);
      t.expect(cx == ef_minus_fe(in.s, LaurentPoly::x()), label(in) + ": x");
      t.expect(cy == ef_minus_fe(in.s, LaurentPoly::y()), label(in) + ": y");
    }
    for (std::size_t k = 0; k < 10; ++k) {
      const auto& in = named[(k * 7) % named.size()];
      for (long p = -6; p <= 6; ++p)
        for (Generator g : {Generator::e, Generator::f}) {
          t.expect(closed_power(g, Variable::x, p, in.s) == act(g, LaurentPoly::x(p), in.s), label(in) + " x^" + std::to_string(p));
          t.expect(closed_power(g, Variable::y, p, in.s) == act(g, LaurentPoly::y(p), in.s), label(in) + " y^" + std::to_string(p));
        }
    }
  });

  criterion(6, "conjugation by 10 random automorphisms keeps verification and (|D|, G)", [&](Tally& t) {
    std::mt19937 crng(606);
    QScalar mu = QScalar::symbol("m"), nu = QScalar::symbol("n");
    for (std::size_t k = 0; k < 10; ++k) {
      const auto& in = named[(k * 11 + 3) % named.size()];
      Invariants before = invariants(in.p);
      WeightPair w = *in.s.weights();
      for (int trial = 0; trial < 10; ++trial) {
        SL2Z sigma = qsym::testing::random_sl2z(crng, 3);
        auto c = conjugate(in.s, {sigma, mu, nu});
        std::string tag = label(in) + " by " + sigma.to_string();
        t.expect(verify_module_algebra(c).pass(), tag + ": verification");
        IntegralParams cp = conjugate_params(in.p, sigma);
        Invariants after = invariants(cp);
        t.expect(std::abs(after.D) == std::abs(before.D) && after.G == before.G, tag + ": invariants");
        // the conjugated weights obey the relations of the transformed matrix
        auto cw = c.weights();
        t.expect(cw && *cw == sl2z_weight_action(sigma, w), tag + ": weights");
        if (cw) {
          t.expect((cw->alpha.pow(cp.r) * cw->beta.pow(cp.s)).is_one(), tag + ": alpha^r beta^s");
          t.expect(cw->alpha.pow(cp.u) * cw->beta.pow(cp.v) == wq(2), tag + ": alpha^u beta^v");
        }
      }
    }
  });

  criterion(7, "spot values for (2 2; 1 2) and the (1 1; 0 1) orbit witness", [&](Tally& t) {
    Invariants iv = invariants({2, 2, 1, 2});
    t.expect(iv.D == 2 && iv.G == 2, "invariants of (2 2; 1 2)");
    t.expect(minimality_check(2, 2, {wq(-2), wq(2, -1)}), "beta = -q^2 should be minimal");
    t.expect(!minimality_check(2, 2, {wq(-2), wq(2)}), "beta = q^2 should not be minimal");
    t.expect(weight_constants_for({2, 2, 1, 2}) == WeightPair{wq(-2), wq(2, -1)}, "weights of (2 2; 1 2)");
    auto r = orbit_check({wq(-1, -1), wq(0, -1)}, {wq(-1), wq(0, -1)});
    t.expect(r.verdict == OrbitVerdict::yes && r.witness && r.witness->matrix() == IntMatrix2{1, 1, 0, 1},
             "orbit witness");
  });

  criterion(8, "ratio relations on every instance, extreme-index law on every non-generic one", [&](Tally& t) {
    for (const auto* set : {&named, &embedded})
      for (const auto& in : *set) {
        t.expect(check_lemma_ratios(in.s).pass(), label(in) + ": ratios");
        auto ex = compute_extreme_indices(in.s, in.p);
        t.expect(ex.law_holds, label(in) + ": extreme-index law");
      }
    for (std::size_t i = 0; i < classical.size(); ++i)
      if (classical[i].weight_type()) t.expect(check_lemma_ratios(classical[i]).pass(), "classical " + std::to_string(i));
  });

  criterion(9, "document round trip and fixture exit codes", [&](Tally& t) {
    std::mt19937 drng(909);
    for (int trial = 0; trial < 50; ++trial) {
      SymmetryAction s;
      s.k_spec = {qsym::testing::random_sl2z(drng), QScalar::q(trial % 7 - 3), QScalar(trial + 1)};
      s.e_x = qsym::testing::random_laurent(drng);
      s.f_y = qsym::testing::random_laurent(drng);
      auto doc = custom_document(s);
      std::string text = serialize_document(doc);
      auto back = parse_document(text);
      t.expect(back == doc && serialize_document(back) == text, "custom round trip " + std::to_string(trial));
      auto built = build_symmetry(back).action;
      t.expect(built.k_spec == s.k_spec && built.e_x == s.e_x && built.f_y == s.f_y, "custom rebuild " + std::to_string(trial));
    }
    for (const auto& info : series_table()) {
      SymmetryDocument d;
      d.series = info.name;
      d.params = {{"r", 1}, {"s", 2}, {"u", -1}, {"v", 3}, {"M", 1}};
      d.coefficients = {{"a0", "3*q^-2"}, {"c1", "(1-q^2)/(t+z)"}};
      d.automorphism = AutomorphismDoc{{2, 1, 1, 1}, "m", "q^3"};
      t.expect(parse_document(serialize_document(d)) == d, "round trip " + info.name);
    }
    auto valid = fixtures("valid"), failing = fixtures("failing"), rejected = fixtures("rejected");
    t.expect(valid.size() == 10 && failing.size() == 5, "fixture counts");
    auto expect_code = [&](const fs::path& f, int want) {
      std::string out;
      int code = cli({"verify", "--input", f.string(), "--json"}, &out);
      t.expect(code == want, f.filename().string() + ": exit " + std::to_string(code));
      if (want != 2 && code == want) t.expect(json::parse(out)["pass"] == (want == 0), f.filename().string() + ": pass flag");
    };
    for (const auto& f : valid) expect_code(f, 0);
    for (const auto& f : failing) expect_code(f, 1);
    for (const auto& f : rejected) expect_code(f, 2);
  });

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << "(" << failures << " of 9 criteria failed)\n";
  return failures ? 1 : 0;
}
