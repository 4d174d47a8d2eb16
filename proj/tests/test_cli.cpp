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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qsym/cli.hpp"
#include "test_support.hpp"

using namespace qsym;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<fs::path> fixtures(const char* sub) {
  std::vector<fs::path> v;
  for (const auto& e : fs::directory_iterator(fs::path(QSYM_FIXTURES) / sub)) v.push_back(e.path());
  std::sort(v.begin(), v.end());
  return v;
}

fs::path temp_file(const std::string& name, const std::string& body = "") {
  fs::path p = fs::temp_directory_path() / ("qsym_test_" + name);
  if (!body.empty()) std::ofstream(p) << body;
  return p;
}

SymmetryDocument random_document(std::mt19937& rng) {
  const auto& table = series_table();
  std::uniform_int_distribution<std::size_t> pick(0, table.size() - 1);
  std::uniform_int_distribution<long> small(-4, 4);
  SymmetryDocument d;
  d.series = table[pick(rng)].name;
  for (const char* k : {"r", "s", "u", "v", "M"})
    if (rng() % 4) d.params[k] = small(rng);
  if (rng() % 2) d.variant = rng() % 2 ? "a" : "b";
  if (rng() % 2) d.weights = {{"alpha", qsym::testing::random_scalar(rng).to_string()}, {"beta", "-q^2"}};
  if (rng() % 3 == 0) d.eps = std::array<int, 2>{1, -1};
  for (const char* c : {"a0", "a1", "c2"})
    if (rng() % 2) d.coefficients[c] = qsym::testing::random_scalar(rng).to_string();
  if (rng() % 2) {
    SL2Z s = qsym::testing::random_sl2z(rng);
    d.automorphism = AutomorphismDoc{{s.k(), s.m(), s.l(), s.n()}, qsym::testing::random_scalar(rng).to_string(), "m"};
  }
  if (rng() % 3 == 0) {
    d.k = AutomorphismDoc{{-1, 0, 0, -1}, "q^2", "1/3"};
    d.images["e_x"] = {{1, 2, "q"}, {-3, 0, "(1+z)/(2*a)"}};
    d.images["f_y"] = {};
  }
  return d;
}

}  // namespace

TEST_CASE("document round trip", "[cli][property]") {
  std::mt19937 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    SymmetryDocument d = random_document(rng);
    std::string text = serialize_document(d);
    SymmetryDocument back = parse_document(text);
    CHECK(back == d);
    CHECK(serialize_document(back) == text);
  }
}

TEST_CASE("custom documents reproduce the action", "[cli][property]") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    SymmetryAction s;
    s.k_spec = {qsym::testing::random_sl2z(rng), qsym::testing::random_scalar(rng) + QScalar(7), QScalar::q(trial % 5)};
    if (s.k_spec.mu.is_zero()) s.k_spec.mu = 1;
    s.e_x = qsym::testing::random_laurent(rng);
    s.e_y = qsym::testing::random_laurent(rng);
    s.f_x = qsym::testing::random_laurent(rng);
    s.f_y = qsym::testing::random_laurent(rng);
    auto built = build_symmetry(parse_document(serialize_document(custom_document(s))));
    CHECK(built.action.k_spec == s.k_spec);
    CHECK(built.action.e_x == s.e_x);
    CHECK(built.action.e_y == s.e_y);
    CHECK(built.action.f_x == s.f_x);
    CHECK(built.action.f_y == s.f_y);
  }
}

TEST_CASE("document validation", "[cli]") {
  auto kind = [](const std::string& text) {
    try {
      build_symmetry(parse_document(text));
    } catch (const validation_error& e) {
      return e.kind();
    }
    return violation::precondition;  // accepted
  };
  CHECK(kind("{") == violation::document);
  CHECK(kind(R"J({"series": "D1G1E1F3", "params": {"r": 0, "s": 1, "u": -1, "v": 0}, "extra": 1})J") == violation::document);
  CHECK(kind(R"J({"series": "D1G1E1F3", "params": {"r": 0, "s": 1, "u": -1, "v": 0}})J") == violation::precondition);
  CHECK(kind(R"J({"series": "D1G1E1F3", "params": {"r": 0, "s": 1, "u": -1}})J") == violation::document);
  CHECK(kind(R"J({"series": "D4G1E2F1(a)", "variant": "b", "params": {"r": 1, "s": 1, "u": -1, "v": 3}})J") ==
        violation::signature_mismatch);
  CHECK(kind(R"J({"series": "D2G2E2F2", "params": {"r": 2, "s": 2, "u": 1, "v": 2}, "weights": {"alpha": "q^-2", "beta": "q^2"}})J") ==
        violation::weight_relation);
  CHECK(kind(R"J({"series": "TypeII", "eps": [1, 2]})J") == violation::precondition);
  CHECK(kind(R"J({"series": "Nope"})J") == violation::document);
}

TEST_CASE("list and export-table", "[cli]") {
  auto all = run({"list"});
  CHECK(all.code == 0);
  CHECK(all.out.find("31 entries") != std::string::npos);
  auto d4 = run({"list", "--d", "4", "--json"});
  CHECK(d4.code == 0);
  CHECK(json::parse(d4.out).size() == 8);
  auto g3 = run({"list", "--g", "3", "--json"});
  CHECK(json::parse(g3.out).empty());
  auto table = run({"export-table"});
  CHECK(table.code == 0);
  auto arr = json::parse(table.out);
  CHECK(arr.size() == 31);
  CHECK(arr[0].contains("name"));
  fs::path dest = temp_file("table.json");
  CHECK(run({"export-table", "--output", dest.string()}).code == 0);
  std::ifstream in(dest);
  CHECK(json::parse(in) == arr);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("fixture exit codes", "[cli]") {
  auto valid = fixtures("valid"), failing = fixtures("failing"), rejected = fixtures("rejected");
  CHECK(valid.size() == 10);
  CHECK(failing.size() == 5);
  for (const auto& f : valid) {
    INFO(f.filename().string());
    auto r = run({"verify", "--input", f.string(), "--json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["pass"] == true);
  }
  for (const auto& f : failing) {
    INFO(f.filename().string());
    auto r = run({"verify", "--input", f.string(), "--json"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["pass"] == false);
  }
  for (const auto& f : rejected) {
    INFO(f.filename().string());
    CHECK(run({"verify", "--input", f.string()}).code == 2);
  }
  CHECK(run({"verify", "--input", "/nonexistent/doc.json"}).code == 2);
}

TEST_CASE("invariants and conjugate", "[cli]") {
  fs::path doc = fs::path(QSYM_FIXTURES) / "valid" / "03_d2g2e2f2.json";
  auto r = run({"invariants", "--input", doc.string(), "--json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["D"] == 2);
  CHECK(j["G"] == 2);
  CHECK(j["minimal"] == true);

  fs::path plus = temp_file("plus.json",
                            R"J({"series": "D2G2E2F2", "params": {"r": 2, "s": 2, "u": 1, "v": 2}, "weights": {"alpha": "q^-2", "beta": "q^2"}})J");
  auto rp = run({"invariants", "--input", plus.string(), "--json"});
  REQUIRE(rp.code == 0);
  CHECK(json::parse(rp.out)["minimal"] == false);

  auto c = run({"conjugate", "--input", doc.string(), "--sigma", "2,1,1,1", "--mu", "q", "--nu", "t"});
  REQUIRE(c.code == 0);
  fs::path conj = temp_file("conj.json", c.out);
  auto ri = run({"invariants", "--input", conj.string(), "--json"});
  REQUIRE(ri.code == 0);
  auto ji = json::parse(ri.out);
  CHECK(ji["abs_D"] == 2);
  CHECK(ji["G"] == 2);
  CHECK(ji["minimal"] == true);
  auto rv = run({"verify", "--input", conj.string()});
  CHECK(rv.code == 0);
  CHECK(run({"conjugate", "--input", doc.string(), "--sigma", "2,1,1,2"}).code == 2);
}

TEST_CASE("orbit command", "[cli]") {
  auto r = run({"orbit", "--alpha1", "-q^-1", "--beta1", "-1", "--alpha2", "q^-1", "--beta2", "-1", "--json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["verdict"] == "yes");
  CHECK(j["witness"] == json::array({json::array({1, 1}), json::array({0, 1})}));
  auto no = run({"orbit", "--alpha1", "q^-2", "--beta1", "q", "--alpha2", "q^-2", "--beta2", "-q"});
  CHECK(no.code == 0);
  CHECK(no.out.rfind("no", 0) == 0);
  auto unk = run({"orbit", "--alpha1", "-q^-1", "--beta1", "-1", "--alpha2", "q^-1", "--beta2", "-1", "--bound", "0"});
  CHECK(unk.out.rfind("unknown", 0) == 0);
  fs::path in = temp_file("orbit.json", R"J({"w1": {"alpha": "-q^-1", "beta": "-1"}, "w2": {"alpha": "q^-1", "beta": "-1"}})J");
  CHECK(run({"orbit", "--input", in.string()}).out.rfind("yes", 0) == 0);
  CHECK(run({"orbit", "--alpha1", "2", "--beta1", "1", "--alpha2", "1", "--beta2", "1"}).code == 2);
  CHECK(run({"orbit", "--alpha1", "q"}).code == 2);
}
