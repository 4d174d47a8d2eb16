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

// JSON documents describing one symmetry instance.  Needs the vendored nlohmann json header.

#include <map>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsym.hpp"

namespace qsym {

struct AutomorphismDoc {
  std::array<long, 4> sigma{1, 0, 0, 1};  // (k m; l n) row by row
  std::string mu = "1";
  std::string nu = "1";
  bool operator==(const AutomorphismDoc&) const = default;
};

struct TermDoc {
  long x = 0;
  long y = 0;
  std::string c;
  bool operator==(const TermDoc&) const = default;
};

/*
 *   series        catalog name, or "Custom" for explicit images
 *   params        integers r s u v M (non-generic), u v (Generic)
 *   variant       optional "a" / "b", must agree with the series name
 *   weights       alpha, beta as scalar literals (TypeI, Generic, optional elsewhere)
 *   eps           [eps_x, eps_y] for TypeII
 *   coefficients  name -> scalar literal; missing names stay symbolic
 *   automorphism  optional conjugating map {sigma, mu, nu}
 *   k, images     Custom only: k as {sigma, mu, nu}, images e_x e_y f_x f_y as term lists
 */
struct SymmetryDocument {
  std::string series;
  std::map<std::string, long> params;
  std::optional<std::string> variant;
  std::map<std::string, std::string> weights;
  std::optional<std::array<int, 2>> eps;
  std::map<std::string, std::string> coefficients;
  std::optional<AutomorphismDoc> automorphism;
  std::optional<AutomorphismDoc> k;
  std::map<std::string, std::vector<TermDoc>> images;

  bool operator==(const SymmetryDocument&) const = default;
};

using nlohmann::json;

namespace detail {

[[noreturn]] inline void doc_error(const std::string& what) { throw validation_error(violation::document, what); }

inline json automorphism_json(const AutomorphismDoc& a) {
  return {{"sigma", {{a.sigma[0], a.sigma[1]}, {a.sigma[2], a.sigma[3]}}}, {"mu", a.mu}, {"nu", a.nu}};
}

inline AutomorphismDoc automorphism_from_json(const json& j, const char* where) {
  if (!j.is_object()) doc_error(std::string(where) + " must be an object");
  AutomorphismDoc a;
  if (j.contains("sigma")) {
    const json& s = j.at("sigma");
    if (!s.is_array() || s.size() != 2 || !s[0].is_array() || !s[1].is_array() || s[0].size() != 2 || s[1].size() != 2)
      doc_error(std::string(where) + ".sigma must be [[k, m], [l, n]]");
    for (int i = 0; i < 2; ++i)
      for (int k = 0; k < 2; ++k) {
        if (!s[i][k].is_number_integer()) doc_error(std::string(where) + ".sigma entries must be integers");
        a.sigma[static_cast<std::size_t>(2 * i + k)] = s[i][k].get<long>();
      }
  }
  if (j.contains("mu")) a.mu = j.at("mu").is_string() ? j.at("mu").get<std::string>() : j.at("mu").dump();
  if (j.contains("nu")) a.nu = j.at("nu").is_string() ? j.at("nu").get<std::string>() : j.at("nu").dump();
  return a;
}

inline std::string literal(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  doc_error(where + " must be a string or integer literal");
}

}  // namespace detail

inline json to_json(const SymmetryDocument& d) {
  json j;
  j["series"] = d.series;
  if (!d.params.empty()) j["params"] = d.params;
  if (d.variant) j["variant"] = *d.variant;
  if (!d.weights.empty()) j["weights"] = d.weights;
  if (d.eps) j["eps"] = {(*d.eps)[0], (*d.eps)[1]};
  if (!d.coefficients.empty()) j["coefficients"] = d.coefficients;
  if (d.automorphism) j["automorphism"] = detail::automorphism_json(*d.automorphism);
  if (d.k) j["k"] = detail::automorphism_json(*d.k);
  if (!d.images.empty()) {
    json im = json::object();
    for (const auto& [name, terms] : d.images) {
      json arr = json::array();
      for (const auto& t : terms) arr.push_back({{"x", t.x}, {"y", t.y}, {"c", t.c}});
      im[name] = arr;
    }
    j["images"] = im;
  }
  return j;
}

inline SymmetryDocument document_from_json(const json& j) {
  using detail::doc_error;
  if (!j.is_object()) doc_error("document must be a JSON object");
  static const std::set<std::string> known = {"series", "params", "variant", "weights", "eps",
                                              "coefficients", "automorphism", "k", "images"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) doc_error("unknown field '" + key + "'");
  SymmetryDocument d;
  if (!j.contains("series") || !j["series"].is_string()) doc_error("missing string field 'series'");
  d.series = j["series"].get<std::string>();
  if (j.contains("params")) {
    if (!j["params"].is_object()) doc_error("params must be an object");
    for (const auto& [key, val] : j["params"].items()) {
      if (!val.is_number_integer()) doc_error("params." + key + " must be an integer");
      d.params[key] = val.get<long>();
    }
  }
  if (j.contains("variant")) {
    if (!j["variant"].is_string()) doc_error("variant must be a string");
    d.variant = j["variant"].get<std::string>();
  }
  if (j.contains("weights")) {
    if (!j["weights"].is_object()) doc_error("weights must be an object");
    for (const auto& [key, val] : j["weights"].items()) d.weights[key] = detail::literal(val, "weights." + key);
  }
  if (j.contains("eps")) {
    const json& e = j["eps"];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      doc_error("eps must be [eps_x, eps_y]");
    d.eps = std::array<int, 2>{e[0].get<int>(), e[1].get<int>()};
  }
  if (j.contains("coefficients")) {
    if (!j["coefficients"].is_object()) doc_error("coefficients must be an object");
    for (const auto& [key, val] : j["coefficients"].items())
      d.coefficients[key] = detail::literal(val, "coefficients." + key);
  }
  if (j.contains("automorphism")) d.automorphism = detail::automorphism_from_json(j["automorphism"], "automorphism");
  if (j.contains("k")) d.k = detail::automorphism_from_json(j["k"], "k");
  if (j.contains("images")) {
    if (!j["images"].is_object()) doc_error("images must be an object");
    for (const auto& [name, arr] : j["images"].items()) {
      if (name != "e_x" && name != "e_y" && name != "f_x" && name != "f_y") doc_error("unknown image '" + name + "'");
      if (!arr.is_array()) doc_error("images." + name + " must be a list of terms");
      std::vector<TermDoc> terms;
      for (const auto& t : arr) {
        if (!t.is_object() || !t.contains("c")) doc_error("image terms need x, y and c");
        TermDoc td;
        td.x = t.value("x", 0L);
        td.y = t.value("y", 0L);
        td.c = detail::literal(t["c"], "images." + name + ".c");
        terms.push_back(td);
      }
      d.images[name] = terms;
    }
  }
  return d;
}

inline SymmetryDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(violation::document, std::string("malformed JSON: ") + e.what());
  }
  return document_from_json(j);
}

inline std::string serialize_document(const SymmetryDocument& d) { return to_json(d).dump(2); }

/// Explicit-image document for an arbitrary action.
inline SymmetryDocument custom_document(const SymmetryAction& s) {
  SymmetryDocument d;
  d.series = "Custom";
  const auto& k = s.k_spec;
  d.k = AutomorphismDoc{{k.sigma.k(), k.sigma.m(), k.sigma.l(), k.sigma.n()}, k.mu.to_string(), k.nu.to_string()};
  auto put = [&](const char* name, const LaurentPoly& p) {
    std::vector<TermDoc> ts;
    for (const auto& t : p.terms()) ts.push_back({t.e.i, t.e.j, t.c.to_string()});
    d.images[name] = ts;
  };
  put("e_x", s.e_x);
  put("e_y", s.e_y);
  put("f_x", s.f_x);
  put("f_y", s.f_y);
  return d;
}

// ---------------------------------------------------------------------------------------------

/// Everything a command needs once a document has been validated.
struct BuiltSymmetry {
  std::string series;
  std::optional<SeriesId> id;                 // empty for Custom
  SymmetryAction action;                      // after conjugation, if any
  SymmetryAction base;                        // before conjugation
  std::optional<IntegralParams> params;       // integral parameters of the base action
  std::optional<AutomorphismSpec> automorphism;
};

inline WeightConstant weight_literal(const std::string& text, const std::string& where) {
  QScalar v;
  try {
    v = parse_scalar(text, {}, {}, false);
  } catch (const parse_error& e) {
    throw validation_error(violation::document, where + ": " + e.what());
  }
  auto w = WeightConstant::from_scalar(v);
  if (!w) throw validation_error(violation::rational_part, where + " must have the form c * z^k with c rational");
  return *w;
}

inline AutomorphismSpec automorphism_spec(const AutomorphismDoc& a) {
  const auto& s = a.sigma;
  SL2Z sigma(s[0], s[1], s[2], s[3]);
  QScalar mu = parse_scalar(a.mu), nu = parse_scalar(a.nu);
  if (mu.is_zero() || nu.is_zero()) throw validation_error(violation::precondition, "automorphism scalars must be nonzero");
  return {sigma, mu, nu};
}

inline std::optional<IntegralParams> document_params(const SymmetryDocument& d) {
  if (!d.params.count("r") && !d.params.count("s")) return std::nullopt;
  IntegralParams p;
  auto get = [&](const char* k, long def) {
    auto it = d.params.find(k);
    return it == d.params.end() ? def : it->second;
  };
  for (const auto& [key, _] : d.params)
    if (key != "r" && key != "s" && key != "u" && key != "v" && key != "M" && key != "L" && key != "N")
      throw validation_error(violation::document, "unknown parameter '" + key + "'");
  for (const char* k : {"r", "s", "u", "v"})
    if (!d.params.count(k)) throw validation_error(violation::document, std::string("missing parameter '") + k + "'");
  p.r = get("r", 0);
  p.s = get("s", 0);
  p.u = get("u", 0);
  p.v = get("v", 0);
  p.M = get("M", 0);
  p.L = get("L", -1);
  p.N = get("N", -1);
  return p;
}

inline BuiltSymmetry build_symmetry(const SymmetryDocument& d) {
  BuiltSymmetry b;
  b.series = d.series;
  auto coeff = [&](const std::string& name) -> std::optional<QScalar> {
    auto it = d.coefficients.find(name);
    if (it == d.coefficients.end()) return std::nullopt;
    return parse_scalar(it->second);
  };
  auto weight = [&](const char* name) {
    auto it = d.weights.find(name);
    if (it == d.weights.end()) throw validation_error(violation::document, std::string("missing weight '") + name + "'");
    return weight_literal(it->second, std::string("weights.") + name);
  };

  if (d.series == "Custom") {
    if (!d.k) throw validation_error(violation::document, "Custom documents need k");
    b.base.k_spec = automorphism_spec(*d.k);
    auto image = [&](const char* name) {
      LaurentPoly p;
      auto it = d.images.find(name);
      if (it == d.images.end()) return p;
      std::vector<LaurentPoly::Term> ts;
      for (const auto& t : it->second) ts.push_back({{t.x, t.y}, parse_scalar(t.c)});
      return LaurentPoly::from_terms(std::move(ts));
    };
    b.base.e_x = image("e_x");
    b.base.e_y = image("e_y");
    b.base.f_x = image("f_x");
    b.base.f_y = image("f_y");
    b.params = document_params(d);
  } else {
    auto id = series_from_name(d.series);
    if (!id) throw validation_error(violation::document, "unknown series '" + d.series + "'");
    b.id = id;
    const SeriesInfo& info = series_info(*id);
    b.series = info.name;
    if (!d.images.empty() || d.k) throw validation_error(violation::document, "images and k are only allowed for Custom");
    for (const auto& [name, _] : d.coefficients)
      if (std::none_of(info.coefficients.begin(), info.coefficients.end(),
                       [&](const CoefficientSpec& c) { return c.name == name; }) ||
          info.family == Family::type1 || info.family == Family::type2)
        throw validation_error(violation::coefficient_arity, info.name + " has no coefficient '" + name + "'");
    switch (info.family) {
      case Family::type1:
        b.base = make_type1(weight("alpha"), weight("beta"));
        break;
      case Family::type2:
        if (!d.eps) throw validation_error(violation::document, "TypeII documents need eps");
        b.base = make_type2((*d.eps)[0], (*d.eps)[1]);
        break;
      case Family::generic: {
        if (!d.params.count("u") || !d.params.count("v"))
          throw validation_error(violation::document, "Generic documents need params u and v");
        QScalar a = coeff("a").value_or(QScalar::symbol("a"));
        b.base = make_generic(d.params.at("u"), d.params.at("v"), weight("alpha"), weight("beta"), a);
        break;
      }
      case Family::nongeneric: {
        auto p = document_params(d);
        if (!p) throw validation_error(violation::document, "missing integral parameters r, s, u, v");
        if (d.variant) {
          std::string letter = info.name.find("(a)") != std::string::npos   ? "a"
                               : info.name.find("(b)") != std::string::npos ? "b"
                                                                            : "";
          if (letter.empty() || *d.variant != letter)
            throw validation_error(violation::signature_mismatch, "variant '" + *d.variant + "' does not match " + info.name);
        }
        CoefficientSet cs;
        for (const auto& spec : info.coefficients) cs[spec.name] = coeff(spec.name).value_or(QScalar::symbol(spec.name));
        b.base = make_nongeneric(*id, *p, cs);
        if (!d.weights.empty()) {
          WeightPair w{weight("alpha"), weight("beta")};
          if (!(w == weight_constants_for(*id, *p)))
            throw validation_error(violation::weight_relation, "weights do not match the series weight rule");
        }
        b.params = p;
        break;
      }
    }
  }
  b.action = b.base;
  if (d.automorphism) {
    b.automorphism = automorphism_spec(*d.automorphism);
    b.action = conjugate(b.base, *b.automorphism);
  }
  return b;
}

}  // namespace qsym
