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

// Command dispatch for the qsym tool.  Needs the vendored CLI11 and nlohmann json headers.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "document.hpp"

namespace qsym {

enum exit_code : int { exit_pass = 0, exit_failure = 1, exit_invalid = 2, exit_internal = 3 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error(violation::document, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json entry_json(const CheckEntry& e) {
  json j{{"check", e.check}, {"target", e.target}, {"pass", e.residual.is_zero() && e.failures == 0}};
  if (!e.residual.is_zero()) j["residual"] = e.residual.to_string();
  if (e.failures) j["failures"] = e.failures;
  return j;
}

inline json weight_json(const WeightConstant& w) { return w.to_string(); }

inline json series_json(const SeriesInfo& s) {
  json j{{"name", s.name}, {"family", s.family == Family::type1      ? "type I"
                                       : s.family == Family::type2   ? "type II"
                                       : s.family == Family::generic ? "generic"
                                                                     : "non-generic"}};
  if (s.family == Family::nongeneric) {
    j["D"] = s.D;
    j["G"] = s.G;
    j["L"] = s.L;
    j["N"] = s.N;
    j["weights"] = to_string(s.rule);
  }
  json coeffs = json::array();
  for (const auto& c : s.coefficients) coeffs.push_back({{"name", c.name}, {"nonzero", c.nonzero}});
  j["coefficients"] = coeffs;
  if (!s.e_terms.empty()) {
    json e = json::array(), f = json::array();
    for (const auto& [w, text] : s.e_terms) e.push_back({{"w", w}, {"A", text}});
    for (const auto& [t, text] : s.f_terms) f.push_back({{"t", t}, {"C", text}});
    j["e_terms"] = e;
    j["f_terms"] = f;
  }
  if (s.embedding) j["embedding"] = {{"target", series_info(s.embedding->target).name}, {"zero", s.embedding->coefficient}};
  return j;
}

struct VerifyOutcome {
  json report;
  bool pass;
};

/// Module-algebra checks plus, for instances with integral parameters, the structural checks.
inline VerifyOutcome run_verification(const BuiltSymmetry& b) {
  VerificationReport rep = verify_module_algebra(b.action);
  json j;
  j["series"] = b.series;
  json extra = json::object();
  if (b.action.weight_type()) {
    auto ratios = check_lemma_ratios(b.action);
    rep.entries.insert(rep.entries.end(), ratios.entries.begin(), ratios.entries.end());
  }
  std::optional<IntegralParams> p = b.params;
  if (p && b.automorphism) p = conjugate_params(*p, b.automorphism->sigma);
  if (p && b.action.weight_type()) {
    try {
      auto [cx, cy] = ef_fe_closed(b.action, *p);
      ActionEngine eng(b.action);
      for (auto [g, closed] : {std::pair{LaurentPoly::x(), cx}, std::pair{LaurentPoly::y(), cy}}) {
        LaurentPoly rec = eng.apply_word({Generator::e, Generator::f}, g) - eng.apply_word({Generator::f, Generator::e}, g);
        rep.entries.push_back({"ef - fe closed form", g == LaurentPoly::x() ? "x" : "y", closed - rec});
      }
      bool e_or_f = !(b.action.e_x.is_zero() && b.action.e_y.is_zero() && b.action.f_x.is_zero() && b.action.f_y.is_zero());
      bool nongeneric = b.id && series_info(*b.id).family == Family::nongeneric;
      if (e_or_f && (nongeneric || !b.id)) {
        auto ext = compute_extreme_indices(b.action, *p);
        json ej;
        auto opt = [](const std::optional<long>& v) { return v ? json(*v) : json(nullptr); };
        ej["minind_e"] = opt(ext.minind_e);
        ej["maxind_e"] = opt(ext.maxind_e);
        ej["minind_f"] = opt(ext.minind_f);
        ej["maxind_f"] = opt(ext.maxind_f);
        ej["law"] = ext.law_holds;
        extra["extreme_indices"] = ej;
        if (nongeneric) rep.entries.push_back({"extreme index law", "e/f", {}, ext.law_holds ? 0 : 1});
      }
    } catch (const validation_error& e) {
      if (e.kind() != violation::precondition) throw;
      extra["structural"] = std::string("skipped: ") + e.what();
    }
  }
  json checks = json::array();
  for (const auto& e : rep.entries) checks.push_back(entry_json(e));
  j["checks"] = checks;
  j["pass"] = rep.pass();
  for (auto& [k, v] : extra.items()) j[k] = v;
  return {j, rep.pass()};
}

inline std::string text_report(const json& j) {
  std::ostringstream os;
  os << "series: " << j["series"].get<std::string>() << "\n";
  for (const auto& c : j["checks"]) {
    os << (c["pass"].get<bool>() ? "  ok    " : "  FAIL  ") << c["check"].get<std::string>() << " [" << c["target"].get<std::string>() << "]";
    if (c.contains("failures")) os << " failures=" << c["failures"].get<long>();
    if (c.contains("residual")) os << "\n        residual: " << c["residual"].get<std::string>();
    os << "\n";
  }
  if (j.contains("extreme_indices")) os << "extreme indices: " << j["extreme_indices"].dump() << "\n";
  if (j.contains("structural")) os << "structural checks " << j["structural"].get<std::string>() << "\n";
  os << (j["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

inline std::array<long, 4> parse_sigma(const std::string& text) {
  std::array<long, 4> m{};
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == ';' || c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
  std::istringstream is(t);
  for (auto& x : m)
    if (!(is >> x)) throw validation_error(violation::document, "sigma must be four integers k,m,l,n");
  std::string rest;
  if (is >> rest) throw validation_error(violation::document, "sigma must be four integers k,m,l,n");
  return m;
}

}  // namespace detail

/// Runs one command; `args` excludes the program name.  Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact U_q(sl2)-symmetries of the Laurent quantum plane", "qsym"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string input, output;
  long d_filter = 0, g_filter = 0, bound = 64;
  std::string sigma_text, mu_text = "1", nu_text = "1";
  std::string a1, b1, a2, b2;

  auto* list = app.add_subcommand("list", "List the series table sorted by (D, G, L)");
  auto* d_opt = list->add_option("--d", d_filter, "Only series with |D| = N");
  auto* g_opt = list->add_option("--g", g_filter, "Only series with G = N");
  auto* verify = app.add_subcommand("verify", "Verify the module-algebra axioms for a document");
  auto* inv = app.add_subcommand("invariants", "Print D, G and the minimality verdict");
  auto* conj = app.add_subcommand("conjugate", "Conjugate a document by an automorphism");
  conj->add_option("--sigma", sigma_text, "k,m,l,n")->required();
  conj->add_option("--mu", mu_text, "scalar literal");
  conj->add_option("--nu", nu_text, "scalar literal");
  auto* orbit = app.add_subcommand("orbit", "Decide SL(2,Z)-orbit membership of two weight pairs");
  orbit->add_option("--alpha1", a1);
  orbit->add_option("--beta1", b1);
  orbit->add_option("--alpha2", a2);
  orbit->add_option("--beta2", b2);
  orbit->add_option("--bound", bound, "search bound on the coset parameter")->check(CLI::NonNegativeNumber);
  auto* table = app.add_subcommand("export-table", "Write the series table as JSON");
  for (auto* sub : {list, verify, inv, conj, orbit, table}) {
    sub->add_option("--output", output, "write to FILE instead of stdout");
    sub->add_flag("--json", as_json, "structured output");
  }
  for (auto* sub : {verify, inv, conj}) sub->add_option("--input", input, "document FILE")->required();
  orbit->add_option("--input", input, "JSON file with w1 and w2");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid;
  }

  std::ostringstream buf;
  int code = exit_pass;
  try {
    if (list->parsed()) {
      std::optional<long> d, g;
      if (*d_opt) d = d_filter;
      if (*g_opt) g = g_filter;
      auto rows = list_series(d, g);
      if (as_json) {
        json arr = json::array();
        for (const auto* s : rows) arr.push_back(detail::series_json(*s));
        buf << arr.dump(2) << "\n";
      } else {
        for (const auto* s : rows) {
          buf << s->name;
          if (s->family == Family::nongeneric)
            buf << "  D=" << s->D << " G=" << s->G << " L=" << s->L << " N=" << s->N << "  weights " << to_string(s->rule);
          buf << "  coefficients:";
          for (const auto& c : s->coefficients) buf << " " << c.name << (c.nonzero ? "*" : "");
          if (s->embedding) buf << "  (embeds into " << series_info(s->embedding->target).name << " with " << s->embedding->coefficient << " = 0)";
          buf << "\n";
        }
        buf << rows.size() << " entries\n";
      }
    } else if (verify->parsed()) {
      auto doc = parse_document(detail::read_file(input));
      auto built = build_symmetry(doc);
      auto outcome = detail::run_verification(built);
      buf << (as_json ? outcome.report.dump(2) + "\n" : detail::text_report(outcome.report));
      code = outcome.pass ? exit_pass : exit_failure;
    } else if (inv->parsed()) {
      auto doc = parse_document(detail::read_file(input));
      auto p = document_params(doc);
      if (!p) throw validation_error(violation::document, "invariants need integral parameters r, s, u, v");
      std::optional<WeightPair> w;
      if (!doc.weights.empty()) {
        auto get = [&](const char* k) {
          if (!doc.weights.count(k)) throw validation_error(violation::document, std::string("missing weight '") + k + "'");
          return weight_literal(doc.weights.at(k), k);
        };
        w = WeightPair{get("alpha"), get("beta")};
      } else if (auto id = series_from_name(doc.series); id && series_info(*id).family == Family::nongeneric) {
        w = weight_constants_for(*id, *p);
      }
      if (doc.automorphism) {
        auto phi = automorphism_spec(*doc.automorphism);
        *p = conjugate_params(*p, phi.sigma);
        if (w) w = sl2z_weight_action(phi.sigma, *w);
      }
      Invariants iv = invariants(*p);
      json j{{"r", p->r}, {"s", p->s}, {"u", p->u}, {"v", p->v}, {"D", iv.D}, {"abs_D", std::abs(iv.D)}, {"G", iv.G}};
      if (w) {
        j["alpha"] = w->alpha.to_string();
        j["beta"] = w->beta.to_string();
        j["minimal"] = minimality_check(p->r, p->s, *w);
      }
      if (as_json) {
        buf << j.dump(2) << "\n";
      } else {
        buf << "Phi = (" << p->r << " " << p->s << "; " << p->u << " " << p->v << ")\n";
        buf << "D = " << iv.D << "\nG = " << iv.G << "\n";
        if (w) buf << "weights = (" << w->alpha.to_string() << ", " << w->beta.to_string() << ")\nminimal = "
                   << (j["minimal"].get<bool>() ? "true" : "false") << "\n";
      }
    } else if (conj->parsed()) {
      auto doc = parse_document(detail::read_file(input));
      AutomorphismDoc step{detail::parse_sigma(sigma_text), mu_text, nu_text};
      AutomorphismSpec phi1 = automorphism_spec(step);
      AutomorphismSpec total = doc.automorphism ? automorphism_compose(automorphism_spec(*doc.automorphism), phi1) : phi1;
      doc.automorphism = AutomorphismDoc{{total.sigma.k(), total.sigma.m(), total.sigma.l(), total.sigma.n()},
                                         total.mu.to_string(), total.nu.to_string()};
      build_symmetry(doc);  // validates the result
      buf << serialize_document(doc) << "\n";
    } else if (orbit->parsed()) {
      if (!input.empty()) {
        json j;
        try {
          j = json::parse(detail::read_file(input));
        } catch (const json::parse_error& e) {
          throw validation_error(violation::document, std::string("malformed JSON: ") + e.what());
        }
        auto field = [&](const char* w, const char* k) {
          if (!j.contains(w) || !j[w].contains(k)) throw validation_error(violation::document, std::string("missing ") + w + "." + k);
          return detail::literal(j[w][k], std::string(w) + "." + k);
        };
        a1 = field("w1", "alpha");
        b1 = field("w1", "beta");
        a2 = field("w2", "alpha");
        b2 = field("w2", "beta");
      }
      if (a1.empty() || b1.empty() || a2.empty() || b2.empty())
        throw validation_error(violation::document, "orbit needs --alpha1 --beta1 --alpha2 --beta2 or --input");
      WeightPair w1{weight_literal(a1, "alpha1"), weight_literal(b1, "beta1")};
      WeightPair w2{weight_literal(a2, "alpha2"), weight_literal(b2, "beta2")};
      auto res = orbit_check(w1, w2, bound);
      json j{{"verdict", to_string(res.verdict)}, {"reason", res.reason}};
      if (res.witness) j["witness"] = {{res.witness->k(), res.witness->m()}, {res.witness->l(), res.witness->n()}};
      if (as_json)
        buf << j.dump(2) << "\n";
      else
        buf << to_string(res.verdict) << (res.witness ? " witness " + res.witness->to_string() : "") << "  (" << res.reason << ")\n";
    } else if (table->parsed()) {
      json arr = json::array();
      for (const auto* s : list_series()) arr.push_back(detail::series_json(*s));
      buf << arr.dump(2) << "\n";
    }
  } catch (const validation_error& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const parse_error& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const division_by_zero& e) {
    err << "validation error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_internal;
  }

  if (!output.empty()) {
    std::ofstream f(output);
    if (!f) {
      err << "internal error: cannot write '" << output << "'\n";
      return exit_internal;
    }
    f << buf.str();
  } else {
    out << buf.str();
  }
  return code;
}

}  // namespace qsym
