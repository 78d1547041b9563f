#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mwcalc/poly.hpp"
#include "mwcalc/suites.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Session {
  std::string field = "F5";
  std::string format = "text";
  uint64_t seed = 42;
};

// Collects the text rendering and the JSON document side by side.
struct Output {
  std::string text;
  json doc = json::object();

  void line(const std::string& s) { text += s + "\n"; }
};

uint64_t default_seed() {
  const char* env = std::getenv("MWCALC_SEED");
  if (!env || !*env) return 42;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw DomainError(std::string("MWCALC_SEED is not an integer: ") + env);
  }
}

Scheme parse_scheme(const std::string& name, const FieldPtr& F) {
  if (name == "point" || name == "Spec") return Scheme::point(F);
  if (name == "A1") return Scheme::affine_line(F);
  if (name == "P1") return Scheme::proj_line(F);
  throw DomainError("unknown scheme '" + name + "' (expected point, A1 or P1)");
}

json report_json(const SuiteReport& r) {
  return json{{"suite", r.name}, {"pass", r.ok()}, {"passed", r.passed}, {"total", r.total},
              {"failures", r.failures}, {"notes", r.notes}};
}

json cochain_json(const RSCochain& c) {
  json values = json::array();
  for (const auto& [pt, v] : c.values) {
    values.push_back({{"point", point_str(c.scheme, pt)}, {"value", to_string(normalized(v).expr)},
                      {"word", word_str(v.line)}, {"text", to_string(v)}});
  }
  return json{{"scheme", c.scheme.name()}, {"codim", c.codim}, {"weight", c.weight}, {"twist", c.twist}, {"values", values}};
}

}  // namespace

int main(int argc, char** argv) {
  Session session;
  std::optional<uint64_t> seed_flag;

  CLI::App app{"Exact Milnor-Witt K-theory calculator"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--field", session.field, "Coefficient field, e.g. F5, F9=F3[x]/(x^2+1), F3(t), R")->capture_default_str();
  app.add_option("--format", session.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--seed", seed_flag, "Seed for randomized commands (default $MWCALC_SEED or 42)");

  std::string expr_text, other_text, place_text, pi_text, ext_text, kind = "geometric", scheme_name = "P1", op, cochain_text,
                                                                    section_text, f_text, suite_name;
  bool normal = false, untwisted = false, list_suites = false;
  int samples = 100, twist = 0, d = 0;

  auto* eval = app.add_subcommand("eval", "Parse and print an expression");
  eval->add_option("expr", expr_text, "Expression")->required();
  eval->add_flag("--normal", normal, "Print the normal form (finite fields)");
  eval->add_option("--compare", other_text, "Decide equality with a second expression");

  auto* res = app.add_subcommand("residue", "Residue at a place of F(t)");
  res->add_option("expr", expr_text, "Expression over F(t)")->required();
  res->add_option("--at", place_text, "Monic irreducible polynomial or inf")->required();
  res->add_option("--pi", pi_text, "Uniformizer (default: the canonical one)");
  res->add_flag("--untwisted", untwisted, "Print the plain residue for the chosen uniformizer");

  auto* tr = app.add_subcommand("transfer", "Transfer from F[s]/(p) to F");
  tr->add_option("expr", expr_text, "Expression over F[s]/(p)")->required();
  tr->add_option("--ext", ext_text, "Monic irreducible p in t")->required();
  tr->add_option("--kind", kind, "geometric, canonical, scharlau or trace")
      ->check(CLI::IsMember({"geometric", "canonical", "scharlau", "trace"}))
      ->capture_default_str();

  auto* rec = app.add_subcommand("reciprocity", "Randomized reciprocity check over F(t)");
  rec->add_option("--samples", samples, "Number of random inputs")->capture_default_str();

  auto* cx = app.add_subcommand("complex", "Rost-Schmid complex operations");
  cx->add_option("op", op, "d, deg, chow, h0 or mu")->required()->check(CLI::IsMember({"d", "deg", "chow", "h0", "mu"}));
  cx->add_option("cochain", cochain_text, "Expression (generic point) or {p: e; inf: e}")->required();
  cx->add_option("--scheme", scheme_name, "point, A1 or P1")->capture_default_str();
  cx->add_option("--twist", twist, "Twist O(d) on P1")->capture_default_str();
  cx->add_option("--f", f_text, "Local equation for mu");

  auto* deg = app.add_subcommand("degree", "Milnor-Witt and classical degree of a codim-1 cochain on P1");
  deg->add_option("cochain", cochain_text, "{p: e; inf: e}")->required();
  deg->add_option("--twist", twist, "Twist O(d)")->capture_default_str();

  auto* eu = app.add_subcommand("euler", "Euler class of O(d) on P1 from a section");
  eu->add_option("--d", d, "Degree of the line bundle")->required();
  eu->add_option("--section", section_text, "Polynomial of degree <= d in t")->required();

  auto* su = app.add_subcommand("suite", "Run a named property suite");
  su->add_option("name", suite_name, "Suite name or all");
  su->add_flag("--list", list_suites, "List suite names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Output out;
  int code = kExitPass;
  std::string command = app.get_subcommands().front()->get_name();
  try {
    session.seed = seed_flag ? *seed_flag : default_seed();
    out.doc["schema"] = "mwcalc/1";
    out.doc["command"] = command;
    auto field = [&]() {
      FieldPtr F = parse_field(session.field);
      out.doc["field"] = F->key();
      return F;
    };

    if (command == "eval") {
      FieldPtr F = field();
      ParsedExpr e = parse_expr(F, expr_text);
      MWExpr x = normal ? normal_form(e.expr) : e.expr;
      std::string shown = to_string(x);
      if (e.twist) shown += " @ O(" + std::to_string(*e.twist) + ")";
      out.doc["degree"] = x.degree();
      out.doc["result"] = shown;
      if (!other_text.empty()) {
        Tri t = mw_compare(e.expr, parse_mw(F, other_text));
        out.doc["equal"] = tri_str(t);
        out.line(tri_str(t));
      } else {
        out.line(shown);
      }
    } else if (command == "residue") {
      FieldPtr Ft = field();
      MWExpr x = parse_mw(Ft, expr_text);
      ValuationSpec v = parse_place(Ft, place_text);
      std::optional<Elem> pi;
      if (!pi_text.empty()) pi = parse_elem(Ft, pi_text);
      std::string shown;
      if (untwisted) {
        shown = to_string(pi ? residue(x, v, *pi) : residue(x, v));
      } else {
        shown = to_string(pi ? residue_twisted(twisted(x), v, *pi) : residue_twisted(twisted(x), v));
      }
      out.doc["place"] = place_str(*Ft, v);
      out.doc["result"] = shown;
      out.line(shown);
    } else if (command == "transfer") {
      FieldPtr F = field();
      Poly p = parse_poly(F, ext_text);
      FieldPtr K = residue_field(F, p);
      MWExpr x = parse_mw(K, expr_text);
      std::string shown;
      if (kind == "geometric") {
        shown = to_string(geometric_transfer(x, F, p));
      } else if (kind == "canonical") {
        shown = to_string(canonical_transfer(twisted(x), F, p));
      } else {
        if (x.degree() != 0) throw DomainError(kind + " transfer acts on forms (degree 0 expressions)");
        GWForm f = mw0_to_gw(x);
        shown = form_str(kind == "scharlau" ? scharlau_transfer(f, F, p) : trace_transfer(f, F, p));
      }
      out.doc["extension"] = K->key();
      out.doc["kind"] = kind;
      out.doc["result"] = shown;
      out.line(shown);
    } else if (command == "reciprocity") {
      FieldPtr Ft = field();
      SuiteReport r = reciprocity_run(Ft, samples, session.seed);
      out.doc["seed"] = session.seed;
      out.doc["report"] = report_json(r);
      out.line(format_report(r));
      if (!r.ok()) code = kExitFail;
    } else if (command == "complex" || command == "degree") {
      FieldPtr F = field();
      Scheme X = parse_scheme(command == "degree" ? "P1" : scheme_name, F);
      RSCochain c = parse_cochain(X, twist, cochain_text);
      std::string what = command == "degree" ? "deg" : op;
      out.doc["op"] = what;
      if (what == "d") {
        RSCochain dc = differential(c);
        out.doc["result"] = cochain_json(dc);
        out.line(to_string(dc));
      } else if (what == "deg") {
        MilnorValue cl = classical_degree(c);
        out.doc["classical"] = {{"degree", cl.degree}, {"value", cl.value}, {"modulus", cl.modulus}};
        if (c.twist % 2 == 0) {
          TwistedMW v = normalized(pushforward_point(c));
          out.doc["result"] = to_string(v);
          out.line(to_string(v));
        } else {
          out.line("classical " + std::to_string(cl.value));
        }
      } else if (what == "chow") {
        int64_t n = chow_degree(c);
        out.doc["result"] = n;
        out.line(std::to_string(n));
      } else if (what == "h0") {
        auto m = h0_membership(c);
        out.doc["result"] = m ? json(to_string(*m)) : json(nullptr);
        out.line(m ? to_string(*m) : "not closed");
        if (!m) code = kExitFail;
      } else {
        if (f_text.empty()) throw DomainError("mu needs --f");
        RSCochain m = mu_f(c, parse_elem(X.function_field(), f_text));
        out.doc["result"] = cochain_json(m);
        out.line(to_string(m));
      }
    } else if (command == "euler") {
      FieldPtr F = field();
      ChowWittClass e = euler_class_line(d, F, parse_poly(F, section_text));
      out.doc["cycle"] = cochain_json(e.cycle);
      out.doc["chow_degree"] = e.chow_degree;
      out.doc["mw_degree"] = e.mw_degree ? json(to_string(*e.mw_degree)) : json(nullptr);
      out.line(to_string(e.cycle));
      out.line("chow degree " + std::to_string(e.chow_degree));
      if (e.mw_degree) out.line("mw degree " + to_string(*e.mw_degree));
    } else if (command == "suite") {
      if (list_suites) {
        out.doc["suites"] = suite_names();
        for (const auto& n : suite_names()) out.line(n);
      } else {
        if (suite_name.empty()) throw DomainError("suite needs a name (or --list)");
        std::vector<std::string> names = suite_name == "all" ? suite_names() : std::vector<std::string>{suite_name};
        if (suite_name != "all" && !has_suite(suite_name)) throw DomainError("unknown suite: " + suite_name);
        json reports = json::array();
        out.doc["seed"] = session.seed;
        for (const auto& n : names) {
          SuiteReport r = run_suite(n, session.seed);
          reports.push_back(report_json(r));
          out.line(n + ": " + format_report(r));
          if (!r.ok()) code = kExitFail;
        }
        out.doc["reports"] = reports;
      }
    }
  } catch (const std::exception& e) {
    if (session.format == "json") {
      std::cout << json{{"schema", "mwcalc/1"}, {"command", command}, {"error", e.what()}}.dump(2) << "\n";
    } else {
      std::cerr << "error: " << command << ": " << e.what() << "\n";
    }
    return kExitUsage;
  }

  out.doc["exit"] = code;
  if (session.format == "json") {
    std::cout << out.doc.dump(2) << "\n";
  } else {
    std::cout << out.text;
  }
  return code;
}
