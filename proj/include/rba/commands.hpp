#pragma once

// Batch commands over a ProblemDocument. Each produces a deterministic JSON
// result body and an exit status: 0 for "true"/"success", 1 for
// "false"/"absent", 2 for input errors.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rba/cohomology.hpp"
#include "rba/deformation.hpp"
#include "rba/graded_lie.hpp"
#include "rba/io.hpp"
#include "rba/leibniz.hpp"
#include "rba/rota_baxter.hpp"

namespace rba {

inline constexpr int kExitTrue = 0;
inline constexpr int kExitFalse = 1;
inline constexpr int kExitInputError = 2;

struct CommandOptions {
  std::optional<std::size_t> degree;
  std::optional<std::string> op;         // --operator
  std::optional<std::string> direction;  // --direction (linear-deform)
  std::optional<std::string> element;    // --element: name or "r1,r2,..."
  std::optional<std::string> series;     // --series
  std::optional<std::string> name;       // --name (equivalence)
  std::optional<std::string> values;     // --values (rb-search)
  std::vector<std::string> generators;   // --generator, repeatable (rigidity)
  std::optional<std::size_t> to_order;   // --to-order
  std::size_t max_degree = 4;
  std::size_t order_cap = 6;
  std::size_t search_budget = 2'000'000;
  unsigned workers = 1;

  CohomologyOptions cohomology() const { return {max_degree, workers}; }
};

struct CommandResult {
  Json body;
  int exit_code = kExitTrue;
};

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "check-leibniz", "check-rep", "check-rb", "rb-system", "rb-search", "cohomology",  "nijenhuis",
      "linear-deform", "equivalence", "obstruction", "extend", "rigidity", "mc-check", "sign-check"};
  return names;
}

namespace detail {

inline int exit_for(const std::string& verdict) {
  return verdict == "true" || verdict == "success" ? kExitTrue : kExitFalse;
}

inline std::string default_operator(const ProblemDocument& doc, const CommandOptions& o) {
  if (o.op) return *o.op;
  if (doc.operators.count("T")) return "T";
  if (doc.operators.size() == 1) return doc.operators.begin()->first;
  throw InputError("no --operator given and the document has no operator named \"T\"");
}

/// --operator NAME, else every operator of the document.
inline std::vector<std::string> selected_operators(const ProblemDocument& doc, const CommandOptions& o) {
  if (o.op) {
    (void)document_operator(doc, *o.op);
    return {*o.op};
  }
  std::vector<std::string> out;
  for (const auto& [name, m] : doc.operators) out.push_back(name);
  if (out.empty()) throw InputError("the document has no operators");
  return out;
}

inline std::vector<std::string> selected_series(const ProblemDocument& doc, const CommandOptions& o) {
  if (o.series) {
    (void)document_series(doc, *o.series);
    return {*o.series};
  }
  std::vector<std::string> out;
  for (const auto& [name, s] : doc.series) out.push_back(name);
  if (out.empty()) throw InputError("the document has no series");
  return out;
}

inline Json arguments_json(const CommandOptions& o) {
  Json a = Json::object();
  if (o.degree) a["degree"] = *o.degree;
  if (o.op) a["operator"] = *o.op;
  if (o.direction) a["direction"] = *o.direction;
  if (o.element) a["element"] = *o.element;
  if (o.series) a["series"] = *o.series;
  if (o.name) a["name"] = *o.name;
  if (o.values) a["values"] = *o.values;
  if (!o.generators.empty()) a["generators"] = o.generators;
  if (o.to_order) a["to_order"] = *o.to_order;
  a["max_degree"] = o.max_degree;
  a["order_cap"] = o.order_cap;
  return a;
}

inline Json report_json(const CohomologyReport& r) {
  Json basis = Json::array();
  for (const auto& c : r.cocycle_basis) basis.push_back(to_json(c.flat()));
  return Json{{"degree", r.degree},
              {"dim_cochains", r.dim_cochains},
              {"dim_cocycles", r.dim_cocycles},
              {"dim_coboundaries", r.dim_coboundaries},
              {"dim_cohomology", r.dim_cohomology},
              {"cocycle_basis", basis}};
}

inline Json failures_json(const HomomorphismCheck& c) {
  Json f = Json::array();
  for (const auto& x : c.failures) f.push_back(Json{{"condition", x.condition}, {"order", x.order}});
  return f;
}

inline Json nijenhuis_failures_json(const NijenhuisCheck& c) {
  Json f = Json::array();
  for (const auto& x : c.failures) {
    Json idx = Json::array();
    for (auto i : x.indices) idx.push_back(i + 1);
    f.push_back(Json{{"condition", x.condition}, {"indices", idx}});
  }
  return f;
}

inline std::vector<Rational> parse_values(const std::string& spec) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = spec.find(',', start);
    out.push_back(parse_rational(spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

// Individual commands. Each fills `results` and returns the verdict.

inline std::string cmd_check_leibniz(const ProblemDocument& doc, const CommandOptions&, Json& results) {
  auto check = check_leibniz_identity(doc.algebra);
  Json v = Json::array();
  for (const auto& x : check.violations)
    v.push_back(Json{{"triple", {x.i + 1, x.j + 1, x.k + 1}}, {"residual", to_json(x.residual)}});
  results["violations"] = v;
  return check.ok() ? "true" : "false";
}

inline std::string cmd_check_rep(const ProblemDocument& doc, const CommandOptions&, Json& results) {
  auto check = check_representation(*doc.rep);
  Json v = Json::array();
  for (const auto& x : check.violations)
    v.push_back(Json{{"axiom", axiom_name(x.axiom)}, {"pair", {x.i + 1, x.j + 1}}, {"residual", to_json(x.residual)}});
  results["violations"] = v;
  return check.ok() ? "true" : "false";
}

inline std::string cmd_check_rb(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  bool all = true;
  Json ops = Json::array();
  for (const auto& name : selected_operators(doc, o)) {
    const LinearOperator t = document_operator(doc, name);
    const Cochain d = rb_defect(t);
    const bool ok = d.is_zero();
    all = all && ok;
    Json r{{"operator", name}, {"rota_baxter", ok}, {"defect", sparse_json(d)}};
    if (ok) {
      const LeibnizAlgebra b = induced_bracket(t);
      Json br = Json::array();
      for (const auto& e : b.nonzero_brackets())
        br.push_back(Json{{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"c", to_string(e.c)}});
      r["induced_brackets"] = br;
    }
    ops.push_back(r);
  }
  results["operators"] = ops;
  return all ? "true" : "false";
}

inline Json polynomial_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& t : p.terms) terms.push_back(Json{{"exponents", t.exponents}, {"coefficient", to_string(t.coefficient)}});
  return terms;
}

inline std::string cmd_rb_system(const ProblemDocument& doc, const CommandOptions&, Json& results) {
  const PolynomialSystem sys = rb_polynomial_system(*doc.rep);
  results["variables"] = sys.variables;
  Json eqs = Json::array();
  for (const auto& e : sys.nonzero_equations())
    eqs.push_back(Json{{"pair", {e.i + 1, e.j + 1}}, {"coordinate", e.k + 1}, {"terms", polynomial_json(e.poly)}});
  results["equations"] = eqs;
  return "success";
}

inline std::string cmd_rb_search(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  SearchOptions opts;
  opts.budget = o.search_budget;
  opts.workers = o.workers;
  std::vector<Rational> values;
  if (o.values) {
    values = parse_values(*o.values);
  } else if (doc.search) {
    values = doc.search->values;
  } else {
    throw InputError("rb-search needs --values or a \"search\" section");
  }
  if (doc.search) {
    opts.free_entries = doc.search->free_entries;
    opts.fixed = doc.search->fixed;
  }
  const auto found = brute_force_search(doc.rep, values, opts);
  Json sols = Json::array();
  for (const auto& t : found) sols.push_back(to_json(t.matrix()));
  Json vals = Json::array();
  for (const auto& v : values) vals.push_back(to_string(v));
  results["values"] = vals;
  results["count"] = found.size();
  results["solutions"] = sols;
  return "success";
}

inline std::string cmd_cohomology(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  const LinearOperator t = document_operator(doc, default_operator(doc, o));
  const auto opts = o.cohomology();
  Json reports = Json::array();
  if (o.degree) {
    reports.push_back(report_json(cohomology_report(t, *o.degree, opts)));
  } else {
    for (std::size_t k = 0; k + 1 <= opts.max_degree; ++k) reports.push_back(report_json(cohomology_report(t, k, opts)));
  }
  results["operator"] = default_operator(doc, o);
  results["reports"] = reports;
  return "success";
}

inline std::string cmd_nijenhuis(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  const std::string name = default_operator(doc, o);
  const LinearOperator t = document_operator(doc, name);
  results["operator"] = name;
  auto describe = [&](const Vector& x) {
    const auto check = check_nijenhuis_element(t, x);
    Json r{{"element", to_json(x)}, {"nijenhuis", check.ok()}, {"failures", nijenhuis_failures_json(check)}};
    if (check.ok()) {
      const LinearOperator tau = trivial_deformation_from_nijenhuis(t, x);
      r["trivial_deformation"] = to_json(tau.matrix());
      r["left_action_is_nijenhuis_operator"] = check_nijenhuis_operator(induced_bracket(t), doc.rep->rho_left(x));
    }
    return std::pair{check.ok(), r};
  };
  if (o.element) {
    auto [ok, r] = describe(document_element(doc, *o.element));
    results["elements"] = Json::array({r});
    return ok ? "true" : "false";
  }
  std::vector<Vector> candidates;
  for (const auto& [k, v] : doc.elements) candidates.push_back(v);
  Json found = Json::array();
  for (const auto& x : find_nijenhuis_elements(t, candidates)) found.push_back(describe(x).second);
  results["elements"] = found;
  return "success";
}

inline std::string cmd_linear_deform(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  const std::string name = default_operator(doc, o);
  const std::string dir = o.direction.value_or("Tau");
  const LinearOperator t = document_operator(doc, name);
  const LinearOperator tau = document_operator(doc, dir);
  const auto check = check_linear_deformation(t, tau);
  results["operator"] = name;
  results["direction"] = dir;
  results["cocycle_residual"] = sparse_json(check.cocycle_residual);
  results["rota_baxter_residual"] = sparse_json(check.rb_residual);
  return check.ok() ? "true" : "false";
}

inline std::string cmd_equivalence(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  std::vector<std::string> names;
  if (o.name) {
    if (!doc.equivalences.count(*o.name)) throw InputError("unknown equivalence \"" + *o.name + "\"");
    names.push_back(*o.name);
  } else {
    for (const auto& [k, v] : doc.equivalences) names.push_back(k);
  }
  if (names.empty()) throw InputError("the document has no equivalences");
  bool all = true;
  Json out = Json::array();
  for (const auto& name : names) {
    const EquivalenceSpec& e = doc.equivalences.at(name);
    Json r{{"name", name}, {"kind", e.kind}};
    HomomorphismCheck check;
    Cochain difference;
    LinearOperator base;
    if (e.kind == "linear") {
      base = document_operator(doc, e.op);
      require_rota_baxter(base);
      const LinearOperator tau1 = document_operator(doc, e.tau1);
      const LinearOperator tau2 = document_operator(doc, e.tau2);
      check = check_linear_equivalence(base, tau1, tau2, e.x);
      difference = tau2.as_cochain() - tau1.as_cochain();
    } else {
      const DeformationSeries d1 = document_series(doc, e.series1);
      const DeformationSeries d2 = document_series(doc, e.series2);
      base = d1.base();
      check = check_formal_equivalence(d1, d2, {e.x, e.higher_phi, e.higher_varphi});
      difference = d2.term_operator(1).as_cochain() - d1.term_operator(1).as_cochain();
    }
    r["equivalent"] = check.ok();
    r["failures"] = failures_json(check);
    // Equivalent deformations have infinitesimals differing by d_T x.
    const Cochain shift = rb_coboundary(base, Cochain::constant(base.module_dim(), e.x));
    r["infinitesimals_differ_by_coboundary_of_x"] = difference == shift;
    all = all && check.ok();
    out.push_back(r);
  }
  results["equivalences"] = out;
  return all ? "true" : "false";
}

inline std::string cmd_obstruction(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  bool all = true;
  Json out = Json::array();
  for (const auto& name : selected_series(doc, o)) {
    const DeformationSeries d = document_series(doc, name);
    const Cochain ob = obstruction_cocycle(d);
    const auto next = check_extendable(d, o.cohomology());
    Json r{{"series", name},
           {"order", d.order()},
           {"obstruction", sparse_json(ob)},
           {"is_cocycle", is_cocycle(d.base(), ob)},
           {"class_vanishes", next.has_value()}};
    if (next) r["next_term"] = to_json(next->matrix());
    all = all && next.has_value();
    out.push_back(r);
  }
  results["series"] = out;
  return all ? "true" : "false";
}

inline std::string cmd_extend(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  bool all = true;
  Json out = Json::array();
  for (const auto& name : selected_series(doc, o)) {
    const DeformationSeries d = document_series(doc, name);
    const std::size_t target = o.to_order.value_or(d.order() + 1);
    ExtensionOptions opts;
    opts.order_cap = o.order_cap;
    opts.cohomology = o.cohomology();
    const auto ext = extend_series(d, target, opts);
    Json r{{"series", name}, {"target_order", target}, {"extended", ext.succeeded()}, {"reached", series_json(ext.series)}};
    if (!ext.succeeded()) {
      r["blocked_at"] = *ext.blocked_at;
      r["obstruction"] = sparse_json(*ext.obstruction);
    }
    all = all && ext.succeeded();
    out.push_back(r);
  }
  results["series"] = out;
  return all ? "success" : "absent";
}

inline std::string cmd_rigidity(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  const std::string name = default_operator(doc, o);
  const LinearOperator t = document_operator(doc, name);
  std::vector<Vector> gens;
  if (!o.generators.empty()) {
    for (const auto& g : o.generators) gens.push_back(document_element(doc, g));
  } else {
    std::vector<Vector> candidates;
    for (const auto& [k, v] : doc.elements) candidates.push_back(v);
    gens = find_nijenhuis_elements(t, candidates);
  }
  Json g = Json::array();
  for (const auto& x : gens) g.push_back(to_json(x));
  const bool certified = rigidity_certificate(t, gens, o.cohomology());
  results["operator"] = name;
  results["generators"] = g;
  results["dim_cocycles"] = cohomology_report(t, 1, o.cohomology()).dim_cocycles;
  results["rigid"] = certified ? Json("certified") : Json("inconclusive");
  return certified ? "true" : "false";
}

inline std::string cmd_mc_check(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  bool all = true;
  Json ops = Json::array();
  for (const auto& name : selected_operators(doc, o)) {
    const LinearOperator t = document_operator(doc, name);
    const bool mc = maurer_cartan_check(t);
    const bool rb = check_rota_baxter(t);
    all = all && mc;
    ops.push_back(Json{{"operator", name}, {"maurer_cartan", mc}, {"rota_baxter", rb}, {"agree", mc == rb}});
  }
  results["operators"] = ops;
  return all ? "true" : "false";
}

inline std::string cmd_sign_check(const ProblemDocument& doc, const CommandOptions& o, Json& results) {
  const std::string name = default_operator(doc, o);
  const LinearOperator t = document_operator(doc, name);
  require_rota_baxter(t);
  std::vector<std::size_t> degrees;
  if (o.degree) degrees.push_back(*o.degree);
  else degrees = {1, 2};
  bool all = true;
  Json per = Json::array();
  for (auto k : degrees) {
    if (k == 0) throw InputError("sign-check needs degree >= 1");
    require_degree_within_cap(k + 1, o.cohomology());
    const std::size_t n = t.algebra_dim();
    const std::size_t m = t.module_dim();
    const std::size_t count = int_pow(m, k) * n;
    Json mismatches = Json::array();
    for (std::size_t c = 0; c < count; ++c) {
      if (!sign_relation_check(t, unit_cochain(k, m, n, c))) mismatches.push_back(c);
    }
    all = all && mismatches.empty();
    per.push_back(Json{{"degree", k}, {"checked", count}, {"mismatched_basis_cochains", mismatches}});
  }
  results["operator"] = name;
  results["degrees"] = per;
  return all ? "true" : "false";
}

}  // namespace detail

/// Runs one command; errors in the input propagate as exceptions.
inline CommandResult run_command(const ProblemDocument& doc, const std::string& command, const CommandOptions& o) {
  using Handler = std::function<std::string(const ProblemDocument&, const CommandOptions&, Json&)>;
  static const std::map<std::string, Handler> handlers = {
      {"check-leibniz", detail::cmd_check_leibniz}, {"check-rep", detail::cmd_check_rep},
      {"check-rb", detail::cmd_check_rb},           {"rb-system", detail::cmd_rb_system},
      {"rb-search", detail::cmd_rb_search},         {"cohomology", detail::cmd_cohomology},
      {"nijenhuis", detail::cmd_nijenhuis},         {"linear-deform", detail::cmd_linear_deform},
      {"equivalence", detail::cmd_equivalence},     {"obstruction", detail::cmd_obstruction},
      {"extend", detail::cmd_extend},               {"rigidity", detail::cmd_rigidity},
      {"mc-check", detail::cmd_mc_check},           {"sign-check", detail::cmd_sign_check},
  };
  auto it = handlers.find(command);
  if (it == handlers.end()) {
    std::string names;
    for (const auto& n : command_names()) names += (names.empty() ? "" : ", ") + n;
    throw InputError("unknown command \"" + command + "\" (available: " + names + ")");
  }
  Json results = Json::object();
  const std::string verdict = it->second(doc, o, results);
  CommandResult r;
  r.body["command"] = command;
  r.body["arguments"] = detail::arguments_json(o);
  r.body["verdict"] = verdict;
  r.body["results"] = std::move(results);
  r.exit_code = detail::exit_for(verdict);
  return r;
}

/// Result body for a failed command.
inline CommandResult error_result(const std::string& command, const std::exception& e) {
  CommandResult r;
  r.body["command"] = command;
  r.body["verdict"] = "error";
  Json errors = Json::array();
  if (const auto* de = dynamic_cast<const DocumentError*>(&e)) {
    for (const auto& i : de->issues()) errors.push_back(Json{{"path", i.path}, {"message", i.message}});
  } else {
    errors.push_back(Json{{"path", ""}, {"message", e.what()}});
  }
  r.body["errors"] = errors;
  r.exit_code = kExitInputError;
  return r;
}

/// Parses `text` and runs the command; every error becomes exit status 2.
inline CommandResult run_command_text(std::string_view text, const std::string& command, const CommandOptions& o) {
  try {
    return run_command(parse_document(text), command, o);
  } catch (const std::invalid_argument& e) {
    return error_result(command, e);
  } catch (const CapExceededError& e) {
    return error_result(command, e);
  }
}

}  // namespace rba
