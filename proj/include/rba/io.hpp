#pragma once

// JSON document format. Basis indices are 1-based in every document; all
// rationals are strings "p" or "p/q" (plain JSON integers are accepted on
// input). See FORMAT.md.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rba/deformation.hpp"
#include "rba/errors.hpp"
#include "rba/leibniz.hpp"
#include "rba/rational.hpp"
#include "rba/rota_baxter.hpp"

namespace rba {

using Json = nlohmann::ordered_json;

struct SchemaIssue {
  std::string path;  // JSON pointer
  std::string message;
};

/// Every problem found while validating a document.
class DocumentError : public InputError {
 public:
  explicit DocumentError(std::vector<SchemaIssue> issues)
      : InputError(summary(issues)), issues_(std::move(issues)) {}
  DocumentError(const std::string& path, const std::string& message)
      : DocumentError(std::vector<SchemaIssue>{{path, message}}) {}
  const std::vector<SchemaIssue>& issues() const noexcept { return issues_; }

 private:
  static std::string summary(const std::vector<SchemaIssue>& issues) {
    std::string s = "invalid document";
    for (const auto& i : issues) s += "\n  " + (i.path.empty() ? std::string("/") : i.path) + ": " + i.message;
    return s;
  }
  std::vector<SchemaIssue> issues_;
};

struct SeriesSpec {
  std::string base;  // operator name
  std::vector<Matrix> terms;
};

struct EquivalenceSpec {
  std::string kind;  // "linear" or "formal"
  // linear
  std::string op, tau1, tau2;
  // formal
  std::string series1, series2;
  Vector x;
  std::vector<Matrix> higher_phi, higher_varphi;
};

struct SearchSpec {
  std::vector<Rational> values;
  std::vector<std::size_t> free_entries;  // row-major, 0-based
  std::optional<Matrix> fixed;
};

struct ProblemDocument {
  LeibnizAlgebra algebra;
  bool regular = false;
  RepresentationPtr rep;  // built without validating axioms
  std::map<std::string, Matrix> operators;
  std::map<std::string, SeriesSpec> series;
  std::map<std::string, Vector> elements;
  std::map<std::string, EquivalenceSpec> equivalences;
  std::optional<SearchSpec> search;

  std::size_t algebra_dim() const { return algebra.dim(); }
  std::size_t module_dim() const { return rep->dim; }
};

// ---------------------------------------------------------------------------
// Scalars, vectors, matrices.

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(to_json(m.row(r)));
  return rows;
}

/// Dense cochain: "flat" lists coefficients in the documented flattening.
inline Json to_json(const Cochain& c) {
  Json j;
  j["degree"] = c.degree();
  j["source_dim"] = c.source_dim();
  j["target_dim"] = c.target_dim();
  j["flat"] = to_json(c.flat());
  return j;
}

/// Nonzero values only, with 1-based argument tuples.
inline Json sparse_json(const Cochain& c) {
  Json out = Json::array();
  for_each_tuple(c.degree(), c.source_dim(), [&](std::span<const std::size_t> t) {
    const Vector v = c.value(t);
    if (is_zero(v)) return;
    Json args = Json::array();
    for (auto i : t) args.push_back(i + 1);
    out.push_back(Json{{"args", args}, {"value", to_json(v)}});
  });
  return out;
}

namespace detail {

class Parser {
 public:
  std::vector<SchemaIssue> issues;

  void fail(const std::string& path, const std::string& msg) { issues.push_back({path, msg}); }

  std::optional<Rational> rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) {
      fail(path, "expected a rational string");
      return std::nullopt;
    }
    try {
      return parse_rational(j.get<std::string>());
    } catch (const InputError& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<std::size_t> count(const Json& j, const std::string& path, std::size_t lo, std::size_t hi) {
    if (!j.is_number_integer() || j.get<long long>() < static_cast<long long>(lo) ||
        j.get<long long>() > static_cast<long long>(hi)) {
      fail(path, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return static_cast<std::size_t>(j.get<long long>());
  }

  std::optional<Vector> vector(const Json& j, const std::string& path, std::size_t len) {
    if (!j.is_array() || j.size() != len) {
      fail(path, "expected an array of " + std::to_string(len) + " rationals");
      return std::nullopt;
    }
    Vector v(len);
    bool ok = true;
    for (std::size_t i = 0; i < len; ++i) {
      auto r = rational(j[i], path + "/" + std::to_string(i));
      if (r) v[i] = *r; else ok = false;
    }
    if (!ok) return std::nullopt;
    return v;
  }

  std::optional<Matrix> matrix(const Json& j, const std::string& path, std::size_t rows, std::size_t cols) {
    if (!j.is_array() || j.size() != rows) {
      fail(path, "expected " + std::to_string(rows) + " rows of " + std::to_string(cols) + " entries");
      return std::nullopt;
    }
    Matrix m(rows, cols);
    bool ok = true;
    for (std::size_t r = 0; r < rows; ++r) {
      auto row = vector(j[r], path + "/" + std::to_string(r), cols);
      if (!row) {
        ok = false;
        continue;
      }
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = (*row)[c];
    }
    if (!ok) return std::nullopt;
    return m;
  }

  std::optional<std::vector<Matrix>> matrices(const Json& j, const std::string& path, std::size_t rows,
                                              std::size_t cols) {
    if (!j.is_array()) {
      fail(path, "expected an array of matrices");
      return std::nullopt;
    }
    std::vector<Matrix> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto m = matrix(j[i], path + "/" + std::to_string(i), rows, cols);
      if (m) out.push_back(std::move(*m)); else ok = false;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<std::string> string(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
      fail(path + "/" + key, "expected a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }
};

inline bool has_only(Parser& p, const Json& obj, const std::string& path, std::initializer_list<const char*> keys) {
  bool ok = true;
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) {
      p.fail(path + "/" + it.key(), "unknown field");
      ok = false;
    }
  }
  return ok;
}

}  // namespace detail

/// The regular representation without checking the Leibniz identity, so that
/// checkers can still report on a broken algebra.
inline Representation unchecked_regular_representation(const LeibnizAlgebra& a) {
  const std::size_t n = a.dim();
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < n; ++i) {
    l.push_back(left_multiplication(a, basis_vector(n, i)));
    r.push_back(right_multiplication(a, basis_vector(n, i)));
  }
  return Representation(a, n, std::move(l), std::move(r));
}

/// Parses and validates a document; throws DocumentError listing every issue.
inline ProblemDocument parse_document(const Json& root) {
  detail::Parser p;
  ProblemDocument doc;
  if (!root.is_object()) throw DocumentError("", "document must be a JSON object");
  detail::has_only(p, root, "", {"algebra", "representation", "operators", "series", "elements", "equivalences", "search"});

  // algebra
  std::size_t n = 0;
  const auto alg = root.find("algebra");
  if (alg == root.end() || !alg->is_object()) {
    throw DocumentError("/algebra", "missing algebra object");
  }
  detail::has_only(p, *alg, "/algebra", {"dim", "brackets"});
  if (auto d = alg->contains("dim") ? p.count((*alg)["dim"], "/algebra/dim", 0, 64) : std::nullopt) {
    n = *d;
  } else {
    if (!alg->contains("dim")) p.fail("/algebra/dim", "missing");
    throw DocumentError(p.issues);
  }
  std::vector<BracketEntry> brackets;
  if (alg->contains("brackets")) {
    const Json& bl = (*alg)["brackets"];
    if (!bl.is_array()) p.fail("/algebra/brackets", "expected an array");
    for (std::size_t e = 0; bl.is_array() && e < bl.size(); ++e) {
      const std::string path = "/algebra/brackets/" + std::to_string(e);
      const Json& b = bl[e];
      if (!b.is_object()) {
        p.fail(path, "expected an object {i, j, k, c}");
        continue;
      }
      detail::has_only(p, b, path, {"i", "j", "k", "c"});
      std::optional<std::size_t> idx[3];
      const char* names[3] = {"i", "j", "k"};
      for (int q = 0; q < 3; ++q) {
        if (!b.contains(names[q])) p.fail(path + "/" + names[q], "missing");
        else idx[q] = p.count(b[names[q]], path + "/" + names[q], 1, n);
      }
      std::optional<Rational> c;
      if (!b.contains("c")) p.fail(path + "/c", "missing");
      else c = p.rational(b["c"], path + "/c");
      if (idx[0] && idx[1] && idx[2] && c) brackets.push_back({*idx[0] - 1, *idx[1] - 1, *idx[2] - 1, *c});
    }
  }
  if (!p.issues.empty()) throw DocumentError(p.issues);
  // Repeated (i, j, k) triples add up.
  doc.algebra = LeibnizAlgebra::from_brackets(n, brackets);

  // representation
  const auto rj = root.find("representation");
  if (rj == root.end() || (rj->is_string() && rj->get<std::string>() == "regular")) {
    doc.regular = true;
    doc.rep = share(unchecked_regular_representation(doc.algebra));
  } else if (rj->is_object()) {
    detail::has_only(p, *rj, "/representation", {"dim", "rhoL", "rhoR"});
    auto m = rj->contains("dim") ? p.count((*rj)["dim"], "/representation/dim", 0, 64) : std::nullopt;
    if (!rj->contains("dim")) p.fail("/representation/dim", "missing");
    if (!m) throw DocumentError(p.issues);
    std::optional<std::vector<Matrix>> sides[2];
    const char* keys[2] = {"rhoL", "rhoR"};
    for (int s = 0; s < 2; ++s) {
      const std::string path = std::string("/representation/") + keys[s];
      if (!rj->contains(keys[s])) {
        p.fail(path, "missing");
        continue;
      }
      const Json& arr = (*rj)[keys[s]];
      if (!arr.is_array() || arr.size() != n) {
        p.fail(path, "expected one " + std::to_string(*m) + "x" + std::to_string(*m) + " matrix per basis vector (" +
                         std::to_string(n) + ")");
        continue;
      }
      sides[s] = p.matrices(arr, path, *m, *m);
    }
    if (!p.issues.empty()) throw DocumentError(p.issues);
    doc.rep = share(Representation(doc.algebra, *m, std::move(*sides[0]), std::move(*sides[1])));
  } else {
    throw DocumentError("/representation", "expected \"regular\" or an object {dim, rhoL, rhoR}");
  }
  const std::size_t m = doc.rep->dim;

  auto object_of = [&](const char* key) -> const Json* {
    auto it = root.find(key);
    if (it == root.end()) return nullptr;
    if (!it->is_object()) {
      p.fail(std::string("/") + key, "expected an object keyed by name");
      return nullptr;
    }
    return &*it;
  };

  if (const Json* ops = object_of("operators")) {
    for (auto it = ops->begin(); it != ops->end(); ++it) {
      if (auto mat = p.matrix(it.value(), "/operators/" + it.key(), n, m)) doc.operators.emplace(it.key(), std::move(*mat));
    }
  }
  if (const Json* els = object_of("elements")) {
    for (auto it = els->begin(); it != els->end(); ++it) {
      if (auto v = p.vector(it.value(), "/elements/" + it.key(), n)) doc.elements.emplace(it.key(), std::move(*v));
    }
  }
  auto need_operator = [&](const std::string& name, const std::string& path) {
    if (!doc.operators.count(name)) p.fail(path, "unknown operator \"" + name + "\"");
  };
  if (const Json* sj = object_of("series")) {
    for (auto it = sj->begin(); it != sj->end(); ++it) {
      const std::string path = "/series/" + it.key();
      const Json& s = it.value();
      if (!s.is_object()) {
        p.fail(path, "expected an object {base, terms}");
        continue;
      }
      detail::has_only(p, s, path, {"base", "terms"});
      SeriesSpec spec;
      if (auto b = p.string(s, "base", path)) {
        spec.base = *b;
        need_operator(*b, path + "/base");
      }
      if (!s.contains("terms")) p.fail(path + "/terms", "missing");
      else if (auto t = p.matrices(s["terms"], path + "/terms", n, m)) spec.terms = std::move(*t);
      doc.series.emplace(it.key(), std::move(spec));
    }
  }
  if (const Json* ej = object_of("equivalences")) {
    for (auto it = ej->begin(); it != ej->end(); ++it) {
      const std::string path = "/equivalences/" + it.key();
      const Json& e = it.value();
      if (!e.is_object()) {
        p.fail(path, "expected an object");
        continue;
      }
      EquivalenceSpec spec;
      auto kind = p.string(e, "kind", path);
      if (!kind) continue;
      spec.kind = *kind;
      if (e.contains("x")) {
        if (auto x = p.vector(e["x"], path + "/x", n)) spec.x = std::move(*x);
      } else {
        spec.x = zero_vector(n);
      }
      if (spec.kind == "linear") {
        detail::has_only(p, e, path, {"kind", "operator", "tau1", "tau2", "x"});
        for (auto [key, dst] : std::initializer_list<std::pair<const char*, std::string*>>{
                 {"operator", &spec.op}, {"tau1", &spec.tau1}, {"tau2", &spec.tau2}}) {
          if (auto s = p.string(e, key, path)) {
            *dst = *s;
            need_operator(*s, path + "/" + key);
          }
        }
      } else if (spec.kind == "formal") {
        detail::has_only(p, e, path, {"kind", "series1", "series2", "x", "higher_phi", "higher_varphi"});
        for (auto [key, dst] : std::initializer_list<std::pair<const char*, std::string*>>{
                 {"series1", &spec.series1}, {"series2", &spec.series2}}) {
          if (auto s = p.string(e, key, path)) {
            *dst = *s;
            if (!doc.series.count(*s)) p.fail(path + "/" + key, "unknown series \"" + *s + "\"");
          }
        }
        if (e.contains("higher_phi"))
          if (auto h = p.matrices(e["higher_phi"], path + "/higher_phi", n, n)) spec.higher_phi = std::move(*h);
        if (e.contains("higher_varphi"))
          if (auto h = p.matrices(e["higher_varphi"], path + "/higher_varphi", m, m)) spec.higher_varphi = std::move(*h);
      } else {
        p.fail(path + "/kind", "expected \"linear\" or \"formal\"");
      }
      doc.equivalences.emplace(it.key(), std::move(spec));
    }
  }
  if (auto sj = root.find("search"); sj != root.end()) {
    if (!sj->is_object()) {
      p.fail("/search", "expected an object {values, free_entries, fixed}");
    } else {
      detail::has_only(p, *sj, "/search", {"values", "free_entries", "fixed"});
      SearchSpec spec;
      if (!sj->contains("values") || !(*sj)["values"].is_array()) {
        p.fail("/search/values", "expected an array of rationals");
      } else {
        const Json& vals = (*sj)["values"];
        for (std::size_t i = 0; i < vals.size(); ++i)
          if (auto r = p.rational(vals[i], "/search/values/" + std::to_string(i))) spec.values.push_back(*r);
      }
      if (sj->contains("free_entries")) {
        const Json& fe = (*sj)["free_entries"];
        if (!fe.is_array()) p.fail("/search/free_entries", "expected an array of [row, column] pairs");
        for (std::size_t i = 0; fe.is_array() && i < fe.size(); ++i) {
          const std::string path = "/search/free_entries/" + std::to_string(i);
          if (!fe[i].is_array() || fe[i].size() != 2) {
            p.fail(path, "expected [row, column]");
            continue;
          }
          auto r = p.count(fe[i][0], path + "/0", 1, n);
          auto c = p.count(fe[i][1], path + "/1", 1, m);
          if (r && c) spec.free_entries.push_back((*r - 1) * m + (*c - 1));
        }
      }
      if (sj->contains("fixed"))
        if (auto f = p.matrix((*sj)["fixed"], "/search/fixed", n, m)) spec.fixed = std::move(*f);
      doc.search = std::move(spec);
    }
  }
  if (!p.issues.empty()) throw DocumentError(p.issues);
  return doc;
}

inline ProblemDocument parse_document(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw DocumentError("", std::string("malformed JSON: ") + e.what());
  }
  return parse_document(root);
}

// Text overloads; without these a string would also convert to Json.
inline ProblemDocument parse_document(const std::string& text) { return parse_document(std::string_view(text)); }
inline ProblemDocument parse_document(const char* text) { return parse_document(std::string_view(text)); }

/// Canonical serialization; parse_document(serialize(doc)) reproduces doc.
inline Json serialize(const ProblemDocument& doc) {
  Json root;
  Json brackets = Json::array();
  for (const auto& b : doc.algebra.nonzero_brackets())
    brackets.push_back(Json{{"i", b.i + 1}, {"j", b.j + 1}, {"k", b.k + 1}, {"c", to_string(b.c)}});
  root["algebra"] = Json{{"dim", doc.algebra.dim()}, {"brackets", brackets}};
  if (doc.regular) {
    root["representation"] = "regular";
  } else {
    Json l = Json::array(), r = Json::array();
    for (const auto& x : doc.rep->left) l.push_back(to_json(x));
    for (const auto& x : doc.rep->right) r.push_back(to_json(x));
    root["representation"] = Json{{"dim", doc.rep->dim}, {"rhoL", l}, {"rhoR", r}};
  }
  if (!doc.operators.empty()) {
    Json o = Json::object();
    for (const auto& [name, mat] : doc.operators) o[name] = to_json(mat);
    root["operators"] = o;
  }
  if (!doc.series.empty()) {
    Json s = Json::object();
    for (const auto& [name, spec] : doc.series) {
      Json terms = Json::array();
      for (const auto& t : spec.terms) terms.push_back(to_json(t));
      s[name] = Json{{"base", spec.base}, {"terms", terms}};
    }
    root["series"] = s;
  }
  if (!doc.elements.empty()) {
    Json e = Json::object();
    for (const auto& [name, v] : doc.elements) e[name] = to_json(v);
    root["elements"] = e;
  }
  if (!doc.equivalences.empty()) {
    Json e = Json::object();
    for (const auto& [name, spec] : doc.equivalences) {
      Json j;
      j["kind"] = spec.kind;
      if (spec.kind == "linear") {
        j["operator"] = spec.op;
        j["tau1"] = spec.tau1;
        j["tau2"] = spec.tau2;
        j["x"] = to_json(spec.x);
      } else {
        j["series1"] = spec.series1;
        j["series2"] = spec.series2;
        j["x"] = to_json(spec.x);
        Json hp = Json::array(), hv = Json::array();
        for (const auto& h : spec.higher_phi) hp.push_back(to_json(h));
        for (const auto& h : spec.higher_varphi) hv.push_back(to_json(h));
        j["higher_phi"] = hp;
        j["higher_varphi"] = hv;
      }
      e[name] = j;
    }
    root["equivalences"] = e;
  }
  if (doc.search) {
    Json s;
    Json vals = Json::array();
    for (const auto& v : doc.search->values) vals.push_back(to_string(v));
    s["values"] = vals;
    const std::size_t m = doc.module_dim();
    Json fe = Json::array();
    for (auto e : doc.search->free_entries) fe.push_back(Json::array({e / m + 1, e % m + 1}));
    s["free_entries"] = fe;
    if (doc.search->fixed) s["fixed"] = to_json(*doc.search->fixed);
    root["search"] = s;
  }
  return root;
}

// Accessors that turn document names into library objects.

inline LinearOperator document_operator(const ProblemDocument& doc, const std::string& name) {
  auto it = doc.operators.find(name);
  if (it == doc.operators.end()) {
    std::string avail;
    for (const auto& [k, v] : doc.operators) avail += (avail.empty() ? "" : ", ") + k;
    throw InputError("unknown operator \"" + name + "\" (available: " + (avail.empty() ? "none" : avail) + ")");
  }
  return LinearOperator(doc.rep, it->second);
}

inline DeformationSeries document_series(const ProblemDocument& doc, const std::string& name) {
  auto it = doc.series.find(name);
  if (it == doc.series.end()) {
    std::string avail;
    for (const auto& [k, v] : doc.series) avail += (avail.empty() ? "" : ", ") + k;
    throw InputError("unknown series \"" + name + "\" (available: " + (avail.empty() ? "none" : avail) + ")");
  }
  return DeformationSeries(document_operator(doc, it->second.base), it->second.terms);
}

/// A named element of the document, or a literal "r1,r2,...".
inline Vector document_element(const ProblemDocument& doc, const std::string& spec) {
  if (auto it = doc.elements.find(spec); it != doc.elements.end()) return it->second;
  Vector v;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const std::size_t comma = spec.find(',', start);
    const std::string part = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      v.push_back(parse_rational(part));
    } catch (const InputError&) {
      throw InputError("\"" + spec + "\" is neither a named element nor a comma-separated vector");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != doc.algebra_dim()) {
    throw InputError("element \"" + spec + "\" has " + std::to_string(v.size()) + " entries, expected " +
                     std::to_string(doc.algebra_dim()));
  }
  return v;
}

inline Json series_json(const DeformationSeries& d) {
  Json terms = Json::array();
  for (const auto& t : d.terms()) terms.push_back(to_json(t));
  return Json{{"base", to_json(d.base().matrix())}, {"terms", terms}};
}

}  // namespace rba
