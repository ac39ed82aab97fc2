// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fixtures.hpp"

using namespace rba;
using namespace rba::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

const std::vector<Rational>& grid_values() {
  static const std::vector<Rational> v = {Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
  return v;
}

// The 5-element subsets of the nine entries of a 3x3 matrix.
std::vector<std::vector<std::size_t>> five_subsets() {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 0; mask < (1u << 9); ++mask) {
    if (__builtin_popcount(mask) != 5) continue;
    std::vector<std::size_t> s;
    for (std::size_t e = 0; e < 9; ++e)
      if (mask & (1u << e)) s.push_back(e);
    out.push_back(s);
  }
  return out;
}

bool in_families(const Matrix& t) { return in_family_i(t) || in_family_ii(t); }

std::string key(const Matrix& m) {
  std::string s;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += to_string(m(r, c)) + ",";
  return s;
}

// Every distinct candidate seen by criterion 1, kept for criterion 5.
std::vector<Matrix> g_grid_candidates;

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto rep = g3_regular();
  std::set<std::string> seen;
  std::size_t runs = 0, evaluated = 0, found_total = 0;
  for (const auto& free : five_subsets()) {
    ++runs;
    SearchOptions opts;
    opts.free_entries = free;
    const auto found = brute_force_search(rep, grid_values(), opts);
    std::set<std::string> got;
    for (const auto& t : found) got.insert(key(t.matrix()));
    found_total += found.size();
    // Oracle enumeration of the same grid.
    std::set<std::string> want;
    std::vector<std::size_t> d(free.size(), 0);
    for (;;) {
      Matrix cand(3, 3);
      for (std::size_t k = 0; k < free.size(); ++k) cand(free[k] / 3, free[k] % 3) = grid_values()[d[k]];
      ++evaluated;
      if (in_families(cand)) want.insert(key(cand));
      if (seen.insert(key(cand)).second) g_grid_candidates.push_back(cand);
      std::size_t k = 0;
      while (k < d.size() && d[k] == grid_values().size() - 1) d[k++] = 0;
      if (k == d.size()) break;
      ++d[k];
    }
    if (got != want) {
      std::size_t fp = 0, fn = 0;
      for (const auto& g : got) fp += want.count(g) ? 0 : 1;
      for (const auto& w : want) fn += got.count(w) ? 0 : 1;
      fail(o, std::to_string(fp) + " false positives, " + std::to_string(fn) + " false negatives in a run");
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60) fail(o, "runtime " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream ss;
    ss << runs << " runs of <= 5 free entries, " << evaluated << " candidates, " << found_total
       << " operators found, all in families (i)/(ii), none missed; " << secs << " s";
    o.detail = ss.str();
  }
  return o;
}

using Normalized = std::vector<std::pair<std::vector<unsigned>, Rational>>;

// Scale so the first monomial has coefficient 1; this identifies p and c*p.
Normalized normalize(const std::map<std::vector<unsigned>, Rational>& p) {
  Normalized out(p.begin(), p.end());
  const Rational lead = out.front().second;
  for (auto& t : out) t.second /= lead;
  return out;
}

Outcome criterion2() {
  Outcome o;
  const auto sys = rb_polynomial_system(*g3_regular());
  std::set<Normalized> got;
  for (const auto& e : sys.nonzero_equations()) {
    std::map<std::vector<unsigned>, Rational> p;
    for (const auto& t : e.poly.terms) p[t.exponents] += t.coefficient;
    got.insert(normalize(p));
  }
  // Relations listed in the worked example, a_pq at index 3(p-1) + (q-1).
  auto mono = [](int a, int b) {
    std::vector<unsigned> e(9, 0);
    ++e[3 * (a / 10 - 1) + (a % 10 - 1)];
    ++e[3 * (b / 10 - 1) + (b % 10 - 1)];
    return e;
  };
  using Term = std::tuple<int, int, int>;
  const std::vector<std::vector<Term>> listed = {
      {{1, 11, 11}, {-2, 11, 33}}, {{1, 11, 13}}, {{1, 11, 23}},
      {{1, 11, 12}, {-1, 12, 33}}, {{1, 12, 13}}, {{1, 12, 23}},
      {{1, 11, 13}, {-1, 13, 33}}, {{1, 13, 13}}, {{1, 13, 23}},
      {{1, 12, 11}, {-1, 12, 33}}, {{1, 13, 11}, {-1, 13, 33}},
      {{1, 12, 12}}, {{1, 13, 13}}, {{1, 12, 13}},
  };
  std::set<Normalized> want;
  for (const auto& terms : listed) {
    std::map<std::vector<unsigned>, Rational> p;
    for (const auto& [c, a, b] : terms) p[mono(a, b)] += c;
    want.insert(normalize(p));
  }
  if (got != want) {
    std::size_t extra = 0, missing = 0;
    for (const auto& g : got) extra += want.count(g) ? 0 : 1;
    for (const auto& w : want) missing += got.count(w) ? 0 : 1;
    fail(o, std::to_string(extra) + " unexpected and " + std::to_string(missing) + " missing relations");
  } else {
    o.detail = std::to_string(sys.nonzero_equations().size()) + " nonzero equations reduce to the " +
               std::to_string(want.size()) + " listed relations";
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto fixtures = all_fixtures();
  Rng rng(2024);
  std::size_t leibniz = 0, rep_ok = 0, hom = 0, dd = 0;
  const std::size_t instances = 500;
  for (std::size_t i = 0; i < instances; ++i) {
    const auto& f = fixtures[i % fixtures.size()];
    const LinearOperator t = random_rb(f, rng);
    if (!check_rota_baxter(t)) {
      fail(o, "generator produced a non-Rota-Baxter operator on " + f.name);
      continue;
    }
    const LeibnizAlgebra induced = induced_bracket(t);
    if (check_leibniz_identity(induced).ok()) ++leibniz;
    else fail(o, "induced bracket not Leibniz on " + f.name);
    if (check_representation(induced_representation(t)).ok()) ++rep_ok;
    else fail(o, "induced representation invalid on " + f.name);
    bool h = true;
    for (std::size_t u = 0; u < t.module_dim(); ++u)
      for (std::size_t v = 0; v < t.module_dim(); ++v)
        h = h && t.apply(induced.bracket_basis(u, v)) ==
                     f.rep->algebra.bracket(t.matrix().column(u), t.matrix().column(v));
    if (h) ++hom;
    else fail(o, "T is not a homomorphism on " + f.name);
    bool sq = true;
    for (std::size_t k = 0; k <= 2; ++k) sq = sq && (coboundary_matrix(t, k + 1) * coboundary_matrix(t, k)).is_zero();
    if (sq) ++dd;
    else fail(o, "d_T d_T != 0 on " + f.name);
  }
  const double secs = seconds_since(t0);
  if (secs >= 300) fail(o, "runtime " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream ss;
    ss << instances << " instances: induced Leibniz " << leibniz << ", induced representation " << rep_ok
       << ", homomorphism " << hom << ", d_T d_T = 0 at degrees 0-2 " << dd << "; " << secs << " s";
    o.detail = ss.str();
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  Rng rng(77);
  std::size_t checked = 0;
  for (const auto& f : all_fixtures()) {
    for (int it = 0; it < 10; ++it) {
      const LinearOperator t = random_rb(f, rng);
      for (std::size_t k = 1; k <= 2; ++k) {
        const Cochain c = rng.cochain(k, t.module_dim(), t.algebra_dim());
        Cochain rhs = d_T(t, c);
        if (k % 2 == 0) rhs = -rhs;
        ++checked;
        if (!(rb_coboundary(t, c) == rhs)) fail(o, "mismatch on " + f.name + " degree " + std::to_string(k));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " random cochains, exact agreement";
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto rep = g3_regular();
  std::size_t grid = 0, rb = 0;
  for (const auto& m : g_grid_candidates) {
    const LinearOperator t(rep, m);
    const bool r = check_rota_baxter(t);
    ++grid;
    rb += r ? 1 : 0;
    if (maurer_cartan_check(t) != r) fail(o, "disagreement on grid candidate " + key(m));
  }
  if (g_grid_candidates.empty()) fail(o, "no grid candidates recorded");
  Rng rng(5);
  std::size_t random_rb_count = 0;
  for (int i = 0; i < 200; ++i) {
    const Matrix m = rng.matrix(3, 3);
    const LinearOperator t(rep, m);
    const bool r = check_rota_baxter(t);
    random_rb_count += r ? 1 : 0;
    if (maurer_cartan_check(t) != r) fail(o, "disagreement on random matrix " + key(m));
  }
  if (o.pass) {
    o.detail = std::to_string(grid) + " grid candidates (" + std::to_string(rb) + " Rota-Baxter) and 200 random matrices (" +
               std::to_string(random_rb_count) + " Rota-Baxter) agree";
  }
  return o;
}

// A random valid series of order <= n built by greedy extension with a random
// cocycle added at each step.
DeformationSeries random_series(const LinearOperator& t, std::size_t n, Rng& rng) {
  const auto z1 = cohomology_report(t, 1).cocycle_basis;
  auto random_z1 = [&]() {
    Vector v = zero_vector(t.algebra_dim() * t.module_dim());
    for (const auto& b : z1) add_scaled(v, rng.rational(), b.flat());
    return Cochain::from_flat(1, t.module_dim(), t.algebra_dim(), v).to_matrix();
  };
  DeformationSeries d(t, {random_z1()});
  const Matrix dm = coboundary_matrix(t, 1);
  while (d.order() < n) {
    const Cochain ob = obstruction_cocycle(d);
    auto sol = solve(dm, (-ob).flat());
    if (!sol) break;
    d = d.extended(Cochain::from_flat(1, t.module_dim(), t.algebra_dim(), sol->particular).to_matrix() + random_z1());
  }
  return d;
}

Outcome criterion6() {
  Outcome o;
  Rng rng(606);
  const auto fixtures = all_fixtures();
  // (a), (b)
  std::size_t nij = 0;
  for (const auto& f : fixtures) {
    for (int it = 0; it < 8; ++it) {
      const LinearOperator t = random_rb(f, rng);
      for (const Vector& x : find_nijenhuis_elements(t)) {
        ++nij;
        const LinearOperator tau = t.with_matrix(rb_coboundary(t, Cochain::constant(t.module_dim(), x)).to_matrix());
        if (!check_linear_deformation(t, tau).ok()) fail(o, "(a) linear deformation fails on " + f.name);
        if (!check_linear_equivalence(t, t.with_matrix(Matrix(t.algebra_dim(), t.module_dim())), tau, x).ok())
          fail(o, "(a) triviality witness fails on " + f.name);
        if (!check_nijenhuis_operator(induced_bracket(t), f.rep->rho_left(x)))
          fail(o, "(b) rho_L(x) not Nijenhuis on " + f.name);
      }
    }
  }
  if (nij == 0) fail(o, "(a) no Nijenhuis elements found");
  // (c), (d)
  std::size_t series = 0, extendable = 0, blocked = 0, attempts = 0;
  std::map<std::size_t, std::size_t> by_order;
  while (series < 100 && attempts < 1000) {
    ++attempts;
    const auto& f = fixtures[attempts % fixtures.size()];
    const LinearOperator t = random_rb(f, rng);
    const std::size_t n = 1 + rng.index(3);
    const DeformationSeries d = random_series(t, n, rng);
    if (check_order_n_deformation(d).first_failing_order) {
      fail(o, "generated series is not a deformation on " + f.name);
      continue;
    }
    ++series;
    ++by_order[d.order()];
    const Cochain ob = obstruction_cocycle(d);
    if (!is_cocycle(t, ob)) fail(o, "(c) obstruction is not a cocycle on " + f.name);
    if (!is_zero(coboundary_matrix(t, 2).apply(ob.flat())))
      fail(o, "(c) obstruction not killed by the degree-2 coboundary matrix on " + f.name);
    const Matrix m = coboundary_matrix(t, 1);
    Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
      aug(r, m.cols()) = -ob.flat()[r];
    }
    const bool member = rank(aug) == rank(m);
    const auto next = check_extendable(d);
    if (next.has_value() != member) fail(o, "(d) verdict disagrees with membership on " + f.name);
    if (next) {
      ++extendable;
      if (check_order_n_deformation(d.extended(next->matrix())).first_failing_order)
        fail(o, "(d) returned term does not extend the series on " + f.name);
    } else {
      ++blocked;
    }
  }
  if (series < 100) fail(o, "(c) only " + std::to_string(series) + " series generated");
  if (o.pass) {
    std::ostringstream ss;
    ss << nij << " Nijenhuis elements; " << series << " series (orders";
    for (const auto& [k, v] : by_order) ss << " " << k << ":" << v;
    ss << "), " << extendable << " extendable and " << blocked << " blocked, all matching membership";
    o.detail = ss.str();
  }
  return o;
}

Outcome criterion7() {
  Outcome o;
  const LinearOperator t = LinearOperator::zero(g3_regular());
  std::string dims;
  std::size_t expect = 1;
  for (std::size_t k = 0; k <= 3; ++k) {
    expect *= 3;  // 3^{k+1}
    const auto r = cohomology_report(t, k);
    dims += (k ? ", " : "") + std::to_string(r.dim_cohomology);
    if (r.dim_cohomology != expect) fail(o, "dim H^" + std::to_string(k) + " = " + std::to_string(r.dim_cohomology));
  }
  if (o.pass) o.detail = "dim H^0..H^3 = " + dims;
  return o;
}

struct ProcessResult {
  int status = -1;
  std::string out;
};

ProcessResult run_process(const std::string& cmd) {
  ProcessResult r;
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

// Output with the timing block removed; non-JSON output is kept verbatim.
std::string strip_timing(const std::string& out) {
  const auto brace = out.find('{');
  if (brace == std::string::npos) return out;
  try {
    auto j = nlohmann::ordered_json::parse(out.substr(brace));
    j.erase("timing");
    return out.substr(0, brace) + j.dump(2);
  } catch (const std::exception&) {
    return out;
  }
}

Outcome criterion8(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    fail(o, "no --cli given");
    return o;
  }
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(RBA_FIXTURE_DIR))
    if (e.path().extension() == ".json") files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  std::size_t invocations = 0, comparisons = 0;
  for (const auto& file : files) {
    for (const auto& cmd : command_names()) {
      std::string reference;
      int ref_status = -1;
      for (int workers : {1, 8}) {
        for (int rep = 0; rep < 2; ++rep) {
          const auto r = run_process("env -u RBA_MAX_DEGREE " + cli + " " + cmd + " --input " + file + " --workers " +
                                     std::to_string(workers));
          ++invocations;
          const std::string body = strip_timing(r.out);
          if (reference.empty() && ref_status == -1) {
            reference = body;
            ref_status = r.status;
            continue;
          }
          ++comparisons;
          if (body != reference || r.status != ref_status)
            fail(o, cmd + " on " + std::filesystem::path(file).filename().string() + " differs with workers " +
                        std::to_string(workers));
        }
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(files.size()) + " fixtures x " + std::to_string(command_names().size()) + " commands, " +
               std::to_string(invocations) + " invocations, " + std::to_string(comparisons) + " identical comparisons";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string cli;
  app.add_option("--cli", cli, "path to the rba executable");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"grid search reproduces the two families", criterion1},
      {"polynomial system matches the listed relations", criterion2},
      {"structural properties on 500 random instances", criterion3},
      {"coboundary equals the signed graded bracket", criterion4},
      {"Maurer-Cartan check agrees with the Rota-Baxter check", criterion5},
      {"deformation suite", criterion6},
      {"zero operator cohomology dimensions", criterion7},
      {"CLI determinism", [&] { return criterion8(cli); }},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
