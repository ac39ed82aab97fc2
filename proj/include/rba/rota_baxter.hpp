#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rba/cochain.hpp"
#include "rba/errors.hpp"
#include "rba/leibniz.hpp"
#include "rba/matrix.hpp"

namespace rba {

using RepresentationPtr = std::shared_ptr<const Representation>;

inline RepresentationPtr share(Representation rep) { return std::make_shared<const Representation>(std::move(rep)); }

/// Linear map T : V -> g. Column j of the matrix is T(f_j) in the g-basis,
/// so the shape is (dim g) x (dim V).
class LinearOperator {
 public:
  LinearOperator() = default;
  LinearOperator(RepresentationPtr rep, Matrix matrix) : rep_(std::move(rep)), matrix_(std::move(matrix)) {
    if (!rep_) throw InputError("operator without representation");
    if (matrix_.rows() != rep_->algebra_dim() || matrix_.cols() != rep_->dim) {
      throw InputError("operator matrix is " + std::to_string(matrix_.rows()) + "x" + std::to_string(matrix_.cols()) +
                       ", expected " + std::to_string(rep_->algebra_dim()) + "x" + std::to_string(rep_->dim));
    }
  }

  static LinearOperator zero(RepresentationPtr rep) {
    Matrix m(rep->algebra_dim(), rep->dim);
    return LinearOperator(std::move(rep), std::move(m));
  }

  const Representation& rep() const { return *rep_; }
  const RepresentationPtr& rep_ptr() const noexcept { return rep_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  std::size_t algebra_dim() const noexcept { return matrix_.rows(); }
  std::size_t module_dim() const noexcept { return matrix_.cols(); }

  Vector apply(const Vector& u) const { return matrix_.apply(u); }
  Vector image(std::size_t j) const { return matrix_.column(j); }

  /// Same representation, different matrix.
  LinearOperator with_matrix(Matrix m) const { return LinearOperator(rep_, std::move(m)); }

  Cochain as_cochain() const { return Cochain::from_matrix(matrix_); }

  friend bool operator==(const LinearOperator& a, const LinearOperator& b) {
    return a.matrix_ == b.matrix_ && (a.rep_ == b.rep_ || *a.rep_ == *b.rep_);
  }

 private:
  RepresentationPtr rep_;
  Matrix matrix_;
};

inline void require_valid_representation(const Representation& rep) {
  auto check = check_representation(rep);
  if (!check.ok()) {
    const auto& v = check.violations.front();
    throw InvalidRepresentationError(std::string("representation axiom ") + axiom_name(v.axiom) + " fails at (" +
                                     std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) + ")");
  }
}

/// The bilinear map
///   P(A, B)(u, v) = [A u, B v]_g - A(rho_L(B u) v + rho_R(B v) u)
/// for A, B : V -> g, as a 2-cochain on V with values in g. P(T, T) is the
/// Rota-Baxter defect; the deformation equations are sums of P(T_i, T_j).
inline Cochain pair_defect(const Representation& rep, const Matrix& a, const Matrix& b) {
  const std::size_t n = rep.algebra_dim();
  const std::size_t m = rep.dim;
  Cochain out(2, m, n);
  std::vector<Vector> a_img, b_img;
  for (std::size_t j = 0; j < m; ++j) {
    a_img.push_back(a.column(j));
    b_img.push_back(b.column(j));
  }
  std::vector<Matrix> rho_l_b, rho_r_b;
  for (std::size_t j = 0; j < m; ++j) {
    rho_l_b.push_back(rep.rho_left(b_img[j]));
    rho_r_b.push_back(rep.rho_right(b_img[j]));
  }
  for (std::size_t u = 0; u < m; ++u) {
    for (std::size_t v = 0; v < m; ++v) {
      Vector val = rep.algebra.bracket(a_img[u], b_img[v]);
      Vector inner = rho_l_b[u].column(v) + rho_r_b[v].column(u);
      add_scaled(val, -1, a.apply(inner));
      const std::size_t t[2] = {u, v};
      out.add(t, 1, val);
    }
  }
  return out;
}

/// D(u, v) = [Tu, Tv]_g - T(rho_L(Tu) v + rho_R(Tv) u). Zero iff T is a
/// relative Rota-Baxter operator.
inline Cochain rb_defect(const LinearOperator& t) {
  require_valid_representation(t.rep());
  return pair_defect(t.rep(), t.matrix(), t.matrix());
}

inline bool check_rota_baxter(const LinearOperator& t) { return rb_defect(t).is_zero(); }

inline void require_rota_baxter(const LinearOperator& t) {
  Cochain d = rb_defect(t);
  if (!d.is_zero()) throw NotRotaBaxterError("operator is not a relative Rota-Baxter operator");
}

/// [u, v]_T = rho_L(Tu) v + rho_R(Tv) u on V.
inline LeibnizAlgebra induced_bracket(const LinearOperator& t) {
  require_rota_baxter(t);
  const auto& rep = t.rep();
  const std::size_t m = rep.dim;
  LeibnizAlgebra out(m);
  for (std::size_t u = 0; u < m; ++u) {
    const Matrix lu = rep.rho_left(t.image(u));
    for (std::size_t v = 0; v < m; ++v) {
      const Matrix rv = rep.rho_right(t.image(v));
      const Vector val = lu.column(v) + rv.column(u);
      for (std::size_t k = 0; k < m; ++k) out.coefficient(u, v, k) = val[k];
    }
  }
  return out;
}

/// Representation of (V, [.,.]_T) on g:
///   rhobar_L(u) x = [Tu, x]_g - T rho_R(x) u
///   rhobar_R(u) x = [x, Tu]_g - T rho_L(x) u
inline Representation induced_representation(const LinearOperator& t) {
  LeibnizAlgebra on_v = induced_bracket(t);
  const auto& rep = t.rep();
  const std::size_t n = rep.algebra_dim();
  const std::size_t m = rep.dim;
  std::vector<Matrix> left, right;
  for (std::size_t u = 0; u < m; ++u) {
    const Vector tu = t.image(u);
    std::vector<Vector> lcols, rcols;
    for (std::size_t x = 0; x < n; ++x) {
      const Vector ex = basis_vector(n, x);
      Vector l = rep.algebra.bracket(tu, ex);
      add_scaled(l, -1, t.apply(rep.right[x].column(u)));
      Vector r = rep.algebra.bracket(ex, tu);
      add_scaled(r, -1, t.apply(rep.left[x].column(u)));
      lcols.push_back(std::move(l));
      rcols.push_back(std::move(r));
    }
    left.push_back(Matrix::from_columns(n, lcols));
    right.push_back(Matrix::from_columns(n, rcols));
  }
  return Representation(std::move(on_v), n, std::move(left), std::move(right));
}

// ---------------------------------------------------------------------------
// Polynomial system in the entries of T.

/// Monomial exponent vector over the unknowns a_{pq}, ordered row-major
/// (index p * dim V + q).
struct Monomial {
  std::vector<unsigned> exponents;
  Rational coefficient;
};

/// Terms sorted by descending exponent vector (lexicographic), zero terms
/// removed.
struct Polynomial {
  std::vector<Monomial> terms;

  bool is_zero() const noexcept { return terms.empty(); }

  Rational evaluate(const std::vector<Rational>& point) const {
    Rational total = 0;
    for (const auto& t : terms) {
      Rational s = t.coefficient;
      for (std::size_t v = 0; v < t.exponents.size(); ++v)
        for (unsigned e = 0; e < t.exponents[v]; ++e) s *= point[v];
      total += s;
    }
    return total;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t i = 0; i < a.terms.size(); ++i) {
      if (a.terms[i].exponents != b.terms[i].exponents || a.terms[i].coefficient != b.terms[i].coefficient)
        return false;
    }
    return true;
  }
};

struct PolynomialEquation {
  std::size_t i, j;  // V-basis pair (0-based)
  std::size_t k;     // g coordinate (0-based)
  Polynomial poly;   // vanishes iff coordinate k of the defect at (e_i, e_j) is zero
};

struct PolynomialSystem {
  std::size_t algebra_dim = 0;
  std::size_t module_dim = 0;
  std::vector<std::string> variables;  // a11, a12, ... (1-based row, column)
  std::vector<PolynomialEquation> equations;

  /// Only the equations whose polynomial is not identically zero.
  std::vector<PolynomialEquation> nonzero_equations() const {
    std::vector<PolynomialEquation> out;
    for (const auto& e : equations)
      if (!e.poly.is_zero()) out.push_back(e);
    return out;
  }
};

inline std::string entry_name(std::size_t p, std::size_t q, std::size_t rows, std::size_t cols) {
  if (rows < 10 && cols < 10) return "a" + std::to_string(p + 1) + std::to_string(q + 1);
  return "a" + std::to_string(p + 1) + "_" + std::to_string(q + 1);
}

/// Quadratic polynomials in the n*m unknown entries a_{pq} of T whose common
/// zero set is the set of relative Rota-Baxter operators. One polynomial per
/// V-basis pair (i, j) and g-coordinate k, listed in (i, j, k) order.
inline PolynomialSystem rb_polynomial_system(const Representation& rep) {
  const std::size_t n = rep.algebra_dim();
  const std::size_t m = rep.dim;
  const std::size_t vars = n * m;
  auto var = [m](std::size_t p, std::size_t q) { return p * m + q; };

  PolynomialSystem sys;
  sys.algebra_dim = n;
  sys.module_dim = m;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < m; ++q) sys.variables.push_back(entry_name(p, q, n, m));

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      // Quadratic monomials a_x a_y keyed by sorted variable pair.
      std::vector<std::map<std::pair<std::size_t, std::size_t>, Rational>> acc(n);
      auto bump = [&](std::size_t k, std::size_t x, std::size_t y, const Rational& c) {
        if (c == 0) return;
        if (x > y) std::swap(x, y);
        acc[k][{x, y}] += c;
      };
      // [T e_i, T e_j]_k = sum_{p,q} a_{pi} a_{qj} c^k_{pq}
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
          for (std::size_t k = 0; k < n; ++k) bump(k, var(p, i), var(q, j), rep.algebra.coefficient(p, q, k));
      // -(T(rho_L(T e_i) e_j + rho_R(T e_j) e_i))_k
      //   = -sum_{s,r} a_{ks} (a_{ri} rho_L(e_r)_{sj} + a_{rj} rho_R(e_r)_{si})
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t s = 0; s < m; ++s)
          for (std::size_t r = 0; r < n; ++r) {
            bump(k, var(k, s), var(r, i), -rep.left[r](s, j));
            bump(k, var(k, s), var(r, j), -rep.right[r](s, i));
          }

      for (std::size_t k = 0; k < n; ++k) {
        Polynomial poly;
        for (const auto& [key, c] : acc[k]) {
          if (c == 0) continue;
          Monomial mono{std::vector<unsigned>(vars, 0), c};
          mono.exponents[key.first] += 1;
          mono.exponents[key.second] += 1;
          poly.terms.push_back(std::move(mono));
        }
        std::sort(poly.terms.begin(), poly.terms.end(),
                  [](const Monomial& a, const Monomial& b) { return a.exponents > b.exponents; });
        sys.equations.push_back({i, j, k, std::move(poly)});
      }
    }
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Finite-grid search.

struct SearchOptions {
  /// Entries (row-major index p * dim V + q) that range over the value set.
  /// Empty means every entry is free.
  std::vector<std::size_t> free_entries;
  /// Values of the non-free entries; zero matrix when absent.
  std::optional<Matrix> fixed;
  std::size_t budget = 2'000'000;
  unsigned workers = 1;
};

namespace detail {

inline bool lex_less(const Matrix& a, const Matrix& b) {
  auto ea = a.entries();
  auto eb = b.entries();
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

}  // namespace detail

/// Every matrix with the free entries drawn from `values` (others fixed) that
/// is a relative Rota-Baxter operator, sorted lexicographically by entries.
/// Throws CapExceededError when |values|^(#free) exceeds the budget.
inline std::vector<LinearOperator> brute_force_search(const RepresentationPtr& rep, const std::vector<Rational>& values,
                                                      const SearchOptions& opts = {}) {
  require_valid_representation(*rep);
  const std::size_t n = rep->algebra_dim();
  const std::size_t m = rep->dim;
  std::vector<std::size_t> free = opts.free_entries;
  if (free.empty()) {
    for (std::size_t e = 0; e < n * m; ++e) free.push_back(e);
  }
  for (auto e : free) {
    if (e >= n * m) throw InputError("free entry index out of range");
  }
  const Matrix base = opts.fixed.value_or(Matrix(n, m));
  if (base.rows() != n || base.cols() != m) throw InputError("fixed matrix has wrong shape");

  // Grid size, saturating at SIZE_MAX.
  std::size_t total = values.empty() && !free.empty() ? 0 : 1;
  for (std::size_t k = 0; k < free.size() && total != 0; ++k) {
    if (total > std::numeric_limits<std::size_t>::max() / values.size()) {
      total = std::numeric_limits<std::size_t>::max();
      break;
    }
    total *= values.size();
  }
  if (total > opts.budget) throw CapExceededError("search grid exceeds budget", total, opts.budget);

  const unsigned workers = std::max(1u, opts.workers);
  std::vector<std::vector<Matrix>> found(workers);
  auto run = [&](unsigned w) {
    for (std::size_t idx = w; idx < total; idx += workers) {
      Matrix cand = base;
      std::size_t rest = idx;
      for (std::size_t k = free.size(); k-- > 0;) {
        const std::size_t e = free[k];
        cand(e / m, e % m) = values[rest % values.size()];
        rest /= values.size();
      }
      if (pair_defect(*rep, cand, cand).is_zero()) found[w].push_back(std::move(cand));
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  std::vector<Matrix> all;
  for (auto& f : found)
    for (auto& mat : f) all.push_back(std::move(mat));
  std::sort(all.begin(), all.end(), detail::lex_less);
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<LinearOperator> out;
  out.reserve(all.size());
  for (auto& mat : all) out.emplace_back(rep, std::move(mat));
  return out;
}

}  // namespace rba
