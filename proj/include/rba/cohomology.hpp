#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <thread>
#include <vector>

#include "rba/cochain.hpp"
#include "rba/errors.hpp"
#include "rba/leibniz.hpp"
#include "rba/linear_algebra.hpp"
#include "rba/rota_baxter.hpp"

namespace rba {

struct CohomologyOptions {
  std::size_t max_degree = 4;  // largest cochain degree ever materialized
  unsigned workers = 1;
};

namespace detail {

inline std::vector<std::size_t> drop(std::span<const std::size_t> t, std::size_t pos) {
  std::vector<std::size_t> out;
  out.reserve(t.size() - 1);
  for (std::size_t p = 0; p < t.size(); ++p)
    if (p != pos) out.push_back(t[p]);
  return out;
}

}  // namespace detail

/// Loday-Pirashvili coboundary of f in C^k(g, V) for the representation
/// `rep` of the algebra g (= rep.algebra):
///
///   (df)(x_1..x_{k+1}) = sum_{i=1}^{k} (-1)^{i+1} rho_L(x_i) f(x_1..^x_i..x_{k+1})
///                      + (-1)^{k+1} rho_R(x_{k+1}) f(x_1..x_k)
///                      + sum_{i<j} (-1)^i f(x_1..^x_i..x_{j-1}, [x_i,x_j], x_{j+1}..x_{k+1})
///
/// For k = 0 only the rho_R term survives: (dv)(x) = -rho_R(x) v.
inline Cochain lp_coboundary(const Representation& rep, const Cochain& f) {
  const std::size_t n = rep.algebra_dim();
  const std::size_t m = rep.dim;
  if (f.source_dim() != n || f.target_dim() != m) {
    throw InputError("cochain shape does not match the algebra and representation");
  }
  const std::size_t k = f.degree();
  Cochain out(k + 1, n, m);
  for_each_tuple(k + 1, n, [&](std::span<const std::size_t> x) {
    Vector val = zero_vector(m);
    for (std::size_t i = 0; i < k; ++i) {
      const Rational sign = (i % 2 == 0) ? 1 : -1;
      add_scaled(val, sign, rep.left[x[i]].apply(f.value(detail::drop(x, i))));
    }
    {
      const Rational sign = (k % 2 == 0) ? -1 : 1;
      add_scaled(val, sign, rep.right[x[k]].apply(f.value(x.first(k))));
    }
    for (std::size_t i = 0; i < k + 1; ++i) {
      for (std::size_t j = i + 1; j < k + 1; ++j) {
        const Vector bij = rep.algebra.bracket_basis(x[i], x[j]);
        if (is_zero(bij)) continue;
        // After dropping x_i, x_j sits at position j - 1.
        const Rational sign = (i % 2 == 0) ? -1 : 1;
        add_scaled(val, sign, f.value_with(detail::drop(x, i), j - 1, bij));
      }
    }
    out.add(x, 1, val);
  });
  return out;
}

namespace detail {

inline Cochain rb_coboundary_unchecked(const LinearOperator& t, const Cochain& f) {
  const auto& rep = t.rep();
  const std::size_t n = rep.algebra_dim();
  const std::size_t m = rep.dim;
  if (f.source_dim() != m || f.target_dim() != n) {
    throw InputError("cochain must map tensor powers of V (dim " + std::to_string(m) + ") into g (dim " +
                     std::to_string(n) + ")");
  }
  const std::size_t k = f.degree();

  std::vector<Vector> tv;
  for (std::size_t u = 0; u < m; ++u) tv.push_back(t.image(u));
  // ins[i][j] = rho_L(T e_i) e_j + rho_R(T e_j) e_i
  std::vector<std::vector<Vector>> ins(m);
  {
    std::vector<Matrix> rl, rr;
    for (std::size_t u = 0; u < m; ++u) {
      rl.push_back(rep.rho_left(tv[u]));
      rr.push_back(rep.rho_right(tv[u]));
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) ins[i].push_back(rl[i].column(j) + rr[j].column(i));
  }

  Cochain out(k + 1, m, n);
  for_each_tuple(k + 1, m, [&](std::span<const std::size_t> v) {
    Vector val = zero_vector(n);
    for (std::size_t i = 0; i < k; ++i) {
      const Rational sign = (i % 2 == 0) ? 1 : -1;
      const Vector y = f.value(detail::drop(v, i));
      add_scaled(val, sign, rep.algebra.bracket(tv[v[i]], y));
      add_scaled(val, -sign, t.apply(rep.rho_right(y).column(v[i])));
    }
    {
      const Vector y = f.value(v.first(k));
      const Rational sign = (k % 2 == 0) ? -1 : 1;  // (-1)^{k+1}
      add_scaled(val, sign, rep.algebra.bracket(y, tv[v[k]]));
      add_scaled(val, -sign, t.apply(rep.rho_left(y).column(v[k])));
    }
    for (std::size_t i = 0; i < k + 1; ++i) {
      for (std::size_t j = i + 1; j < k + 1; ++j) {
        const Vector& w = ins[v[i]][v[j]];
        if (is_zero(w)) continue;
        const Rational sign = (i % 2 == 0) ? -1 : 1;
        add_scaled(val, sign, f.value_with(detail::drop(v, i), j - 1, w));
      }
    }
    out.add(v, 1, val);
  });
  return out;
}

}  // namespace detail

/// Coboundary d_T on C^k(V, g) written directly in terms of T, the bracket
/// of g and (rho_L, rho_R):
///
///   (d_T f)(v_1..v_{k+1})
///     = sum_{i=1}^{k} (-1)^{i+1} ([T v_i, f(..^v_i..)]_g - T rho_R(f(..^v_i..)) v_i)
///     + (-1)^{k+1} [f(v_1..v_k), T v_{k+1}]_g + (-1)^k T rho_L(f(v_1..v_k)) v_{k+1}
///     + sum_{i<j} (-1)^i f(..^v_i.., rho_L(T v_i) v_j + rho_R(T v_j) v_i, ..)
///
/// At k = 0 this is (d_T x)(u) = T rho_L(x) u - [x, T u]_g.
inline Cochain rb_coboundary(const LinearOperator& t, const Cochain& f) {
  require_rota_baxter(t);
  return detail::rb_coboundary_unchecked(t, f);
}

inline void require_degree_within_cap(std::size_t degree, const CohomologyOptions& opts) {
  if (degree > opts.max_degree) {
    throw CapExceededError("cochain degree exceeds the configured maximum", degree, opts.max_degree);
  }
}

/// Matrix of d_T : C^k(V, g) -> C^{k+1}(V, g) in the flattened cochain bases,
/// shape (n m^{k+1}) x (n m^k).
inline Matrix coboundary_matrix(const LinearOperator& t, std::size_t k, const CohomologyOptions& opts = {}) {
  require_degree_within_cap(k + 1, opts);
  require_rota_baxter(t);
  const std::size_t n = t.algebra_dim();
  const std::size_t m = t.module_dim();
  const std::size_t cols = int_pow(m, k) * n;
  const std::size_t rows = int_pow(m, k + 1) * n;
  Matrix out(rows, cols);
  const unsigned workers = std::max(1u, std::min<unsigned>(opts.workers, static_cast<unsigned>(std::max<std::size_t>(cols, 1))));
  auto run = [&](unsigned w) {
    for (std::size_t c = w; c < cols; c += workers) {
      const Cochain img = detail::rb_coboundary_unchecked(t, unit_cochain(k, m, n, c));
      const Vector& flat = img.flat();
      for (std::size_t r = 0; r < rows; ++r) {
        if (flat[r] != 0) out(r, c) = flat[r];
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  return out;
}

struct CohomologyReport {
  std::size_t degree = 0;
  std::size_t dim_cochains = 0;
  std::size_t dim_cocycles = 0;
  std::size_t dim_coboundaries = 0;
  std::size_t dim_cohomology = 0;
  std::vector<Cochain> cocycle_basis;
};

/// dim Z^k = nullity of d_T on C^k, dim B^k = rank of d_T on C^{k-1}.
inline CohomologyReport cohomology_report(const LinearOperator& t, std::size_t k, const CohomologyOptions& opts = {}) {
  const std::size_t n = t.algebra_dim();
  const std::size_t m = t.module_dim();
  const Matrix d = coboundary_matrix(t, k, opts);
  CohomologyReport r;
  r.degree = k;
  r.dim_cochains = d.cols();
  for (auto& v : kernel_basis(d)) r.cocycle_basis.push_back(Cochain::from_flat(k, m, n, std::move(v)));
  r.dim_cocycles = r.cocycle_basis.size();
  r.dim_coboundaries = k == 0 ? 0 : rank(coboundary_matrix(t, k - 1, opts));
  r.dim_cohomology = r.dim_cocycles - r.dim_coboundaries;
  return r;
}

inline bool is_cocycle(const LinearOperator& t, const Cochain& f) { return rb_coboundary(t, f).is_zero(); }

/// Some f with d_T f = g, or absent when g is not a coboundary.
inline std::optional<Cochain> coboundary_preimage(const LinearOperator& t, const Cochain& g,
                                                  const CohomologyOptions& opts = {}) {
  if (g.degree() == 0) throw InputError("degree-0 cochains have no coboundary preimage");
  if (g.source_dim() != t.module_dim() || g.target_dim() != t.algebra_dim()) {
    throw InputError("cochain shape does not match the operator");
  }
  const std::size_t k = g.degree() - 1;
  auto sol = solve(coboundary_matrix(t, k, opts), g.flat());
  if (!sol) return std::nullopt;
  return Cochain::from_flat(k, t.module_dim(), t.algebra_dim(), std::move(sol->particular));
}

}  // namespace rba
