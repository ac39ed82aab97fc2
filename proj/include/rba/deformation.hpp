#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rba/cochain.hpp"
#include "rba/cohomology.hpp"
#include "rba/errors.hpp"
#include "rba/leibniz.hpp"
#include "rba/linear_algebra.hpp"
#include "rba/rota_baxter.hpp"

namespace rba {

// ---------------------------------------------------------------------------
// Series of operators truncated at a finite order.

/// T_t = T + T_1 t + ... + T_n t^n, all terms sharing the representation of T.
class DeformationSeries {
 public:
  DeformationSeries() = default;
  DeformationSeries(LinearOperator base, std::vector<Matrix> terms) : base_(std::move(base)), terms_(std::move(terms)) {
    for (const auto& t : terms_) {
      if (t.rows() != base_.algebra_dim() || t.cols() != base_.module_dim()) {
        throw InputError("deformation term shape does not match the base operator");
      }
    }
  }

  const LinearOperator& base() const noexcept { return base_; }
  const std::vector<Matrix>& terms() const noexcept { return terms_; }
  std::size_t order() const noexcept { return terms_.size(); }
  const Representation& rep() const { return base_.rep(); }

  /// Coefficient of t^i; zero beyond the order.
  Matrix term(std::size_t i) const {
    if (i == 0) return base_.matrix();
    if (i <= terms_.size()) return terms_[i - 1];
    return Matrix(base_.algebra_dim(), base_.module_dim());
  }

  LinearOperator term_operator(std::size_t i) const { return base_.with_matrix(term(i)); }

  DeformationSeries extended(Matrix next) const {
    auto t = terms_;
    t.push_back(std::move(next));
    return DeformationSeries(base_, std::move(t));
  }

  DeformationSeries truncated(std::size_t order) const {
    std::vector<Matrix> t(terms_.begin(), terms_.begin() + std::min(order, terms_.size()));
    return DeformationSeries(base_, std::move(t));
  }

 private:
  LinearOperator base_;
  std::vector<Matrix> terms_;
};

/// Witness for equivalence of deformations:
///   phi_t    = Id_g + t L_x + sum_{i>=2} phi_i t^i
///   varphi_t = Id_V + t rho_L(x) + sum_{i>=2} varphi_i t^i
/// higher_phi[0] is phi_2, and so on; missing terms are zero.
struct EquivalencePair {
  Vector x;
  std::vector<Matrix> higher_phi;
  std::vector<Matrix> higher_varphi;
};

// ---------------------------------------------------------------------------
// Linear deformations.

struct LinearDeformationCheck {
  Cochain cocycle_residual;  // [Tu, T'v] + [T'u, Tv] - T(...) - T'(...)
  Cochain rb_residual;       // defect of T' itself
  bool ok() const { return cocycle_residual.is_zero() && rb_residual.is_zero(); }
  explicit operator bool() const { return ok(); }
};

/// T + t T' is a relative Rota-Baxter operator for every t.
inline LinearDeformationCheck check_linear_deformation(const LinearOperator& t, const LinearOperator& tau) {
  if (t.algebra_dim() != tau.algebra_dim() || t.module_dim() != tau.module_dim()) {
    throw InputError("deformation direction has the wrong shape");
  }
  require_valid_representation(t.rep());
  const auto& rep = t.rep();
  return {pair_defect(rep, t.matrix(), tau.matrix()) + pair_defect(rep, tau.matrix(), t.matrix()),
          pair_defect(rep, tau.matrix(), tau.matrix())};
}

/// One failed condition of a (possibly t-dependent) homomorphism, with the
/// power of t at which it fails (0 for constant maps).
struct HomomorphismFailure {
  std::string condition;  // "bracket", "operator", "left_action", "right_action"
  std::size_t order;
};

struct HomomorphismCheck {
  std::vector<HomomorphismFailure> failures;
  bool ok() const noexcept { return failures.empty(); }
  explicit operator bool() const noexcept { return ok(); }
};

namespace detail {

using Series = std::vector<Matrix>;  // coefficient of t^i at index i

inline const Matrix* coeff(const Series& s, std::size_t i) { return i < s.size() ? &s[i] : nullptr; }

/// Coefficientwise check, for t^0..t^max_order, that (phi_g, phi_V) is a
/// homomorphism from the operator series `source` to `target`:
///   phi_g [y, z] = [phi_g y, phi_g z]
///   target o phi_V = phi_g o source
///   phi_V rho_L(y) = rho_L(phi_g y) phi_V, and the same for rho_R.
inline HomomorphismCheck check_series_homomorphism(const Representation& rep, const Series& target,
                                                   const Series& source, const Series& phi_g, const Series& phi_v,
                                                   std::size_t max_order) {
  const std::size_t n = rep.algebra_dim();
  const std::size_t m = rep.dim;
  HomomorphismCheck out;
  for (std::size_t p = 0; p <= max_order; ++p) {
    bool bracket_ok = true;
    for (std::size_t y = 0; y < n && bracket_ok; ++y) {
      for (std::size_t z = 0; z < n && bracket_ok; ++z) {
        Vector r = zero_vector(n);
        if (const Matrix* f = coeff(phi_g, p)) add_scaled(r, -1, f->apply(rep.algebra.bracket_basis(y, z)));
        for (std::size_t a = 0; a <= p; ++a) {
          const Matrix* fa = coeff(phi_g, a);
          const Matrix* fb = coeff(phi_g, p - a);
          if (fa && fb) add_scaled(r, 1, rep.algebra.bracket(fa->column(y), fb->column(z)));
        }
        bracket_ok = is_zero(r);
      }
    }
    if (!bracket_ok) out.failures.push_back({"bracket", p});

    Matrix op(n, m);
    for (std::size_t a = 0; a <= p; ++a) {
      const Matrix* ta = coeff(target, a);
      const Matrix* vb = coeff(phi_v, p - a);
      if (ta && vb) op += *ta * *vb;
      const Matrix* fa = coeff(phi_g, a);
      const Matrix* sb = coeff(source, p - a);
      if (fa && sb) op -= *fa * *sb;
    }
    if (!op.is_zero()) out.failures.push_back({"operator", p});

    for (int side = 0; side < 2; ++side) {
      const auto& rho = side == 0 ? rep.left : rep.right;
      bool ok = true;
      for (std::size_t y = 0; y < n && ok; ++y) {
        Matrix r(m, m);
        if (const Matrix* v = coeff(phi_v, p)) r += *v * rho[y];
        for (std::size_t a = 0; a <= p; ++a) {
          const Matrix* fa = coeff(phi_g, a);
          const Matrix* vb = coeff(phi_v, p - a);
          if (!fa || !vb) continue;
          const Vector img = fa->column(y);
          r -= (side == 0 ? rep.rho_left(img) : rep.rho_right(img)) * *vb;
        }
        ok = r.is_zero();
      }
      if (!ok) out.failures.push_back({side == 0 ? "left_action" : "right_action", p});
    }
  }
  return out;
}

}  // namespace detail

/// (phi_g, phi_V) is a homomorphism from `source` to `target`: phi_g is a
/// Leibniz endomorphism of g, target o phi_V = phi_g o source, and phi_V
/// intertwines rho_L and rho_R through phi_g.
inline HomomorphismCheck check_homomorphism(const LinearOperator& target, const LinearOperator& source,
                                            const Matrix& phi_g, const Matrix& phi_v) {
  const std::size_t n = target.algebra_dim();
  const std::size_t m = target.module_dim();
  if (phi_g.rows() != n || phi_g.cols() != n || phi_v.rows() != m || phi_v.cols() != m ||
      source.algebra_dim() != n || source.module_dim() != m) {
    throw InputError("homomorphism maps have the wrong shape");
  }
  return detail::check_series_homomorphism(target.rep(), {target.matrix()}, {source.matrix()}, {phi_g}, {phi_v}, 0);
}

/// Whether (Id + t L_x, Id + t rho_L(x)) is a homomorphism from T + t tau2 to
/// T + t tau1 for every t. Both sides are polynomials of degree <= 2 in t, so
/// the coefficients of t^0, t^1, t^2 decide it.
inline HomomorphismCheck check_linear_equivalence(const LinearOperator& t, const LinearOperator& tau1,
                                                  const LinearOperator& tau2, const Vector& x) {
  const std::size_t n = t.algebra_dim();
  const std::size_t m = t.module_dim();
  if (x.size() != n) throw InputError("element x has the wrong length");
  for (const auto* op : {&tau1, &tau2}) {
    if (op->algebra_dim() != n || op->module_dim() != m) throw InputError("deformation direction has the wrong shape");
  }
  const auto& rep = t.rep();
  return detail::check_series_homomorphism(rep, {t.matrix(), tau1.matrix()}, {t.matrix(), tau2.matrix()},
                                           {Matrix::identity(n), left_multiplication(rep.algebra, x)},
                                           {Matrix::identity(m), rep.rho_left(x)}, 2);
}

// ---------------------------------------------------------------------------
// Nijenhuis elements and operators.

struct NijenhuisFailure {
  std::string condition;  // "bracket_square", "left_action", "right_action", "shift_commutes"
  std::vector<std::size_t> indices;  // basis indices (0-based) where it fails
};

struct NijenhuisCheck {
  std::vector<NijenhuisFailure> failures;
  bool ok() const noexcept { return failures.empty(); }
  explicit operator bool() const noexcept { return ok(); }
};

/// x is a Nijenhuis element of T when, for all y, z in g and u in V,
///   [[x, y], [x, z]] = 0
///   rho_L([x, y]) rho_L(x) = 0
///   rho_R([x, y]) rho_L(x) = 0
///   [x, T rho_L(x) u - [x, T u]] = 0
inline NijenhuisCheck check_nijenhuis_element(const LinearOperator& t, const Vector& x) {
  require_rota_baxter(t);
  const auto& rep = t.rep();
  const std::size_t n = rep.algebra_dim();
  const std::size_t m = rep.dim;
  if (x.size() != n) throw InputError("element x has the wrong length");
  NijenhuisCheck out;
  const Matrix lx = left_multiplication(rep.algebra, x);
  const Matrix rho_lx = rep.rho_left(x);
  for (std::size_t y = 0; y < n; ++y) {
    const Vector xy = lx.column(y);
    for (std::size_t z = 0; z < n; ++z) {
      if (!is_zero(rep.algebra.bracket(xy, lx.column(z)))) out.failures.push_back({"bracket_square", {y, z}});
    }
    if (!(rep.rho_left(xy) * rho_lx).is_zero()) out.failures.push_back({"left_action", {y}});
    if (!(rep.rho_right(xy) * rho_lx).is_zero()) out.failures.push_back({"right_action", {y}});
  }
  const Matrix shift = t.matrix() * rho_lx - lx * t.matrix();  // d_T x as a matrix
  for (std::size_t u = 0; u < m; ++u) {
    if (!is_zero(lx.apply(shift.column(u)))) out.failures.push_back({"shift_commutes", {u}});
  }
  return out;
}

/// d_T x, the generator of a trivial linear deformation when x is Nijenhuis.
inline LinearOperator trivial_deformation_from_nijenhuis(const LinearOperator& t, const Vector& x) {
  auto check = check_nijenhuis_element(t, x);
  if (!check.ok()) throw InputError("element is not a Nijenhuis element (" + check.failures.front().condition + ")");
  return t.with_matrix(rb_coboundary(t, Cochain::constant(t.module_dim(), x)).to_matrix());
}

/// Basis vectors of g that are Nijenhuis elements of T, followed by the
/// supplied candidates that are.
inline std::vector<Vector> find_nijenhuis_elements(const LinearOperator& t, const std::vector<Vector>& candidates = {}) {
  std::vector<Vector> out;
  const std::size_t n = t.algebra_dim();
  for (std::size_t i = 0; i < n; ++i) {
    Vector e = basis_vector(n, i);
    if (check_nijenhuis_element(t, e).ok()) out.push_back(std::move(e));
  }
  for (const auto& c : candidates) {
    if (check_nijenhuis_element(t, c).ok()) out.push_back(c);
  }
  return out;
}

/// [Nx, Ny] = N([Nx, y] + [x, Ny] - N[x, y]) on all basis pairs.
inline bool check_nijenhuis_operator(const LeibnizAlgebra& a, const Matrix& nmat) {
  const std::size_t n = a.dim();
  if (nmat.rows() != n || nmat.cols() != n) throw InputError("Nijenhuis operator must be square of the algebra dimension");
  for (std::size_t x = 0; x < n; ++x) {
    const Vector ex = basis_vector(n, x);
    const Vector nx = nmat.column(x);
    for (std::size_t y = 0; y < n; ++y) {
      const Vector ey = basis_vector(n, y);
      const Vector ny = nmat.column(y);
      Vector inner = a.bracket(nx, ey) + a.bracket(ex, ny);
      add_scaled(inner, -1, nmat.apply(a.bracket_basis(x, y)));
      if (a.bracket(nx, ny) != nmat.apply(inner)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Order-n deformations and obstructions.

/// Coefficient of t^i in [T_t u, T_t v] - T_t(rho_L(T_t u) v + rho_R(T_t v) u):
/// the sum of pair_defect(T_k, T_l) over k + l = i.
inline Cochain deformation_coefficient(const DeformationSeries& d, std::size_t i) {
  const auto& rep = d.rep();
  Cochain out(2, rep.dim, rep.algebra_dim());
  for (std::size_t k = 0; k <= i; ++k) out += pair_defect(rep, d.term(k), d.term(i - k));
  return out;
}

struct OrderCheck {
  std::optional<std::size_t> first_failing_order;
  Cochain residual;  // coefficient at the failing order, when there is one
  bool ok() const noexcept { return !first_failing_order.has_value(); }
  explicit operator bool() const noexcept { return ok(); }
};

/// The truncated series satisfies the Rota-Baxter identity modulo t^{n+1}.
inline OrderCheck check_order_n_deformation(const DeformationSeries& d) {
  require_rota_baxter(d.base());
  OrderCheck out;
  for (std::size_t i = 1; i <= d.order(); ++i) {
    Cochain c = deformation_coefficient(d, i);
    if (!c.is_zero()) {
      out.first_failing_order = i;
      out.residual = std::move(c);
      return out;
    }
  }
  return out;
}

inline void require_order_n_deformation(const DeformationSeries& d) {
  auto check = check_order_n_deformation(d);
  if (!check.ok()) {
    throw InputError("series is not an order-" + std::to_string(d.order()) + " deformation (fails at t^" +
                     std::to_string(*check.first_failing_order) + ")");
  }
}

/// Ob(u, v) = sum_{i+j=n+1, i,j>=1} [T_i u, T_j v] - T_i(rho_L(T_j u) v + rho_R(T_j v) u).
inline Cochain obstruction_cocycle(const DeformationSeries& d) {
  require_order_n_deformation(d);
  const auto& rep = d.rep();
  const std::size_t n = d.order();
  Cochain out(2, rep.dim, rep.algebra_dim());
  for (std::size_t i = 1; i <= n; ++i) out += pair_defect(rep, d.term(i), d.term(n + 1 - i));
  return out;
}

/// A next term T_{n+1} with d_T T_{n+1} = -Ob, or absent when the
/// obstruction class is nonzero.
inline std::optional<LinearOperator> check_extendable(const DeformationSeries& d, const CohomologyOptions& opts = {}) {
  const Cochain ob = obstruction_cocycle(d);
  const LinearOperator& t = d.base();
  auto sol = solve(coboundary_matrix(t, 1, opts), (-ob).flat());
  if (!sol) return std::nullopt;
  return t.with_matrix(Cochain::from_flat(1, t.module_dim(), t.algebra_dim(), std::move(sol->particular)).to_matrix());
}

struct ExtensionOptions {
  std::size_t order_cap = 6;
  CohomologyOptions cohomology;
};

struct ExtensionOutcome {
  DeformationSeries series;           // longest series reached
  std::optional<std::size_t> blocked_at;  // order that could not be reached
  std::optional<Cochain> obstruction;  // representative of the nonzero class
  bool succeeded() const noexcept { return !blocked_at.has_value(); }
};

/// Extends an order-n deformation order by order up to `target_order`,
/// choosing at each step the particular solution of d_T X = -Ob returned by
/// `solve`. A series already at or beyond the target is returned unchanged.
inline ExtensionOutcome extend_series(const DeformationSeries& d, std::size_t target_order,
                                      const ExtensionOptions& opts = {}) {
  if (target_order > opts.order_cap) {
    throw CapExceededError("deformation order exceeds the configured cap", target_order, opts.order_cap);
  }
  require_order_n_deformation(d);
  ExtensionOutcome out;
  out.series = d;
  while (out.series.order() < target_order) {
    auto next = check_extendable(out.series, opts.cohomology);
    if (!next) {
      out.blocked_at = out.series.order() + 1;
      out.obstruction = obstruction_cocycle(out.series);
      return out;
    }
    out.series = out.series.extended(next->matrix());
  }
  return out;
}

/// Greedy extension of T + t tau1 to order `target_order`.
inline ExtensionOutcome extend_to_order(const LinearOperator& t, const LinearOperator& tau1, std::size_t target_order,
                                        const ExtensionOptions& opts = {}) {
  if (target_order > opts.order_cap) {
    throw CapExceededError("deformation order exceeds the configured cap", target_order, opts.order_cap);
  }
  if (!is_cocycle(t, tau1.as_cochain())) throw InputError("infinitesimal is not a 1-cocycle");
  const DeformationSeries start(t, {tau1.matrix()});
  if (target_order == 0) return ExtensionOutcome{start.truncated(0), std::nullopt, std::nullopt};
  return extend_series(start, target_order, opts);
}

// ---------------------------------------------------------------------------
// Formal equivalence and rigidity.

namespace detail {

inline Series witness_series(const Representation& rep, const Vector& x, const std::vector<Matrix>& higher,
                             bool on_algebra) {
  const std::size_t dim = on_algebra ? rep.algebra_dim() : rep.dim;
  Series s{Matrix::identity(dim), on_algebra ? left_multiplication(rep.algebra, x) : rep.rho_left(x)};
  for (const auto& h : higher) {
    if (h.rows() != dim || h.cols() != dim) throw InputError("higher equivalence term has the wrong shape");
    s.push_back(h);
  }
  return s;
}

inline Series operator_series(const DeformationSeries& d) {
  Series s;
  for (std::size_t i = 0; i <= d.order(); ++i) s.push_back(d.term(i));
  return s;
}

}  // namespace detail

/// Whether (phi_t, varphi_t) built from E satisfies, coefficientwise up to
/// t^order: phi_t is a Leibniz endomorphism, varphi_t intertwines rho_L and
/// rho_R through phi_t, and d1 o varphi_t = phi_t o d2.
///
/// When it holds, the infinitesimals satisfy d2_1 = d1_1 + d_T x.
inline HomomorphismCheck check_formal_equivalence(const DeformationSeries& d1, const DeformationSeries& d2,
                                                  const EquivalencePair& e) {
  if (!(d1.base() == d2.base())) throw InputError("series must share the base operator");
  if (d1.order() != d2.order()) throw InputError("series must have the same order");
  const auto& rep = d1.rep();
  if (e.x.size() != rep.algebra_dim()) throw InputError("element x has the wrong length");
  require_rota_baxter(d1.base());
  return detail::check_series_homomorphism(rep, detail::operator_series(d1), detail::operator_series(d2),
                                           detail::witness_series(rep, e.x, e.higher_phi, true),
                                           detail::witness_series(rep, e.x, e.higher_varphi, false), d1.order());
}

/// (Id + t L_x)^{-1} o T_t o (Id + t rho_L(x)), truncated at the order of the
/// series; the inverse is the geometric series Id - t L_x + t^2 L_x^2 - ...
inline DeformationSeries conjugate_series(const DeformationSeries& d, const Vector& x) {
  const auto& rep = d.rep();
  const std::size_t n = rep.algebra_dim();
  const std::size_t order = d.order();
  const Matrix lx = left_multiplication(rep.algebra, x);
  const Matrix rx = rep.rho_left(x);
  // T_t o (Id + t rho_L(x)): coefficient i is T_i + T_{i-1} rho_L(x).
  std::vector<Matrix> right;
  for (std::size_t i = 0; i <= order; ++i) {
    Matrix c = d.term(i);
    if (i > 0) c += d.term(i - 1) * rx;
    right.push_back(std::move(c));
  }
  std::vector<Matrix> inv{Matrix::identity(n)};
  for (std::size_t i = 1; i <= order; ++i) inv.push_back(-(inv.back() * lx));
  std::vector<Matrix> terms;
  for (std::size_t i = 1; i <= order; ++i) {
    Matrix c(n, rep.dim);
    for (std::size_t a = 0; a <= i; ++a) c += inv[a] * right[i - a];
    terms.push_back(std::move(c));
  }
  return DeformationSeries(d.base(), std::move(terms));
}

/// True when span{d_T x : x in generators} = Z^1, which certifies rigidity.
/// False is inconclusive.
inline bool rigidity_certificate(const LinearOperator& t, const std::vector<Vector>& generators,
                                 const CohomologyOptions& opts = {}) {
  std::vector<Vector> images;
  for (const auto& x : generators) {
    auto check = check_nijenhuis_element(t, x);
    if (!check.ok()) throw InputError("rigidity generator is not a Nijenhuis element");
    images.push_back(rb_coboundary(t, Cochain::constant(t.module_dim(), x)).flat());
  }
  const std::size_t dim_z1 = cohomology_report(t, 1, opts).dim_cocycles;
  const std::size_t span = images.empty() ? 0 : rank(Matrix::from_columns(images.front().size(), images));
  return span == dim_z1;
}

// ---------------------------------------------------------------------------
// Deformations of the induced Leibniz algebra.

/// omega_i(u, v) = rho_L(T_i u) v + rho_R(T_i v) u for i = 0..n, as 2-cochains
/// on V with values in V. omega_0 is the bracket [., .]_T.
inline std::vector<Cochain> induced_deformed_bracket(const DeformationSeries& d) {
  require_order_n_deformation(d);
  const auto& rep = d.rep();
  const std::size_t m = rep.dim;
  std::vector<Cochain> out;
  for (std::size_t i = 0; i <= d.order(); ++i) {
    const Matrix ti = d.term(i);
    Cochain w(2, m, m);
    std::vector<Matrix> rl, rr;
    for (std::size_t u = 0; u < m; ++u) {
      rl.push_back(rep.rho_left(ti.column(u)));
      rr.push_back(rep.rho_right(ti.column(u)));
    }
    for (std::size_t u = 0; u < m; ++u)
      for (std::size_t v = 0; v < m; ++v) {
        const std::size_t tup[2] = {u, v};
        w.add(tup, 1, rl[u].column(v) + rr[v].column(u));
      }
    out.push_back(std::move(w));
  }
  return out;
}

/// Coefficient of t^p, p = 0..max_power, in the Leibniz defect of the bracket
/// sum_i omega_i t^i:
///   sum_{a+b=p} omega_a(u, omega_b(v, w)) - omega_a(omega_b(u, v), w) - omega_a(v, omega_b(u, w)).
inline std::vector<Cochain> truncated_leibniz_defect(const std::vector<Cochain>& omegas, std::size_t max_power) {
  if (omegas.empty()) throw InputError("no bracket coefficients");
  const std::size_t m = omegas.front().source_dim();
  std::vector<Cochain> out;
  for (std::size_t p = 0; p <= max_power; ++p) {
    Cochain c(3, m, m);
    for (std::size_t a = 0; a <= p && a < omegas.size(); ++a) {
      const std::size_t b = p - a;
      if (b >= omegas.size()) continue;
      const Cochain& wa = omegas[a];
      const Cochain& wb = omegas[b];
      for_each_tuple(3, m, [&](std::span<const std::size_t> t) {
        const std::size_t vw[2] = {t[1], t[2]};
        const std::size_t uv[2] = {t[0], t[1]};
        const std::size_t uw[2] = {t[0], t[2]};
        const std::size_t u_slot[2] = {t[0], 0};
        const std::size_t w_slot[2] = {0, t[2]};
        const std::size_t v_slot[2] = {t[1], 0};
        Vector r = wa.value_with(u_slot, 1, wb.value(vw));
        add_scaled(r, -1, wa.value_with(w_slot, 0, wb.value(uv)));
        add_scaled(r, -1, wa.value_with(v_slot, 1, wb.value(uw)));
        c.add(t, 1, r);
      });
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace rba
