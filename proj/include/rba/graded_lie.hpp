#pragma once

#include <cstddef>
#include <vector>

#include "rba/cochain.hpp"
#include "rba/cohomology.hpp"
#include "rba/errors.hpp"
#include "rba/leibniz.hpp"
#include "rba/rota_baxter.hpp"
#include "rba/shuffle.hpp"

namespace rba {

namespace detail {

inline Rational sign_of(long long exponent, int perm_sign) {
  const int s = (exponent % 2 == 0) ? 1 : -1;
  return Rational(s * perm_sign);
}

// (v_{sigma(from)}, ..., v_{sigma(to)}), 1-based positions; v is 0-based storage.
inline void push_permuted(std::vector<std::size_t>& out, std::span<const std::size_t> v, const Shuffle& s,
                          std::size_t from, std::size_t to) {
  for (std::size_t p = from; p <= to && p >= 1; ++p) out.push_back(v[s(p) - 1]);
}

// (v_from, ..., v_to), 1-based.
inline void push_plain(std::vector<std::size_t>& out, std::span<const std::size_t> v, std::size_t from,
                       std::size_t to) {
  for (std::size_t p = from; p <= to && p >= 1; ++p) out.push_back(v[p - 1]);
}

}  // namespace detail

/// Graded bracket {g1, g2} of g1 in C^m(V, g) and g2 in C^n(V, g), m, n >= 1,
/// for the representation `rep` of g on V. The six sums run over shuffle
/// sets; in the two sums over three-block shuffles S(a, b, 1) the constraint
/// sends the last position of the middle block to the largest index, i.e. the
/// inner cochain always receives the last of the shuffled arguments and the
/// rho_R term acts on one of the earlier ones.
inline Cochain graded_bracket(const Cochain& g1, const Cochain& g2, const Representation& rep) {
  const std::size_t dn = rep.algebra_dim();
  const std::size_t dm = rep.dim;
  for (const Cochain* g : {&g1, &g2}) {
    if (g->source_dim() != dm || g->target_dim() != dn) {
      throw InputError("cochains must map tensor powers of V into g for this representation");
    }
    if (g->degree() == 0) throw InputError("graded bracket is defined on cochains of degree >= 1");
  }
  const std::size_t m = g1.degree();
  const std::size_t n = g2.degree();
  const std::size_t total = m + n;
  using LL = long long;

  // Shuffle sets per summation index k.
  std::vector<std::vector<Shuffle>> s1(m + 1), s2(m + 2), s3(m + 1), s5(n + 1), s6(n + 1);
  for (std::size_t k = 1; k <= m; ++k) {
    s1[k] = shuffles({k - 1, n});
    s3[k] = shuffles({k - 1, n - 1});
  }
  for (std::size_t k = 2; k <= m + 1; ++k) s2[k] = shuffles({k - 2, n, 1}, {{k + n - 2, k + n - 1}});
  for (std::size_t k = 1; k <= n; ++k) {
    s5[k] = shuffles({k - 1, m});
    s6[k] = shuffles({k - 1, m, 1}, {{k + m - 1, k + m}});
  }
  const std::vector<Shuffle> s4 = shuffles({m, n - 1});

  Cochain out(total, dm, dn);
  std::vector<std::size_t> a, b;
  for_each_tuple(total, dm, [&](std::span<const std::size_t> v) {
    Vector val = zero_vector(dn);

    // g1(v_s(1..k-1), rho_L(g2(v_s(k..k+n-1))) v_{k+n}, v_{k+n+1..m+n})
    for (std::size_t k = 1; k <= m; ++k) {
      for (const auto& s : s1[k]) {
        a.clear();
        detail::push_permuted(a, v, s, k, k + n - 1);
        const Vector y = g2.value(a);
        if (is_zero(y)) continue;
        const Vector w = rep.rho_left(y).column(v[k + n - 1]);
        b.clear();
        detail::push_permuted(b, v, s, 1, k - 1);
        b.push_back(0);
        detail::push_plain(b, v, k + n + 1, total);
        add_scaled(val, detail::sign_of(LL(k - 1) * LL(n) + 1, s.sign), g1.value_with(b, k - 1, w));
      }
    }
    // g1(v_s(1..k-2), rho_R(g2(v_s(k-1..k+n-2))) v_s(k+n-1), v_{k+n..m+n})
    for (std::size_t k = 2; k <= m + 1; ++k) {
      for (const auto& s : s2[k]) {
        a.clear();
        detail::push_permuted(a, v, s, k - 1, k + n - 2);
        const Vector y = g2.value(a);
        if (is_zero(y)) continue;
        const Vector w = rep.rho_right(y).column(v[s(k + n - 1) - 1]);
        b.clear();
        detail::push_permuted(b, v, s, 1, k - 2);
        b.push_back(0);
        detail::push_plain(b, v, k + n, total);
        add_scaled(val, detail::sign_of(LL(k) * LL(n), s.sign), g1.value_with(b, k - 2, w));
      }
    }
    // [g2(v_s(k..k+n-2), v_{k+n-1}), g1(v_s(1..k-1), v_{k+n..m+n})]
    for (std::size_t k = 1; k <= m; ++k) {
      for (const auto& s : s3[k]) {
        a.clear();
        detail::push_permuted(a, v, s, k, k + n - 2);
        a.push_back(v[k + n - 2]);
        b.clear();
        detail::push_permuted(b, v, s, 1, k - 1);
        detail::push_plain(b, v, k + n, total);
        add_scaled(val, detail::sign_of(LL(k - 1) * LL(n), s.sign),
                   rep.algebra.bracket(g2.value(a), g1.value(b)));
      }
    }
    // [g1(v_s(1..m)), g2(v_s(m+1..m+n-1), v_{m+n})]
    for (const auto& s : s4) {
      a.clear();
      detail::push_permuted(a, v, s, 1, m);
      b.clear();
      detail::push_permuted(b, v, s, m + 1, m + n - 1);
      b.push_back(v[total - 1]);
      add_scaled(val, detail::sign_of(LL(m) * LL(n) + 1, s.sign), rep.algebra.bracket(g1.value(a), g2.value(b)));
    }
    // g2(v_s(1..k-1), rho_L(g1(v_s(k..k+m-1))) v_{k+m}, v_{k+m+1..m+n})
    for (std::size_t k = 1; k <= n; ++k) {
      for (const auto& s : s5[k]) {
        a.clear();
        detail::push_permuted(a, v, s, k, k + m - 1);
        const Vector y = g1.value(a);
        if (is_zero(y)) continue;
        const Vector w = rep.rho_left(y).column(v[k + m - 1]);
        b.clear();
        detail::push_permuted(b, v, s, 1, k - 1);
        b.push_back(0);
        detail::push_plain(b, v, k + m + 1, total);
        add_scaled(val, detail::sign_of(LL(m) * LL(k + n - 1), s.sign), g2.value_with(b, k - 1, w));
      }
    }
    // g2(v_s(1..k-1), rho_R(g1(v_s(k..k+m-1))) v_s(k+m), v_{k+m+1..m+n})
    for (std::size_t k = 1; k <= n; ++k) {
      for (const auto& s : s6[k]) {
        a.clear();
        detail::push_permuted(a, v, s, k, k + m - 1);
        const Vector y = g1.value(a);
        if (is_zero(y)) continue;
        const Vector w = rep.rho_right(y).column(v[s(k + m) - 1]);
        b.clear();
        detail::push_permuted(b, v, s, 1, k - 1);
        b.push_back(0);
        detail::push_plain(b, v, k + m + 1, total);
        add_scaled(val, detail::sign_of(LL(m) * LL(k + n - 1) + 1, s.sign), g2.value_with(b, k - 1, w));
      }
    }
    out.add(v, 1, val);
  });
  return out;
}

/// d_T f = {T, f}.
inline Cochain d_T(const LinearOperator& t, const Cochain& f) {
  require_rota_baxter(t);
  return graded_bracket(t.as_cochain(), f, t.rep());
}

/// {X, X} = 0.
inline bool maurer_cartan_check(const LinearOperator& candidate) {
  require_valid_representation(candidate.rep());
  const Cochain x = candidate.as_cochain();
  return graded_bracket(x, x, candidate.rep()).is_zero();
}

/// d_T f computed by the coboundary formula equals (-1)^{n-1} {T, f}.
inline bool sign_relation_check(const LinearOperator& t, const Cochain& f) {
  const Cochain lhs = rb_coboundary(t, f);
  Cochain rhs = d_T(t, f);
  if ((f.degree() - 1) % 2 == 1) rhs *= Rational(-1);
  return lhs == rhs;
}

}  // namespace rba
