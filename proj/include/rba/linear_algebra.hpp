#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "rba/matrix.hpp"

namespace rba {

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination over Q. The pivot for each column is the first
/// row (at or below the current one) holding a nonzero entry, so the result
/// depends only on the input matrix.
inline RowEchelon row_reduce(Matrix m) {
  RowEchelon out;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(m(p, j), m(r, j));
    }
    const Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < cols; ++j) {
      if (m(r, j) != 0) m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (m(r, j) != 0) m(i, j) -= f * m(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m).pivots.size(); }

namespace detail {

// Null-space basis read off an RREF: one vector per free column, with a 1 in
// that column and the negated pivot-row entries in the pivot columns.
inline std::vector<Vector> kernel_from_rref(const RowEchelon& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v = zero_vector(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
      const auto& a = e.reduced(i, free);
      if (a != 0) v[e.pivots[i]] = -a;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// Basis of {v : m v = 0}; exactly cols - rank vectors.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  return detail::kernel_from_rref(row_reduce(m), m.cols());
}

struct Solution {
  Vector particular;
  std::vector<Vector> kernel;
};

/// Solves m x = b exactly. Absent when the system is inconsistent; otherwise
/// the particular solution has every free variable set to zero.
inline std::optional<Solution> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) {
    throw InputError("right-hand side length " + std::to_string(b.size()) + " does not match " +
                     std::to_string(m.rows()) + " rows");
  }
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  RowEchelon e = row_reduce(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;

  Solution s;
  s.particular = zero_vector(m.cols());
  for (std::size_t i = 0; i < e.pivots.size(); ++i) s.particular[e.pivots[i]] = e.reduced(i, m.cols());

  // Drop the augmented column before reading off the kernel.
  RowEchelon coeffs;
  coeffs.pivots = e.pivots;
  coeffs.reduced = Matrix(e.reduced.rows(), m.cols());
  for (std::size_t r = 0; r < e.reduced.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) coeffs.reduced(r, c) = e.reduced(r, c);
  s.kernel = detail::kernel_from_rref(coeffs, m.cols());
  return s;
}

/// True iff v lies in the column span of m.
inline bool in_column_space(const Matrix& m, const Vector& v) { return solve(m, v).has_value(); }

}  // namespace rba
