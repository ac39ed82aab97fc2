#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rba/errors.hpp"
#include "rba/matrix.hpp"
#include "rba/rational.hpp"

namespace rba {

inline std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

/// Calls fn(tuple) for every tuple in {0..dim-1}^length, in lexicographic
/// order (last index fastest). length 0 visits the empty tuple once.
inline void for_each_tuple(std::size_t length, std::size_t dim,
                           const std::function<void(std::span<const std::size_t>)>& fn) {
  std::vector<std::size_t> t(length, 0);
  if (length > 0 && dim == 0) return;
  while (true) {
    fn(t);
    std::size_t p = length;
    while (p > 0) {
      --p;
      if (++t[p] < dim) break;
      t[p] = 0;
      if (p == 0) return;
    }
    if (length == 0) return;
  }
}

/// A degree-k multilinear map f : V^{(x)k} -> W with dim V = source_dim and
/// dim W = target_dim, stored densely.
///
/// Flattening: the coefficient of e_j in f(e_{i1}, ..., e_{ik}) lives at
///   ((i1 * m + i2) * m + ... + ik) * n + j
/// with 0-based indices, m = source_dim, n = target_dim. Degree 0 holds a
/// single target vector.
class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t degree, std::size_t source_dim, std::size_t target_dim)
      : degree_(degree),
        source_dim_(source_dim),
        target_dim_(target_dim),
        coeffs_(int_pow(source_dim, degree) * target_dim, Rational(0)) {}

  static Cochain from_flat(std::size_t degree, std::size_t source_dim, std::size_t target_dim, Vector flat) {
    Cochain c(degree, source_dim, target_dim);
    if (flat.size() != c.coeffs_.size()) {
      throw InputError("cochain coefficient count " + std::to_string(flat.size()) + " does not match " +
                       std::to_string(c.coeffs_.size()));
    }
    c.coeffs_ = std::move(flat);
    return c;
  }

  /// Degree-0 cochain holding the vector x.
  static Cochain constant(std::size_t source_dim, const Vector& x) {
    return from_flat(0, source_dim, x.size(), x);
  }

  /// Degree-1 cochain of a linear map given as a target_dim x source_dim matrix.
  static Cochain from_matrix(const Matrix& m) {
    Cochain c(1, m.cols(), m.rows());
    for (std::size_t i = 0; i < m.cols(); ++i)
      for (std::size_t j = 0; j < m.rows(); ++j) c.coeffs_[i * m.rows() + j] = m(j, i);
    return c;
  }

  Matrix to_matrix() const {
    if (degree_ != 1) throw InputError("only degree-1 cochains convert to matrices");
    Matrix m(target_dim_, source_dim_);
    for (std::size_t i = 0; i < source_dim_; ++i)
      for (std::size_t j = 0; j < target_dim_; ++j) m(j, i) = coeffs_[i * target_dim_ + j];
    return m;
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t source_dim() const noexcept { return source_dim_; }
  std::size_t target_dim() const noexcept { return target_dim_; }
  std::size_t tuple_count() const noexcept { return int_pow(source_dim_, degree_); }
  std::size_t size() const noexcept { return coeffs_.size(); }

  const Vector& flat() const noexcept { return coeffs_; }

  std::size_t tuple_offset(std::span<const std::size_t> tuple) const {
    if (tuple.size() != degree_) throw InputError("cochain argument count mismatch");
    std::size_t idx = 0;
    for (auto i : tuple) idx = idx * source_dim_ + i;
    return idx * target_dim_;
  }

  Vector value(std::span<const std::size_t> tuple) const {
    const std::size_t off = tuple_offset(tuple);
    return Vector(coeffs_.begin() + off, coeffs_.begin() + off + target_dim_);
  }

  Rational& at(std::span<const std::size_t> tuple, std::size_t j) { return coeffs_[tuple_offset(tuple) + j]; }

  void add(std::span<const std::size_t> tuple, const Rational& s, const Vector& v) {
    const std::size_t off = tuple_offset(tuple);
    for (std::size_t j = 0; j < target_dim_; ++j) {
      if (v[j] != 0) coeffs_[off + j] += s * v[j];
    }
  }

  /// f(e_{t1}, ..., v, ..., e_{tk}) with the arbitrary vector v in position
  /// `slot` (the tuple entry at that position is ignored).
  Vector value_with(std::span<const std::size_t> tuple, std::size_t slot, const Vector& v) const {
    std::vector<std::size_t> t(tuple.begin(), tuple.end());
    Vector out = zero_vector(target_dim_);
    for (std::size_t r = 0; r < source_dim_; ++r) {
      if (v[r] == 0) continue;
      t[slot] = r;
      const std::size_t off = tuple_offset(t);
      for (std::size_t j = 0; j < target_dim_; ++j) {
        if (coeffs_[off + j] != 0) out[j] += v[r] * coeffs_[off + j];
      }
    }
    return out;
  }

  /// Multilinear evaluation on arbitrary arguments.
  Vector evaluate(std::span<const Vector> args) const {
    if (args.size() != degree_) throw InputError("cochain argument count mismatch");
    std::vector<std::vector<std::pair<std::size_t, Rational>>> support(degree_);
    for (std::size_t p = 0; p < degree_; ++p) {
      if (args[p].size() != source_dim_) throw InputError("cochain argument has wrong length");
      for (std::size_t i = 0; i < source_dim_; ++i) {
        if (args[p][i] != 0) support[p].emplace_back(i, args[p][i]);
      }
      if (support[p].empty()) return zero_vector(target_dim_);
    }
    Vector out = zero_vector(target_dim_);
    std::vector<std::size_t> pick(degree_, 0);
    std::vector<std::size_t> tuple(degree_);
    while (true) {
      Rational s = 1;
      for (std::size_t p = 0; p < degree_; ++p) {
        tuple[p] = support[p][pick[p]].first;
        s *= support[p][pick[p]].second;
      }
      const std::size_t off = tuple_offset(tuple);
      for (std::size_t j = 0; j < target_dim_; ++j) {
        if (coeffs_[off + j] != 0) out[j] += s * coeffs_[off + j];
      }
      std::size_t p = degree_;
      while (p > 0) {
        --p;
        if (++pick[p] < support[p].size()) break;
        pick[p] = 0;
        if (p == 0) return out;
      }
      if (degree_ == 0) return out;
    }
  }

  bool is_zero() const { return rba::is_zero(coeffs_); }

  bool same_shape(const Cochain& o) const {
    return degree_ == o.degree_ && source_dim_ == o.source_dim_ && target_dim_ == o.target_dim_;
  }

  Cochain& operator+=(const Cochain& o) {
    check_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Cochain& operator-=(const Cochain& o) {
    check_shape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Cochain& operator*=(const Rational& s) {
    for (auto& x : coeffs_) x *= s;
    return *this;
  }

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Rational& s, Cochain c) { return c *= s; }
  friend Cochain operator-(Cochain c) { return c *= Rational(-1); }
  friend bool operator==(const Cochain&, const Cochain&) = default;

 private:
  void check_shape(const Cochain& o) const {
    if (!same_shape(o)) throw InputError("cochain shape mismatch");
  }

  std::size_t degree_ = 0;
  std::size_t source_dim_ = 0;
  std::size_t target_dim_ = 0;
  Vector coeffs_;
};

/// Basis cochain: 1 at flat position `index`.
inline Cochain unit_cochain(std::size_t degree, std::size_t source_dim, std::size_t target_dim, std::size_t index) {
  Cochain c(degree, source_dim, target_dim);
  Vector flat = c.flat();
  flat.at(index) = 1;
  return Cochain::from_flat(degree, source_dim, target_dim, std::move(flat));
}

}  // namespace rba
