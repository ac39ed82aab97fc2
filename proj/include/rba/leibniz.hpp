#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "rba/errors.hpp"
#include "rba/matrix.hpp"
#include "rba/rational.hpp"

namespace rba {

/// One nonzero structure constant: [e_i, e_j] has coefficient `c` on e_k.
/// Indices here are 0-based; the JSON layer converts from 1-based.
struct BracketEntry {
  std::size_t i;
  std::size_t j;
  std::size_t k;
  Rational c;
};

/// Finite-dimensional algebra with a bilinear bracket given by structure
/// constants c^k_{ij}. Nothing is assumed about the bracket; the Leibniz
/// identity is verified separately by check_leibniz_identity.
class LeibnizAlgebra {
 public:
  LeibnizAlgebra() = default;
  explicit LeibnizAlgebra(std::size_t dim) : dim_(dim), c_(dim * dim * dim, Rational(0)) {}

  static LeibnizAlgebra from_brackets(std::size_t dim, const std::vector<BracketEntry>& entries) {
    LeibnizAlgebra a(dim);
    for (const auto& e : entries) {
      if (e.i >= dim || e.j >= dim || e.k >= dim) {
        throw InputError("bracket index out of range for dimension " + std::to_string(dim));
      }
      a.coefficient(e.i, e.j, e.k) += e.c;
    }
    return a;
  }

  std::size_t dim() const noexcept { return dim_; }

  Rational& coefficient(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * dim_ + j) * dim_ + k]; }
  const Rational& coefficient(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  Vector bracket_basis(std::size_t i, std::size_t j) const {
    return Vector(c_.begin() + (i * dim_ + j) * dim_, c_.begin() + (i * dim_ + j + 1) * dim_);
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    check_length(x);
    check_length(y);
    Vector out = zero_vector(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (y[j] == 0) continue;
        const Rational s = x[i] * y[j];
        for (std::size_t k = 0; k < dim_; ++k) {
          const auto& c = coefficient(i, j, k);
          if (c != 0) out[k] += s * c;
        }
      }
    }
    return out;
  }

  /// Nonzero structure constants in (i, j, k) lexicographic order.
  std::vector<BracketEntry> nonzero_brackets() const {
    std::vector<BracketEntry> out;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (coefficient(i, j, k) != 0) out.push_back({i, j, k, coefficient(i, j, k)});
    return out;
  }

  friend bool operator==(const LeibnizAlgebra&, const LeibnizAlgebra&) = default;

 private:
  void check_length(const Vector& v) const {
    if (v.size() != dim_) {
      throw InputError("vector of length " + std::to_string(v.size()) + " used in algebra of dimension " +
                       std::to_string(dim_));
    }
  }

  std::size_t dim_ = 0;
  std::vector<Rational> c_;
};

struct LeibnizViolation {
  std::size_t i, j, k;  // 0-based basis triple
  Vector residual;      // [e_i,[e_j,e_k]] - [[e_i,e_j],e_k] - [e_j,[e_i,e_k]]
};

struct LeibnizCheck {
  std::vector<LeibnizViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }
};

inline LeibnizCheck check_leibniz_identity(const LeibnizAlgebra& a) {
  LeibnizCheck out;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    const Vector ei = basis_vector(n, i);
    for (std::size_t j = 0; j < n; ++j) {
      const Vector ej = basis_vector(n, j);
      const Vector eij = a.bracket_basis(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        const Vector ek = basis_vector(n, k);
        Vector r = a.bracket(ei, a.bracket_basis(j, k));
        add_scaled(r, -1, a.bracket(eij, ek));
        add_scaled(r, -1, a.bracket(ej, a.bracket_basis(i, k)));
        if (!is_zero(r)) out.violations.push_back({i, j, k, std::move(r)});
      }
    }
  }
  return out;
}

/// Matrix of L_x : y -> [x, y].
inline Matrix left_multiplication(const LeibnizAlgebra& a, const Vector& x) {
  const std::size_t n = a.dim();
  std::vector<Vector> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cols.push_back(a.bracket(x, basis_vector(n, j)));
  return Matrix::from_columns(n, cols);
}

/// Matrix of R_x : y -> [y, x].
inline Matrix right_multiplication(const LeibnizAlgebra& a, const Vector& x) {
  const std::size_t n = a.dim();
  std::vector<Vector> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cols.push_back(a.bracket(basis_vector(n, j), x));
  return Matrix::from_columns(n, cols);
}

/// A pair of linear maps rho_L, rho_R : g -> gl(V), stored as one m x m
/// matrix per basis vector of g.
struct Representation {
  LeibnizAlgebra algebra;
  std::size_t dim = 0;
  std::vector<Matrix> left;
  std::vector<Matrix> right;

  Representation() = default;
  Representation(LeibnizAlgebra a, std::size_t m, std::vector<Matrix> rho_l, std::vector<Matrix> rho_r)
      : algebra(std::move(a)), dim(m), left(std::move(rho_l)), right(std::move(rho_r)) {
    const std::size_t n = algebra.dim();
    if (left.size() != n || right.size() != n) {
      throw InputError("representation needs " + std::to_string(n) + " left and right matrices, got " +
                       std::to_string(left.size()) + " and " + std::to_string(right.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (left[i].rows() != dim || left[i].cols() != dim || right[i].rows() != dim || right[i].cols() != dim) {
        throw InputError("representation matrix for basis vector " + std::to_string(i + 1) + " is not " +
                         std::to_string(dim) + "x" + std::to_string(dim));
      }
    }
  }

  static Representation zero(LeibnizAlgebra a, std::size_t m) {
    const std::size_t n = a.dim();
    return Representation(std::move(a), m, std::vector<Matrix>(n, Matrix(m, m)), std::vector<Matrix>(n, Matrix(m, m)));
  }

  std::size_t algebra_dim() const noexcept { return algebra.dim(); }

  Matrix rho_left(const Vector& x) const { return combine(left, x); }
  Matrix rho_right(const Vector& x) const { return combine(right, x); }

  friend bool operator==(const Representation&, const Representation&) = default;

 private:
  Matrix combine(const std::vector<Matrix>& mats, const Vector& x) const {
    if (x.size() != algebra.dim()) throw InputError("algebra vector has wrong length");
    Matrix out(dim, dim);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0) out += x[i] * mats[i];
    }
    return out;
  }
};

/// (g; L, R). Requires the Leibniz identity.
inline Representation regular_representation(const LeibnizAlgebra& a) {
  auto check = check_leibniz_identity(a);
  if (!check.ok()) {
    const auto& v = check.violations.front();
    throw InvalidAlgebraError("Leibniz identity fails at (" + std::to_string(v.i + 1) + "," + std::to_string(v.j + 1) +
                              "," + std::to_string(v.k + 1) + ")");
  }
  const std::size_t n = a.dim();
  std::vector<Matrix> l, r;
  for (std::size_t i = 0; i < n; ++i) {
    l.push_back(left_multiplication(a, basis_vector(n, i)));
    r.push_back(right_multiplication(a, basis_vector(n, i)));
  }
  return Representation(a, n, std::move(l), std::move(r));
}

enum class Axiom {
  LeftHomomorphism,    // rho_L([x,y]) = [rho_L(x), rho_L(y)]
  RightCompatibility,  // rho_R([x,y]) = [rho_L(x), rho_R(y)]
  RightLeftRelation,   // rho_R(y) rho_L(x) = -rho_R(y) rho_R(x)
};

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::LeftHomomorphism: return "left_homomorphism";
    case Axiom::RightCompatibility: return "right_compatibility";
    case Axiom::RightLeftRelation: return "right_left_relation";
  }
  return "";
}

struct AxiomViolation {
  Axiom axiom;
  std::size_t i, j;
  Matrix residual;
};

struct RepresentationCheck {
  std::vector<AxiomViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
  explicit operator bool() const noexcept { return ok(); }
};

/// Checks, for all basis pairs (i, j):
///   rho_L([e_i,e_j]) = [rho_L(e_i), rho_L(e_j)]
///   rho_R([e_i,e_j]) = [rho_L(e_i), rho_R(e_j)]
///   rho_R(e_j) rho_L(e_i) = -rho_R(e_j) rho_R(e_i)
inline RepresentationCheck check_representation(const Representation& rep) {
  RepresentationCheck out;
  const std::size_t n = rep.algebra_dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Vector eij = rep.algebra.bracket_basis(i, j);
      Matrix r2 = rep.rho_left(eij) - commutator(rep.left[i], rep.left[j]);
      if (!r2.is_zero()) out.violations.push_back({Axiom::LeftHomomorphism, i, j, std::move(r2)});
      Matrix r3 = rep.rho_right(eij) - commutator(rep.left[i], rep.right[j]);
      if (!r3.is_zero()) out.violations.push_back({Axiom::RightCompatibility, i, j, std::move(r3)});
      Matrix r4 = rep.right[j] * rep.left[i] + rep.right[j] * rep.right[i];
      if (!r4.is_zero()) out.violations.push_back({Axiom::RightLeftRelation, i, j, std::move(r4)});
    }
  }
  return out;
}

}  // namespace rba
