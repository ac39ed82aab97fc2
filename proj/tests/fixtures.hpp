#pragma once

// Shared test fixtures: small Leibniz algebras, representations, known
// Rota-Baxter operators, and seeded random generators.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "rba/rba.hpp"

namespace rba::testing {

inline Matrix mat(std::size_t rows, std::size_t cols, std::initializer_list<Rational> entries) {
  return Matrix(rows, cols, std::vector<Rational>(entries));
}

inline Vector vec(std::initializer_list<Rational> entries) { return Vector(entries); }

// 3-dimensional Leibniz algebra with the single bracket [e1, e1] = e3.
inline LeibnizAlgebra g3_algebra() { return LeibnizAlgebra::from_brackets(3, {{0, 0, 2, Rational(1)}}); }

inline RepresentationPtr g3_regular() { return share(regular_representation(g3_algebra())); }

// dim 2, [e2, e2] = e1.
inline LeibnizAlgebra nilpotent2_algebra() { return LeibnizAlgebra::from_brackets(2, {{1, 1, 0, Rational(1)}}); }

// dim 2 Lie algebra, [e1, e2] = e2 = -[e2, e1].
inline LeibnizAlgebra affine2_algebra() {
  return LeibnizAlgebra::from_brackets(2, {{0, 1, 1, Rational(1)}, {1, 0, 1, Rational(-1)}});
}

// dim 2 non-Lie Leibniz algebra, [e1, e2] = e2 and every other bracket zero.
inline LeibnizAlgebra left2_algebra() { return LeibnizAlgebra::from_brackets(2, {{0, 1, 1, Rational(1)}}); }

// g3 acting on a 2-dimensional V: rho_L(e1) = E12, rho_L(e2) = I,
// rho_L(e3) = 0, rho_R = -rho_L.
inline RepresentationPtr g3_on_plane() {
  std::vector<Matrix> l = {Matrix::unit(2, 2, 0, 1), Matrix::identity(2), Matrix(2, 2)};
  std::vector<Matrix> r;
  for (const auto& x : l) r.push_back(-x);
  return share(Representation(g3_algebra(), 2, l, r));
}

// affine2 acting on a line: rho_L(e1) = 1, rho_L(e2) = 0, rho_R = -rho_L.
inline RepresentationPtr affine2_on_line() {
  return share(Representation(affine2_algebra(), 1, {mat(1, 1, {1}), mat(1, 1, {0})}, {mat(1, 1, {-1}), mat(1, 1, {0})}));
}

struct Fixture {
  std::string name;
  RepresentationPtr rep;
};

inline std::vector<Fixture> all_fixtures() {
  return {
      {"g3-regular", g3_regular()},
      {"nilpotent2-regular", share(regular_representation(nilpotent2_algebra()))},
      {"affine2-regular", share(regular_representation(affine2_algebra()))},
      {"left2-regular", share(regular_representation(left2_algebra()))},
      {"g3-on-plane", g3_on_plane()},
      {"affine2-on-line", affine2_on_line()},
  };
}

// Example operators on g3 with the regular representation (row-major a_pq).
inline Matrix family_ii_instance() {
  // a11=2, a21=5, a22=7, a31=4, a32=9, a33=1
  return mat(3, 3, {2, 0, 0, 5, 7, 0, 4, 9, 1});
}

inline bool in_family_i(const Matrix& t) { return t(0, 0) == 0 && t(0, 1) == 0 && t(0, 2) == 0; }

inline bool in_family_ii(const Matrix& t) {
  return t(0, 1) == 0 && t(0, 2) == 0 && t(1, 2) == 0 && t(0, 0) != 0 && t(2, 2) == t(0, 0) / 2;
}

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  // Small rationals p/q with |p| <= 4, 1 <= q <= 3.
  Rational rational() { return Rational(integer(-4, 4), integer(1, 3)); }

  Rational nonzero_rational() {
    Rational r = 0;
    while (r == 0) r = rational();
    return r;
  }

  Matrix matrix(std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rational();
    return m;
  }

  Vector vector(std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = rational();
    return v;
  }

  Cochain cochain(std::size_t degree, std::size_t source, std::size_t target) {
    Cochain c(degree, source, target);
    Vector flat(c.size());
    for (auto& x : flat) x = integer(0, 2) == 0 ? rational() : Rational(0);
    return Cochain::from_flat(degree, source, target, std::move(flat));
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<int>(n) - 1)); }

 private:
  std::mt19937 gen_;
};

// Rota-Baxter operators on the {-1, 0, 1} grid; cached per fixture name.
inline const std::vector<LinearOperator>& grid_operators(const Fixture& f) {
  static std::map<std::string, std::vector<LinearOperator>> cache;
  auto it = cache.find(f.name);
  if (it == cache.end()) {
    it = cache.emplace(f.name, brute_force_search(f.rep, {Rational(-1), Rational(0), Rational(1)})).first;
  }
  return it->second;
}

// A random Rota-Baxter operator on the fixture: a nonzero rational multiple
// of a grid solution, or on g3-regular a random member of family (i)/(ii).
inline LinearOperator random_rb(const Fixture& f, Rng& rng) {
  if (f.name == "g3-regular" && rng.integer(0, 1) == 0) {
    Matrix t = rng.matrix(3, 3);
    if (rng.integer(0, 1) == 0) {
      t(0, 0) = t(0, 1) = t(0, 2) = 0;
    } else {
      t(0, 0) = rng.nonzero_rational();
      t(0, 1) = t(0, 2) = t(1, 2) = 0;
      t(2, 2) = t(0, 0) / 2;
    }
    return LinearOperator(f.rep, t);
  }
  const auto& ops = grid_operators(f);
  const auto& base = ops[rng.index(ops.size())];
  return base.with_matrix(rng.nonzero_rational() * base.matrix());
}

}  // namespace rba::testing
