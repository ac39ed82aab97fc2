#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace rba;
using namespace rba::testing;

TEST(LeibnizAlgebra, StructureConstantsAndBracket) {
  const auto g3 = g3_algebra();
  EXPECT_EQ(g3.dim(), 3u);
  EXPECT_EQ(g3.coefficient(0, 0, 2), Rational(1));
  EXPECT_EQ(g3.bracket_basis(0, 0), vec({0, 0, 1}));
  EXPECT_EQ(g3.bracket_basis(0, 1), vec({0, 0, 0}));
  // [a e1 + ..., b e1 + ...] = a b e3
  EXPECT_EQ(g3.bracket(vec({2, 5, 7}), vec({3, -1, 4})), vec({0, 0, 6}));
  ASSERT_EQ(g3.nonzero_brackets().size(), 1u);
}

TEST(LeibnizAlgebra, RepeatedEntriesAccumulate) {
  const auto a = LeibnizAlgebra::from_brackets(2, {{0, 1, 1, Rational(1)}, {0, 1, 1, Rational(1, 2)}});
  EXPECT_EQ(a.coefficient(0, 1, 1), Rational(3, 2));
}

TEST(LeibnizAlgebra, OutOfRangeIndicesAreRejected) {
  EXPECT_THROW(LeibnizAlgebra::from_brackets(2, {{0, 2, 1, Rational(1)}}), InputError);
}

TEST(LeibnizIdentity, FixtureAlgebrasPass) {
  for (const auto& f : all_fixtures()) EXPECT_TRUE(check_leibniz_identity(f.rep->algebra).ok()) << f.name;
  EXPECT_TRUE(check_leibniz_identity(LeibnizAlgebra::from_brackets(2, {})).ok());
}

TEST(LeibnizIdentity, ViolationCarriesTheResidual) {
  // [e1,e1] = e2, [e2,e1] = e1: at (1,1,1) the identity reads 0 = e1 + 0.
  const auto bad = LeibnizAlgebra::from_brackets(2, {{0, 0, 1, Rational(1)}, {1, 0, 0, Rational(1)}});
  const auto check = check_leibniz_identity(bad);
  ASSERT_FALSE(check.ok());
  bool found = false;
  for (const auto& v : check.violations) {
    if (v.i == 0 && v.j == 0 && v.k == 0) {
      found = true;
      EXPECT_EQ(v.residual, vec({-1, 0}));
    }
    EXPECT_FALSE(is_zero(v.residual));
  }
  EXPECT_TRUE(found);
}

TEST(LeibnizIdentity, HoldsOnRandomVectorsForFixtureAlgebras) {
  Rng rng(11);
  for (const auto& f : all_fixtures()) {
    const auto& a = f.rep->algebra;
    for (int it = 0; it < 30; ++it) {
      const Vector x = rng.vector(a.dim()), y = rng.vector(a.dim()), z = rng.vector(a.dim());
      const Vector lhs = a.bracket(x, a.bracket(y, z));
      const Vector rhs = a.bracket(a.bracket(x, y), z) + a.bracket(y, a.bracket(x, z));
      EXPECT_EQ(lhs, rhs) << f.name;
    }
  }
}

TEST(Multiplication, LeftAndRightMatrices) {
  const auto g3 = g3_algebra();
  const Matrix l = left_multiplication(g3, basis_vector(3, 0));
  const Matrix r = right_multiplication(g3, basis_vector(3, 0));
  EXPECT_EQ(l, Matrix::unit(3, 3, 2, 0));
  EXPECT_EQ(r, Matrix::unit(3, 3, 2, 0));
  const auto aff = affine2_algebra();
  EXPECT_EQ(left_multiplication(aff, basis_vector(2, 0)), Matrix::unit(2, 2, 1, 1));
  EXPECT_EQ(right_multiplication(aff, basis_vector(2, 0)), -Matrix::unit(2, 2, 1, 1));
}

TEST(Representation, FixtureRepresentationsPass) {
  for (const auto& f : all_fixtures()) EXPECT_TRUE(check_representation(*f.rep).ok()) << f.name;
}

TEST(Representation, ZeroRepresentationIsValid) {
  EXPECT_TRUE(check_representation(Representation::zero(g3_algebra(), 4)).ok());
}

TEST(Representation, RegularRepresentationRefusesNonLeibniz) {
  const auto bad = LeibnizAlgebra::from_brackets(2, {{0, 0, 1, Rational(1)}, {1, 0, 0, Rational(1)}});
  EXPECT_THROW(regular_representation(bad), InvalidAlgebraError);
}

TEST(Representation, BrokenActionIsReported) {
  // affine2 on a line with rho_L(e2) = 1 breaks rho_L([e1,e2]) = [rho_L e1, rho_L e2] = 0.
  Representation rep(affine2_algebra(), 1, {mat(1, 1, {0}), mat(1, 1, {1})}, {mat(1, 1, {0}), mat(1, 1, {-1})});
  const auto check = check_representation(rep);
  ASSERT_FALSE(check.ok());
  bool left_hom = false;
  for (const auto& v : check.violations) {
    if (v.axiom == Axiom::LeftHomomorphism && v.i == 0 && v.j == 1) {
      left_hom = true;
      EXPECT_EQ(v.residual, mat(1, 1, {1}));
    }
  }
  EXPECT_TRUE(left_hom);
}

TEST(Representation, RightLeftRelationIsChecked) {
  // Zero algebra, V a line, rho_L = 1 and rho_R = 1: rho_R rho_L + rho_R rho_R = 2.
  Representation rep(LeibnizAlgebra::from_brackets(1, {}), 1, {mat(1, 1, {1})}, {mat(1, 1, {1})});
  const auto check = check_representation(rep);
  ASSERT_FALSE(check.ok());
  bool seen = false;
  for (const auto& v : check.violations) seen = seen || (v.axiom == Axiom::RightLeftRelation && v.residual == mat(1, 1, {2}));
  EXPECT_TRUE(seen);
  // The symmetric choice rho_R = -rho_L passes.
  Representation ok(LeibnizAlgebra::from_brackets(1, {}), 1, {mat(1, 1, {1})}, {mat(1, 1, {-1})});
  EXPECT_TRUE(check_representation(ok).ok());
}

TEST(Representation, ShapeErrors) {
  EXPECT_THROW(Representation(g3_algebra(), 2, {Matrix(2, 2)}, {Matrix(2, 2)}), InputError);
  EXPECT_THROW(Representation(g3_algebra(), 2, std::vector<Matrix>(3, Matrix(2, 3)), std::vector<Matrix>(3, Matrix(2, 2))),
               InputError);
}

TEST(Representation, ActionIsLinearInTheAlgebraArgument) {
  const auto rep = g3_on_plane();
  EXPECT_EQ(rep->rho_left(vec({1, 2, 0})), Matrix::unit(2, 2, 0, 1) + Rational(2) * Matrix::identity(2));
  EXPECT_EQ(rep->rho_right(vec({0, 1, 5})), -Matrix::identity(2));
}
