#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace jointspec;
using oracle::mat;
using oracle::vec;

namespace {

const Tolerance tol;

LieAlgebra affine() { return LieAlgebra::from_brackets(2, {{0, 1, vec({0, 1})}}); }
LieAlgebra heisenberg() { return LieAlgebra::from_brackets(3, {{0, 1, vec({0, 0, 1})}}); }
LieAlgebra abelian(Index n) { return LieAlgebra(n); }

Representation affine_rep() {
  return make_representation(affine(), {mat({{1, 0}, {0, 0}}), mat({{0, 1}, {0, 0}})});
}

Subspace span(const Matrix& cols) { return column_span(cols, tol); }
SubalgebraBasis sub(const Matrix& cols) { return {span(cols)}; }

std::vector<Scalar> sorted_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  std::vector<Scalar> v(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  for (auto& x : v) x = Scalar(std::round(x.real() * 1e9) / 1e9, std::round(x.imag() * 1e9) / 1e9);
  std::sort(v.begin(), v.end(), [](Scalar a, Scalar b) { return a.real() < b.real(); });
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// liealg

TEST(LieAlgebra, ValidateExamples) {
  const auto a = validate(affine(), tol);
  EXPECT_TRUE(a.antisymmetric && a.jacobi && a.solvable && !a.nilpotent);
  EXPECT_EQ(oracle::jacobi_defect(affine()), 0.0);

  const auto bad = LieAlgebra::from_brackets(3, {{0, 1, vec({1, 0, 0})}, {0, 2, vec({0, 1, 0})}});
  EXPECT_EQ(oracle::jacobi_defect(bad), 1.0);
  const auto rb = validate(bad, tol);
  EXPECT_FALSE(rb.jacobi);
  EXPECT_NEAR(rb.jacobi_residual, 1.0, 1e-12);

  // [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
  const auto so3 = LieAlgebra::from_brackets(3, {{0, 1, vec({0, 0, 1})}, {1, 2, vec({1, 0, 0})}, {0, 2, vec({0, -1, 0})}});
  EXPECT_EQ(oracle::jacobi_defect(so3), 0.0);
  EXPECT_EQ(oracle::derived_dims(so3), (std::vector<Index>{3}));
  const auto rs = validate(so3, tol);
  EXPECT_TRUE(rs.jacobi);
  EXPECT_FALSE(rs.solvable);
  EXPECT_THROW(require_valid(so3, tol), input_error);
}

TEST(LieAlgebra, AntisymmetryViolationDetected) {
  LieAlgebra a(2);
  a.set(0, 1, 1, 1.0);
  EXPECT_FALSE(validate(a, tol).antisymmetric);
}

TEST(LieAlgebra, BracketExamples) {
  const auto a = affine();
  EXPECT_EQ(a.bracket(vec({1, 0}), vec({0, 1})), vec({0, 1}));
  EXPECT_TRUE(a.bracket(vec({3, -2}), vec({3, -2})).isZero(0.0));
  EXPECT_EQ(heisenberg().bracket(vec({0, 1, 0}), vec({1, 0, 0})), vec({0, 0, -1}));
}

TEST(LieAlgebra, FromBracketsRejectsBadInput) {
  EXPECT_THROW(LieAlgebra::from_brackets(2, {{1, 0, vec({0, 1})}}), input_error);
  EXPECT_THROW(LieAlgebra::from_brackets(2, {{0, 2, vec({0, 1})}}), input_error);
  EXPECT_THROW(LieAlgebra::from_brackets(2, {{0, 1, vec({0, 1, 0})}}), input_error);
}

TEST(LieAlgebra, Series) {
  const auto ds = derived_series(affine(), tol);
  ASSERT_EQ(ds.size(), 3u);
  EXPECT_EQ(ds[0].dim(), 2);
  EXPECT_TRUE(same_subspace(ds[1], span(mat({{0}, {1}})), tol));
  EXPECT_EQ(ds[2].dim(), 0);
  EXPECT_EQ(oracle::derived_dims(affine()), (std::vector<Index>{2, 1, 0}));
  EXPECT_TRUE(is_solvable(affine(), tol));
  EXPECT_FALSE(is_nilpotent(affine(), tol));

  const auto lc = lower_central_series(heisenberg(), tol);
  ASSERT_EQ(lc.size(), 3u);
  EXPECT_EQ(lc[0].dim(), 3);
  EXPECT_TRUE(same_subspace(lc[1], span(mat({{0}, {0}, {1}})), tol));
  EXPECT_EQ(lc[2].dim(), 0);
  EXPECT_TRUE(is_nilpotent(heisenberg(), tol));

  EXPECT_EQ(derived_subalgebra(abelian(2), tol).dim(), 0);
  EXPECT_TRUE(is_nilpotent(abelian(2), tol));
}

TEST(LieAlgebra, DerivedSeriesMatchesExactOracleOnRandomAlgebras) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto t = oracle::triangular_instance(s, 4, 4);
    const auto& alg = t.rep.algebra;
    std::vector<Index> dims;
    for (const auto& sp : derived_series(alg, tol)) dims.push_back(sp.dim());
    EXPECT_EQ(dims, oracle::derived_dims(alg)) << "seed " << s;
    EXPECT_LT(oracle::jacobi_defect(alg), 1e-9);
  }
}

TEST(LieAlgebra, OppositeDirectSumAd) {
  EXPECT_EQ(opposite(affine()).bracket(vec({1, 0}), vec({0, 1})), vec({0, -1}));
  EXPECT_EQ(opposite(opposite(affine())), affine());

  const auto ds = direct_sum(affine(), abelian(1));
  EXPECT_EQ(ds.dim(), 3);
  EXPECT_TRUE(ds.bracket(vec({1, 0, 0}), vec({0, 0, 1})).isZero(0.0));
  EXPECT_EQ(ds.bracket(vec({1, 0, 0}), vec({0, 1, 0})), vec({0, 1, 0}));

  EXPECT_EQ(ad_matrix(affine(), vec({1, 0})), mat({{0, 0}, {0, 1}}));
}

TEST(LieAlgebra, SubalgebraClosure) {
  EXPECT_TRUE(subalgebra_closure_check(affine(), sub(mat({{1}, {1}})), tol));
  EXPECT_TRUE(subalgebra_closure_check(heisenberg(), sub(mat({{1, 0}, {0, 0}, {0, 1}})), tol));
  EXPECT_FALSE(subalgebra_closure_check(heisenberg(), sub(mat({{1, 0}, {0, 1}, {0, 0}})), tol));
  EXPECT_THROW(make_subalgebra(heisenberg(), mat({{1, 0}, {0, 1}, {0, 0}}), tol), input_error);
}

// ---------------------------------------------------------------------------
// cartan

TEST(Cartan, AffineSearch) {
  for (std::uint64_t seed : {1u, 2u, 3u, 99u}) {
    const auto h = find_cartan_subalgebra(affine(), seed, tol);
    ASSERT_EQ(h.basis.dim(), 1);
    EXPECT_TRUE(is_cartan(affine(), h, tol));
    // span{e1 + t e2}: the e1 coordinate never vanishes
    EXPECT_GT(std::abs(h.basis.basis()(0, 0)), 1e-6);
    // Fitting null oracle: kernel of (ad x)^n for x in H
    const Matrix ad = affine().ad(h.basis.basis().col(0));
    EXPECT_TRUE(same_subspace(kernel_basis(ad * ad, tol), h.basis, tol));
  }
}

TEST(Cartan, NilpotentAlgebrasAreTheirOwnCartan) {
  EXPECT_EQ(find_cartan_subalgebra(heisenberg(), 1, tol).basis.dim(), 3);
  EXPECT_EQ(find_cartan_subalgebra(abelian(2), 1, tol).basis.dim(), 2);
}

TEST(Cartan, IsCartanExamples) {
  EXPECT_TRUE(is_cartan(affine(), sub(mat({{1}, {0}})), tol));
  EXPECT_TRUE(is_cartan(affine(), sub(mat({{1}, {1}})), tol));
  EXPECT_FALSE(is_cartan(affine(), sub(mat({{0}, {1}})), tol));
  EXPECT_FALSE(is_cartan(heisenberg(), sub(mat({{0}, {0}, {1}})), tol));
}

TEST(Cartan, AffineRoots) {
  const auto cd = root_decomposition(affine(), sub(mat({{1}, {0}})), tol);
  ASSERT_EQ(cd.roots.size(), 2u);
  EXPECT_NEAR(std::abs(cd.roots[0].alpha(0)), 0.0, 1e-12);
  EXPECT_TRUE(same_subspace(cd.roots[0].space, span(mat({{1}, {0}})), tol));
  EXPECT_NEAR(std::abs(cd.roots[1].alpha(0) - 1.0), 0.0, 1e-12);
  EXPECT_TRUE(same_subspace(cd.roots[1].space, span(mat({{0}, {1}})), tol));
  EXPECT_TRUE(same_subspace(cd.h_star, span(mat({{0}, {1}})), tol));
  EXPECT_THROW(root_decomposition(affine(), sub(mat({{0}, {1}})), tol), input_error);
}

TEST(Cartan, HeisenbergSingleZeroRoot) {
  const auto cd = root_decomposition(heisenberg(), {Subspace::full(3)}, tol);
  ASSERT_EQ(cd.roots.size(), 1u);
  EXPECT_TRUE(cd.roots[0].alpha.isZero(1e-12));
  EXPECT_EQ(cd.h_star.dim(), 0);
}

TEST(Cartan, DirectSumOfAffineCopies) {
  const auto ds = direct_sum(affine(), affine());
  const auto cd = root_decomposition(ds, sub(mat({{1, 0}, {0, 0}, {0, 1}, {0, 0}})), tol);
  EXPECT_EQ(cd.h_star.dim(), 2);
  ASSERT_EQ(cd.roots.size(), 3u);
  EXPECT_TRUE(cd.roots[0].alpha.isZero(1e-12));
  EXPECT_TRUE(same_subspace(cd.h_star, span(mat({{0, 0}, {1, 0}, {0, 0}, {0, 1}})), tol));
}

TEST(Cartan, LiftVanishesOnHStarAndRestrictsBack) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto t = oracle::triangular_instance(100 + s, 3, 3);
    const auto cd = cartan_decomposition(t.rep.algebra, s + 1, tol);
    EXPECT_TRUE(is_cartan(t.rep.algebra, cd.h, tol));
    // H* lies in L^2 and L = H + L^2
    const Subspace l2 = derived_subalgebra(t.rep.algebra, tol);
    EXPECT_TRUE(contains(l2, cd.h_star, tol));
    EXPECT_EQ(subspace_sum(cd.h.basis, l2, tol).dim(), t.rep.algebra.dim());
    Vector w(cd.h_dim());
    for (Index j = 0; j < w.size(); ++j) w(j) = Scalar(j + 1.0, -0.5 * j);
    const Vector f = cd.lift_functional(w);
    EXPECT_LT((cd.restrict_functional(f) - w).norm(), 1e-10);
    for (Index j = 0; j < cd.h_star.dim(); ++j) EXPECT_LT(std::abs(pair(f, cd.h_star.basis().col(j))), 1e-10);
  }
}

// ---------------------------------------------------------------------------
// rep

TEST(Representation, ValidateExamples) {
  EXPECT_TRUE(validate_rep(affine_rep(), tol).passed());
  const auto bad = make_representation(affine(), {mat({{1, 0}, {0, 0}}), Matrix::Identity(2, 2)});
  EXPECT_FALSE(validate_rep(bad, tol).passed());
  EXPECT_NEAR(validate_rep(bad, tol).homomorphism_residual, 1.0, 1e-9);
  const auto zero = make_representation(affine(), {Matrix::Zero(2, 2), Matrix::Zero(2, 2)});
  EXPECT_TRUE(validate_rep(zero, tol).passed());
  EXPECT_THROW(make_representation(affine(), {Matrix::Zero(2, 2)}), input_error);
  EXPECT_THROW(make_representation(affine(), {Matrix::Zero(2, 2), Matrix::Zero(3, 3)}), input_error);
}

TEST(Representation, Restrict) {
  const auto r1 = restrict(affine_rep(), sub(mat({{1}, {0}})), tol);
  ASSERT_EQ(r1.algebra.dim(), 1);
  EXPECT_LT((r1.mats[0] - mat({{1, 0}, {0, 0}})).norm(), 1e-12);
  const auto r2 = restrict(affine_rep(), sub(mat({{0}, {1}})), tol);
  EXPECT_LT((r2.mats[0] - mat({{0, 1}, {0, 0}})).norm(), 1e-12);
  const auto full = restrict(affine_rep(), {Subspace::full(2)}, tol);
  EXPECT_LT((full.mats[0] - affine_rep().mats[0]).norm(), 1e-12);
  EXPECT_LT((full.mats[1] - affine_rep().mats[1]).norm(), 1e-12);
}

TEST(Representation, Adjoint) {
  const auto a = adjoint_rep(affine_rep());
  EXPECT_EQ(a.mats[1], mat({{0, 0}, {1, 0}}));
  EXPECT_TRUE(validate_rep(a, tol).passed());
  const auto d = make_representation(abelian(1), {mat({{2, 0}, {0, 3}})});
  EXPECT_EQ(adjoint_rep(d).mats[0], d.mats[0]);
  const auto aa = adjoint_rep(a);
  EXPECT_EQ(aa.algebra, affine());
  EXPECT_EQ(aa.mats, affine_rep().mats);
}

TEST(Representation, MultiplicationOperators) {
  const auto c = make_representation(abelian(1), {mat({{3}})});
  EXPECT_EQ(left_mult_rep(c).mats[0], mat({{3}}));
  const auto l = left_mult_rep(affine_rep());
  const auto r = right_mult_rep(affine_rep());
  EXPECT_EQ(sorted_eigenvalues(l.mats[0]), (std::vector<Scalar>{0, 0, 1, 1}));
  EXPECT_EQ(sorted_eigenvalues(r.mats[0]), (std::vector<Scalar>{0, 0, 1, 1}));
  EXPECT_TRUE(validate_rep(l, tol).passed());
  EXPECT_TRUE(validate_rep(r, tol).passed());
  // R_rho(e1) on matrix units E_ij in row-major order: E_ij rho(e1) = [j == 0] E_ij
  EXPECT_EQ(r.mats[0], Matrix(mat({{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}})));
  EXPECT_THROW(left_mult_rep(affine_rep(), 3), input_error);
}

TEST(Representation, TensorAndMultiplication) {
  const auto a = make_representation(abelian(1), {mat({{1, 0}, {0, 0}})});
  const auto b = make_representation(abelian(1), {mat({{5, 0}, {0, 7}})});
  const auto t = tensor_rep(a, b);
  ASSERT_EQ(t.algebra.dim(), 2);
  // Kronecker sum of diagonals: joint eigenvalues (1,5),(1,7),(0,5),(0,7)
  EXPECT_EQ(t.mats[0].diagonal(), vec({1, 1, 0, 0}));
  EXPECT_EQ(t.mats[1].diagonal(), vec({5, 7, 5, 7}));
  EXPECT_TRUE(t.mats[0].isDiagonal() && t.mats[1].isDiagonal());

  const auto zero = make_representation(abelian(1), {mat({{0}})});
  const auto tz = tensor_rep(zero, affine_rep());
  EXPECT_EQ(tz.mats[1], affine_rep().mats[0]);
  EXPECT_EQ(tz.mats[2], affine_rep().mats[1]);

  const auto m = multiplication_rep(zero, b);
  EXPECT_EQ(sorted_eigenvalues(m.mats[1]), (std::vector<Scalar>{5, 7}));
  const auto m2 = multiplication_rep(affine_rep(), zero);
  EXPECT_EQ(m2.mats[0], affine_rep().mats[0]);
  EXPECT_TRUE(multiplication_rep(zero, zero).mats[0].isZero(0.0));
  EXPECT_TRUE(validate_rep(multiplication_rep(affine_rep(), affine_rep()), tol).passed());
  EXPECT_TRUE(validate_rep(tensor_rep(affine_rep(), affine_rep()), tol).passed());
}

TEST(Representation, DigestIsContentBased) {
  EXPECT_EQ(digest(affine_rep()), digest(affine_rep()));
  auto other = affine_rep();
  other.mats[0](1, 1) = 1e-300;
  EXPECT_NE(digest(affine_rep()), digest(other));
}
