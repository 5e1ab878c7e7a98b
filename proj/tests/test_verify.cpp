#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace jointspec;
using oracle::mat;
using oracle::vec;

namespace {

const CheckOptions opt{};

Representation affine_rep() {
  return make_representation(LieAlgebra::from_brackets(2, {{0, 1, vec({0, 1})}}),
                             {mat({{1, 0}, {0, 0}}), mat({{0, 1}, {0, 0}})});
}

Representation heisenberg_rep() {
  const auto alg = LieAlgebra::from_brackets(3, {{0, 1, vec({0, 0, 1})}});
  return make_representation(alg, {mat({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}), mat({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}}),
                                   mat({{0, 0, 1}, {0, 0, 0}, {0, 0, 0}})});
}

Representation diag57() { return make_representation(LieAlgebra(1), {mat({{5, 0}, {0, 7}})}); }

void expect_pass(const CheckReport& r) {
  EXPECT_TRUE(r.passed) << to_json(r).dump(1);
  EXPECT_FALSE(r.rejected);
  EXPECT_FALSE(r.assertions.empty());
  EXPECT_LE(r.distance, 1e-6);
}

}  // namespace

TEST(Checks, AffineExamples) {
  const auto r = affine_rep();
  expect_pass(check_common_eigenvector(r, opt));
  expect_pass(check_duality(r, opt));
  expect_pass(check_split_identity(r, opt));
  expect_pass(check_structure(r, opt));
  expect_pass(check_tensor_formula(r, diag57(), opt));
  expect_pass(check_multiplication_formula(r, diag57(), opt));
  expect_pass(check_multiplication_formula(r, r, opt));
}

TEST(Checks, AffineCartanIndependence) {
  const auto r = affine_rep();
  const Tolerance tol;
  const auto rep = check_cartan_independence(
      r, {make_subalgebra(r.algebra, mat({{1}, {0}}), tol), make_subalgebra(r.algebra, mat({{1}, {1}}), tol)}, opt);
  expect_pass(rep);
  expect_pass(check_cartan_independence(r, std::vector<std::uint64_t>{1, 2, 3}, opt));
}

TEST(Checks, AffineProjections) {
  const auto r = affine_rep();
  const Tolerance tol;
  for (const Matrix& span : {mat({{1}, {0}}), mat({{0}, {1}}), mat({{1}, {1}}), mat({{1, 0}, {0, 1}})})
    expect_pass(check_projection(r, make_subalgebra(r.algebra, span, tol), opt));
  const auto probes = probe_subalgebras(r.algebra, 1, tol);
  EXPECT_GE(probes.size(), 3u);
  for (const auto& s : probes) {
    EXPECT_LE(s.basis.dim(), 2);
    EXPECT_TRUE(subalgebra_closure_check(r.algebra, s, tol));
  }
}

TEST(Checks, HeisenbergNilpotentCoincidence) {
  expect_pass(check_nilpotent_coincidence(heisenberg_rep(), opt));
  expect_pass(check_structure(heisenberg_rep(), opt));
  EXPECT_THROW(check_nilpotent_coincidence(affine_rep(), opt), input_error);
}

TEST(Checks, StructureRecordsComplexResidualBound) {
  const auto rep = check_structure(affine_rep(), opt);
  bool found = false;
  for (const auto& a : rep.assertions)
    if (a.relation == Relation::bound) {
      found = true;
      EXPECT_LE(a.value, kComplexResidualLimit);
    }
  EXPECT_TRUE(found);
}

TEST(Checks, ReportsCarryInputDigest) {
  const auto a = check_duality(affine_rep(), opt);
  const auto b = check_duality(affine_rep(), opt);
  EXPECT_EQ(a.inputs_digest, b.inputs_digest);
  EXPECT_NE(a.inputs_digest, check_duality(heisenberg_rep(), opt).inputs_digest);
}

TEST(Checks, TriangularInstances) {
  for (std::uint64_t s = 0; s < 25; ++s) {
    const auto t = oracle::triangular_instance(7000 + s, 3, 4);
    CheckOptions o;
    o.seed = s + 1;
    for (const auto& rep : check_instance(t.rep, nullptr, o)) EXPECT_TRUE(rep.passed) << to_json(rep).dump(1);
  }
}

TEST(Fuzz, SeedFortyTwo) {
  FuzzConfig cfg;
  cfg.max_algebra_dim = 3;
  cfg.max_space_dim = 4;
  const auto reports = fuzz(42, 1, cfg);
  ASSERT_FALSE(reports.empty());
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed) << to_json(r).dump(1);
    EXPECT_EQ(r.case_index, Index{0});
  }
}

TEST(Fuzz, ZeroCountIsEmpty) { EXPECT_TRUE(fuzz(42, 0, FuzzConfig{}).empty()); }

TEST(Fuzz, Deterministic) {
  FuzzConfig cfg;
  cfg.max_algebra_dim = 2;
  cfg.max_space_dim = 3;
  const auto a = fuzz(5, 3, cfg), b = fuzz(5, 3, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(to_json(a[i]).dump(), to_json(b[i]).dump());
}

TEST(Fuzz, NilpotentInstancesAreNilpotent) {
  FuzzConfig cfg;
  cfg.nilpotent = true;
  const Tolerance tol;
  for (Index c = 0; c < 20; ++c) {
    std::mt19937_64 rng(case_seed(3, c));
    const auto r = random_instance(rng, cfg);
    EXPECT_TRUE(is_nilpotent(r.algebra, tol));
    EXPECT_TRUE(validate_rep(r, tol).passed());
    EXPECT_LE(r.algebra.dim(), cfg.max_algebra_dim);
    EXPECT_LE(r.space_dim, cfg.max_space_dim);
  }
}

TEST(Fuzz, InvalidInstanceIsRejectedNotFailed) {
  // so(3) acting on C^3
  const auto so3 = LieAlgebra::from_brackets(3, {{0, 1, vec({0, 0, 1})}, {1, 2, vec({1, 0, 0})}, {0, 2, vec({0, -1, 0})}});
  const auto r = make_representation(so3, {mat({{0, 0, 0}, {0, 0, -1}, {0, 1, 0}}), mat({{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}}),
                                           mat({{0, -1, 0}, {1, 0, 0}, {0, 0, 0}})});
  const auto reports = check_instance(r, nullptr, opt);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].rejected);
  EXPECT_EQ(reports[0].check, "validation");
}
