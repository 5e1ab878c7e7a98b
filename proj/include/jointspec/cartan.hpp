#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "liealg.hpp"

namespace jointspec {

struct Root {
  Vector alpha;    // values alpha(h_j) on the orthonormal basis h_j of H
  Subspace space;  // L^alpha
};

/// L = H + H_*, where H_* collects the root spaces of the nonzero roots.
struct CartanDecomposition {
  LieAlgebra algebra;
  SubalgebraBasis h;
  std::vector<Root> roots;  // the zero root comes first
  Subspace h_star;
  /// n x r matrix taking values on the H basis to the coordinates (f(e_i))
  /// of the functional that extends them by zero on H_*.
  Matrix lift;

  Index h_dim() const { return h.basis.dim(); }

  Vector lift_functional(const Vector& values_on_h) const { return lift * values_on_h; }

  /// Values of a functional (by coordinates) on the H basis.
  Vector restrict_functional(const Vector& coords) const {
    return h.basis.basis().transpose() * coords;
  }
};

namespace detail {

inline std::vector<Matrix> ad_of_basis(const LieAlgebra& alg, const Subspace& h) {
  std::vector<Matrix> ops;
  for (Index j = 0; j < h.dim(); ++j) ops.push_back(alg.ad(h.basis().col(j)));
  return ops;
}

/// Intersection over the H basis of the generalized kernels of ad(h_j).
inline Subspace zero_root_space(const LieAlgebra& alg, const Subspace& h,
                                const Tolerance& tol) {
  Subspace acc = Subspace::full(alg.dim());
  const double ctx = std::max(1.0, alg.structure_scale());
  for (const auto& op : ad_of_basis(alg, h)) {
    acc = subspace_intersection(acc, generalized_kernel(op, 0.0, tol, ctx), tol);
    if (acc.dim() == 0) break;
  }
  return acc;
}

}  // namespace detail

/// H is a Cartan subalgebra iff it is nilpotent and equals L^0, the joint
/// generalized null space of ad(H).
inline bool is_cartan(const LieAlgebra& alg, const SubalgebraBasis& h,
                      const Tolerance& tol) {
  if (!subalgebra_closure_check(alg, h, tol)) return false;
  if (h.basis.dim() == 0) return alg.dim() == 0;
  if (!is_nilpotent(induced_algebra(alg, h, tol), tol)) return false;
  const Subspace l0 = detail::zero_root_space(alg, h.basis, tol);
  return same_subspace(l0, h.basis, tol);
}

/// Fitting null component of ad(x) for seeded random integer x in [-5, 5]^n,
/// accepted as soon as it passes is_cartan; at most 20 draws.
inline SubalgebraBasis find_cartan_subalgebra(const LieAlgebra& alg, std::uint64_t seed,
                                              const Tolerance& tol) {
  const Index n = alg.dim();
  if (n == 0) return {Subspace(0)};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-5, 5);
  for (int attempt = 0; attempt < 20; ++attempt) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x(i) = static_cast<double>(coord(rng));
    if (x.isZero()) continue;
    SubalgebraBasis cand{generalized_kernel(alg.ad(x), 0.0, tol, std::max(1.0, alg.structure_scale()))};
    if (is_cartan(alg, cand, tol)) return cand;
  }
  throw numerical_failure("Cartan subalgebra search exhausted its retry budget");
}

/// Root-space decomposition with respect to a Cartan subalgebra.
inline CartanDecomposition root_decomposition(const LieAlgebra& alg, const SubalgebraBasis& h,
                                              const Tolerance& tol) {
  if (!is_cartan(alg, h, tol)) throw input_error("subalgebra is not a Cartan subalgebra");
  const Index n = alg.dim();
  const Index r = h.basis.dim();
  auto joint = joint_generalized_eigenspaces(detail::ad_of_basis(alg, h.basis), n, tol);

  CartanDecomposition cd;
  cd.algebra = alg;
  cd.h = h;
  Index total = 0;
  Matrix star(n, 0);
  bool have_zero = false;
  for (auto& js : joint) {
    Root root;
    root.alpha = Vector(r);
    for (Index j = 0; j < r; ++j) root.alpha(j) = js.values[static_cast<std::size_t>(j)];
    root.space = js.space;
    total += root.space.dim();
    if (sup_norm(root.alpha) <= tol.match_eps) {
      if (have_zero || root.space.dim() != r)
        throw numerical_failure("root decomposition: zero root space differs from H");
      have_zero = true;
      cd.roots.insert(cd.roots.begin(), std::move(root));
    } else {
      Matrix grown(n, star.cols() + root.space.dim());
      grown << star, root.space.basis();
      star = std::move(grown);
      cd.roots.push_back(std::move(root));
    }
  }
  if (total != n || !have_zero)
    throw numerical_failure("root decomposition: root spaces do not sum to the algebra");
  cd.h_star = column_span(star, tol, 1.0);
  if (cd.h_star.dim() + r != n)
    throw numerical_failure("root decomposition: H and H_* are not complementary");

  Matrix c(n, n);
  c << h.basis.basis(), cd.h_star.basis();
  Eigen::FullPivLU<Matrix> lu(c.transpose());
  if (lu.rank() != n) throw numerical_failure("root decomposition: singular change of basis");
  Matrix rhs = Matrix::Zero(n, r);
  rhs.topRows(r) = Matrix::Identity(r, r);
  cd.lift = lu.solve(rhs);
  return cd;
}

/// The same decomposition seen from L^op: identical subspaces, negated roots.
inline CartanDecomposition opposite_decomposition(const CartanDecomposition& cd) {
  CartanDecomposition op = cd;
  op.algebra = opposite(cd.algebra);
  for (auto& root : op.roots) root.alpha = -root.alpha;
  return op;
}

inline CartanDecomposition cartan_decomposition(const LieAlgebra& alg, std::uint64_t seed,
                                                const Tolerance& tol) {
  return root_decomposition(alg, find_cartan_subalgebra(alg, seed, tol), tol);
}

}  // namespace jointspec
