#pragma once

#include <cstdint>
#include <vector>

#include "liealg.hpp"

namespace jointspec {

/// rho : L -> End(C^d), stored as the images rho(e_i) of the basis.
struct Representation {
  LieAlgebra algebra;
  Index space_dim = 0;
  std::vector<Matrix> mats;

  Matrix operator()(const Vector& x) const {
    if (x.size() != algebra.dim()) throw input_error("vector length does not match the algebra");
    Matrix m = Matrix::Zero(space_dim, space_dim);
    for (Index i = 0; i < x.size(); ++i)
      if (x(i) != Scalar(0)) m += x(i) * mats[static_cast<std::size_t>(i)];
    return m;
  }

  double scale() const {
    double s = 0.0;
    for (const auto& m : mats) s = std::max(s, spectral_norm(m));
    return s;
  }
};

inline void check_shape(const Representation& r) {
  if (static_cast<Index>(r.mats.size()) != r.algebra.dim())
    throw input_error("representation needs one matrix per algebra basis vector");
  if (r.space_dim < 1) throw input_error("representation space must be nonzero");
  for (const auto& m : r.mats) {
    if (m.rows() != r.space_dim || m.cols() != r.space_dim)
      throw input_error("representation matrices must be square of size space_dim");
    require_finite(m, "representation matrix");
  }
}

inline Representation make_representation(LieAlgebra alg, std::vector<Matrix> mats) {
  Representation r;
  r.algebra = std::move(alg);
  r.space_dim = mats.empty() ? 0 : mats.front().rows();
  r.mats = std::move(mats);
  check_shape(r);
  return r;
}

struct RepReport {
  double homomorphism_residual = 0.0;
  double threshold = 0.0;
  bool passed() const { return homomorphism_residual <= threshold; }
};

/// Largest |rho([e_i,e_j]) - [rho(e_i), rho(e_j)]| over basis pairs.
inline RepReport validate_rep(const Representation& r, const Tolerance& tol) {
  check_shape(r);
  RepReport out;
  const Index n = r.algebra.dim();
  const double s = std::max(1.0, r.scale());
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Matrix& a = r.mats[static_cast<std::size_t>(i)];
      const Matrix& b = r.mats[static_cast<std::size_t>(j)];
      const Matrix lhs =
          r(r.algebra.bracket(r.algebra.basis_vector(i), r.algebra.basis_vector(j)));
      out.homomorphism_residual =
          std::max(out.homomorphism_residual, (lhs - (a * b - b * a)).cwiseAbs().maxCoeff());
    }
  out.threshold = 10.0 * tol.rank_eps * s * s;
  return out;
}

inline void require_valid(const Representation& r, const Tolerance& tol) {
  require_valid(r.algebra, tol);
  if (!validate_rep(r, tol).passed())
    throw input_error("matrices do not satisfy the homomorphism law");
}

/// rho restricted to a closed subalgebra, over the subalgebra's own basis.
inline Representation restrict(const Representation& r, const SubalgebraBasis& sub,
                               const Tolerance& tol) {
  Representation out;
  out.algebra = induced_algebra(r.algebra, sub, tol);
  out.space_dim = r.space_dim;
  const Matrix& q = sub.basis.basis();
  for (Index j = 0; j < q.cols(); ++j) out.mats.push_back(r(q.col(j)));
  return out;
}

/// rho*(x) = rho(x)^T, a representation of L^op on the dual space.
inline Representation adjoint_rep(const Representation& r) {
  Representation out;
  out.algebra = opposite(r.algebra);
  out.space_dim = r.space_dim;
  for (const auto& m : r.mats) out.mats.push_back(m.transpose());
  return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline constexpr Index kDefaultDimCap = 64;

namespace detail {
inline void check_cap(Index dim, Index cap) {
  if (dim > cap) throw input_error("derived representation exceeds the dimension cap");
}
}  // namespace detail

// Operators on L(X) act on row-major coordinates of T: index i * d + j holds T(i, j).
// In those coordinates vec(A T) = (A kron I) vec(T) and vec(T B) = (I kron B^T) vec(T).

/// L_rho(x)(T) = rho(x) T.
inline Representation left_mult_rep(const Representation& r, Index cap = kDefaultDimCap) {
  detail::check_cap(r.space_dim * r.space_dim, cap);
  const Matrix id = Matrix::Identity(r.space_dim, r.space_dim);
  Representation out;
  out.algebra = r.algebra;
  out.space_dim = r.space_dim * r.space_dim;
  for (const auto& m : r.mats) out.mats.push_back(kron(m, id));
  return out;
}

/// R_rho(x)(T) = T rho(x), a representation of L^op.
inline Representation right_mult_rep(const Representation& r, Index cap = kDefaultDimCap) {
  detail::check_cap(r.space_dim * r.space_dim, cap);
  const Matrix id = Matrix::Identity(r.space_dim, r.space_dim);
  Representation out;
  out.algebra = opposite(r.algebra);
  out.space_dim = r.space_dim * r.space_dim;
  for (const auto& m : r.mats) out.mats.push_back(kron(id, m.transpose()));
  return out;
}

/// (rho1 (x) rho2)(l1, l2) = rho1(l1) (x) I + I (x) rho2(l2) on L1 x L2.
inline Representation tensor_rep(const Representation& r1, const Representation& r2,
                                 Index cap = kDefaultDimCap) {
  detail::check_cap(r1.space_dim * r2.space_dim, cap);
  const Matrix i1 = Matrix::Identity(r1.space_dim, r1.space_dim);
  const Matrix i2 = Matrix::Identity(r2.space_dim, r2.space_dim);
  Representation out;
  out.algebra = direct_sum(r1.algebra, r2.algebra);
  out.space_dim = r1.space_dim * r2.space_dim;
  for (const auto& m : r1.mats) out.mats.push_back(kron(m, i2));
  for (const auto& m : r2.mats) out.mats.push_back(kron(i1, m));
  return out;
}

/// Multiplication representation of L1 x L2^op on L(X2, X1):
/// T -> rho1(l1) T + T rho2(l2).
inline Representation multiplication_rep(const Representation& r1, const Representation& r2,
                                         Index cap = kDefaultDimCap) {
  detail::check_cap(r1.space_dim * r2.space_dim, cap);
  const Matrix i1 = Matrix::Identity(r1.space_dim, r1.space_dim);
  const Matrix i2 = Matrix::Identity(r2.space_dim, r2.space_dim);
  Representation out;
  out.algebra = direct_sum(r1.algebra, opposite(r2.algebra));
  out.space_dim = r1.space_dim * r2.space_dim;
  for (const auto& m : r1.mats) out.mats.push_back(kron(m, i2));
  for (const auto& m : r2.mats) out.mats.push_back(kron(i1, m.transpose()));
  return out;
}

inline void hash_into(Fnv1a& h, const LieAlgebra& alg) {
  h.u64(static_cast<std::uint64_t>(alg.dim()));
  for (Index i = 0; i < alg.dim(); ++i) h.matrix(alg.ad_basis(i));
}

inline std::uint64_t digest(const Representation& r) {
  Fnv1a h;
  hash_into(h, r.algebra);
  h.u64(static_cast<std::uint64_t>(r.space_dim));
  for (const auto& m : r.mats) h.matrix(m);
  return h.value();
}

}  // namespace jointspec
