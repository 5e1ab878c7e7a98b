#pragma once

#include <array>
#include <string>
#include <vector>

#include "numkit.hpp"

namespace jointspec {

/// A finite-dimensional complex Lie algebra given by structure constants in a
/// fixed basis e_0..e_{n-1}:  [e_i, e_j] = sum_k c(i, j, k) e_k.
///
/// Stored as the adjoint matrices ad(e_i), whose column j holds the
/// coordinates of [e_i, e_j].
class LieAlgebra {
 public:
  LieAlgebra() = default;
  explicit LieAlgebra(Index dim) : ad_(static_cast<std::size_t>(dim), Matrix::Zero(dim, dim)) {
    if (dim < 0) throw input_error("negative Lie algebra dimension");
  }

  struct Bracket {
    Index i, j;  // 0-based, i < j
    Vector coeffs;
  };

  /// Sparse construction from the brackets [e_i, e_j] with i < j; the
  /// antisymmetric completion is filled in.
  static LieAlgebra from_brackets(Index dim, const std::vector<Bracket>& brackets) {
    LieAlgebra a(dim);
    for (const auto& b : brackets) {
      if (b.i < 0 || b.j < 0 || b.i >= dim || b.j >= dim)
        throw input_error("bracket index out of range");
      if (b.i >= b.j) throw input_error("brackets must be listed with i < j");
      if (b.coeffs.size() != dim)
        throw input_error("bracket coefficient vector has the wrong length");
      require_finite(b.coeffs, "bracket coefficients");
      for (Index k = 0; k < dim; ++k) {
        a.set(b.i, b.j, k, b.coeffs(k));
        a.set(b.j, b.i, k, -b.coeffs(k));
      }
    }
    return a;
  }

  Index dim() const { return static_cast<Index>(ad_.size()); }

  Scalar c(Index i, Index j, Index k) const { return ad_[idx(i)](k, j); }
  void set(Index i, Index j, Index k, Scalar v) { ad_[idx(i)](k, j) = v; }

  const Matrix& ad_basis(Index i) const { return ad_[idx(i)]; }

  /// Matrix of l -> [x, l].
  Matrix ad(const Vector& x) const {
    check_len(x);
    Matrix m = Matrix::Zero(dim(), dim());
    for (Index i = 0; i < dim(); ++i)
      if (x(i) != Scalar(0)) m += x(i) * ad_[idx(i)];
    return m;
  }

  Vector bracket(const Vector& x, const Vector& y) const {
    check_len(y);
    return ad(x) * y;
  }

  Vector basis_vector(Index i) const { return Vector::Unit(dim(), i); }

  /// Largest |c(i,j,k)|, the natural magnitude for residual thresholds.
  double structure_scale() const {
    double s = 0.0;
    for (const auto& m : ad_) s = std::max(s, m.cwiseAbs().maxCoeff());
    return s;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    if (a.dim() != b.dim()) return false;
    for (Index i = 0; i < a.dim(); ++i)
      if (a.ad_[a.idx(i)] != b.ad_[b.idx(i)]) return false;
    return true;
  }

 private:
  std::size_t idx(Index i) const {
    if (i < 0 || i >= dim()) throw input_error("basis index out of range");
    return static_cast<std::size_t>(i);
  }
  void check_len(const Vector& x) const {
    if (x.size() != dim())
      throw input_error("vector length does not match the algebra dimension");
  }

  std::vector<Matrix> ad_;
};

struct AlgebraReport {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  double threshold = 0.0;
  bool antisymmetric = false;
  bool jacobi = false;
  bool solvable = false;
  bool nilpotent = false;
  bool passed() const { return antisymmetric && jacobi && solvable; }
};

/// Span of all [u, v] with u from the columns of a, v from the columns of b.
inline Subspace bracket_span(const LieAlgebra& alg, const Matrix& a,
                             const Matrix& b, const Tolerance& tol) {
  Matrix cols(alg.dim(), a.cols() * b.cols());
  Index at = 0;
  for (Index i = 0; i < a.cols(); ++i) {
    const Matrix adu = alg.ad(a.col(i));
    for (Index j = 0; j < b.cols(); ++j) cols.col(at++) = adu * b.col(j);
  }
  return column_span(cols, tol, std::max(1.0, alg.structure_scale()));
}

/// L^(0) = L, L^(k+1) = [L^(k), L^(k)], until the dimension stabilises.
inline std::vector<Subspace> derived_series(const LieAlgebra& alg,
                                            const Tolerance& tol) {
  std::vector<Subspace> s{Subspace::full(alg.dim())};
  while (s.back().dim() > 0) {
    Subspace next = bracket_span(alg, s.back().basis(), s.back().basis(), tol);
    const bool stalled = next.dim() == s.back().dim();
    s.push_back(std::move(next));
    if (stalled) break;
  }
  return s;
}

/// L^1 = L, L^(k+1) = [L, L^k], until the dimension stabilises.
inline std::vector<Subspace> lower_central_series(const LieAlgebra& alg,
                                                  const Tolerance& tol) {
  const Matrix id = Matrix::Identity(alg.dim(), alg.dim());
  std::vector<Subspace> s{Subspace::full(alg.dim())};
  while (s.back().dim() > 0) {
    Subspace next = bracket_span(alg, id, s.back().basis(), tol);
    const bool stalled = next.dim() == s.back().dim();
    s.push_back(std::move(next));
    if (stalled) break;
  }
  return s;
}

inline bool is_solvable(const LieAlgebra& alg, const Tolerance& tol) {
  return derived_series(alg, tol).back().dim() == 0;
}

inline bool is_nilpotent(const LieAlgebra& alg, const Tolerance& tol) {
  return lower_central_series(alg, tol).back().dim() == 0;
}

/// L^2 = [L, L].
inline Subspace derived_subalgebra(const LieAlgebra& alg, const Tolerance& tol) {
  const Matrix id = Matrix::Identity(alg.dim(), alg.dim());
  return bracket_span(alg, id, id, tol);
}

inline AlgebraReport validate(const LieAlgebra& alg, const Tolerance& tol) {
  tol.check();
  AlgebraReport rep;
  const Index n = alg.dim();
  const double scale = std::max(1.0, alg.structure_scale());
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        rep.antisymmetry_residual = std::max(
            rep.antisymmetry_residual, std::abs(alg.c(i, j, k) + alg.c(j, i, k)));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      for (Index k = j + 1; k < n; ++k) {
        const Vector ei = alg.basis_vector(i), ej = alg.basis_vector(j),
                     ek = alg.basis_vector(k);
        const Vector cyc = alg.bracket(ei, alg.bracket(ej, ek)) +
                           alg.bracket(ej, alg.bracket(ek, ei)) +
                           alg.bracket(ek, alg.bracket(ei, ej));
        rep.jacobi_residual = std::max(rep.jacobi_residual, sup_norm(cyc));
      }
  rep.threshold = 10.0 * tol.rank_eps * scale;
  rep.antisymmetric = rep.antisymmetry_residual <= rep.threshold;
  rep.jacobi = rep.jacobi_residual <= rep.threshold * scale;
  if (rep.antisymmetric && rep.jacobi) {
    rep.solvable = is_solvable(alg, tol);
    rep.nilpotent = rep.solvable && is_nilpotent(alg, tol);
  }
  return rep;
}

/// Throws input_error unless the algebra is a solvable Lie algebra.
inline void require_valid(const LieAlgebra& alg, const Tolerance& tol) {
  auto r = validate(alg, tol);
  if (!r.antisymmetric) throw input_error("structure constants are not antisymmetric");
  if (!r.jacobi) throw input_error("structure constants violate the Jacobi identity");
  if (!r.solvable) throw input_error("Lie algebra is not solvable");
}

/// Same space, bracket [x, y]^op = -[x, y].
inline LieAlgebra opposite(const LieAlgebra& alg) {
  LieAlgebra out(alg.dim());
  for (Index i = 0; i < alg.dim(); ++i)
    for (Index j = 0; j < alg.dim(); ++j)
      for (Index k = 0; k < alg.dim(); ++k) out.set(i, j, k, -alg.c(i, j, k));
  return out;
}

/// a x b with basis (e_1..e_n of a, then e_1..e_m of b) and zero cross brackets.
inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  const Index n = a.dim(), m = b.dim();
  LieAlgebra out(n + m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k) out.set(i, j, k, a.c(i, j, k));
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k) out.set(n + i, n + j, n + k, b.c(i, j, k));
  return out;
}

inline Matrix ad_matrix(const LieAlgebra& alg, const Vector& h) { return alg.ad(h); }

/// A subalgebra given by a subspace of the parent's coordinates.
struct SubalgebraBasis {
  Subspace basis;
};

inline bool subalgebra_closure_check(const LieAlgebra& alg, const SubalgebraBasis& sub,
                                     const Tolerance& tol) {
  const Matrix& q = sub.basis.basis();
  if (q.rows() != alg.dim()) throw input_error("subalgebra lives in another algebra");
  for (Index i = 0; i < q.cols(); ++i) {
    const Matrix adq = alg.ad(q.col(i));
    for (Index j = i + 1; j < q.cols(); ++j)
      if (!contains(sub.basis, Vector(adq * q.col(j)), tol)) return false;
  }
  return true;
}

/// Subalgebra spanned by the given vectors (which must already be closed).
inline SubalgebraBasis make_subalgebra(const LieAlgebra& alg, const Matrix& spanning,
                                       const Tolerance& tol) {
  SubalgebraBasis s{column_span(spanning, tol, 1.0)};
  if (!subalgebra_closure_check(alg, s, tol))
    throw input_error("subspace is not closed under the bracket");
  return s;
}

/// Structure constants of a closed subalgebra in its own (orthonormal) basis.
inline LieAlgebra induced_algebra(const LieAlgebra& alg, const SubalgebraBasis& sub,
                                  const Tolerance& tol) {
  if (!subalgebra_closure_check(alg, sub, tol))
    throw input_error("subspace is not closed under the bracket");
  const Matrix& q = sub.basis.basis();
  const Index r = q.cols();
  LieAlgebra out(r);
  for (Index i = 0; i < r; ++i) {
    const Matrix adq = alg.ad(q.col(i));
    for (Index j = 0; j < r; ++j) {
      const Vector coeff = q.adjoint() * (adq * q.col(j));
      for (Index k = 0; k < r; ++k) out.set(i, j, k, coeff(k));
    }
  }
  // Exact antisymmetry; the projection above leaves rounding noise.
  for (Index i = 0; i < r; ++i)
    for (Index j = i; j < r; ++j)
      for (Index k = 0; k < r; ++k) {
        const Scalar v = 0.5 * (out.c(i, j, k) - out.c(j, i, k));
        out.set(i, j, k, v);
        out.set(j, i, k, -v);
      }
  return out;
}

}  // namespace jointspec
