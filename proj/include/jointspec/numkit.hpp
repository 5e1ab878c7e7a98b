#pragma once

// Tolerance-controlled dense complex linear algebra.
//
// Every rank decision in the library goes through a singular-value threshold
// of the form  sigma > rank_eps * max(sigma_max, scale),  where `scale` is an
// optional context magnitude supplied by the caller. With scale == 0 the test
// is purely relative to the largest singular value of the matrix at hand.

#include <algorithm>
#include <complex>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace jointspec {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Malformed or inconsistent input (bad dimensions, failed validation, ...).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation could not reach a trustworthy answer at the given tolerance.
class numerical_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerance {
  double rank_eps = 1e-9;   // relative singular-value threshold
  double match_eps = 1e-7;  // absolute distance for identifying values

  void check() const {
    if (!(rank_eps > 0.0) || !(match_eps > 0.0) || !std::isfinite(rank_eps) ||
        !std::isfinite(match_eps))
      throw input_error("tolerances must be positive and finite");
  }
};

inline bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

inline void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m))
    throw input_error(std::string(what) + ": non-finite entry");
}

/// Linear (not sesquilinear) pairing sum_i a_i b_i, the evaluation of a
/// functional stored by coordinates on a vector.
inline Scalar pair(const Vector& a, const Vector& b) {
  return (a.transpose() * b)(0, 0);
}

inline double sup_norm(const Vector& v) {
  double m = 0.0;
  for (Index i = 0; i < v.size(); ++i) m = std::max(m, std::abs(v(i)));
  return m;
}

/// Lexicographic (re, im) order on coordinate vectors of equal length.
inline bool lex_less(const Vector& a, const Vector& b) {
  for (Index i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return a.size() < b.size();
}

namespace detail {

struct SvdParts {
  Eigen::VectorXd sigma;
  Matrix u;
  Matrix v;
};

inline SvdParts svd(const Matrix& m, bool want_u, bool want_v) {
  SvdParts out;
  if (m.rows() == 0 || m.cols() == 0) {
    out.sigma.resize(0);
    if (want_u) out.u = Matrix::Identity(m.rows(), m.rows());
    if (want_v) out.v = Matrix::Identity(m.cols(), m.cols());
    return out;
  }
  unsigned opts = 0;
  if (want_u) opts |= Eigen::ComputeThinU;
  if (want_v) opts |= Eigen::ComputeFullV;
  // BDCSVD returns wrong singular vectors on some matrices with many exactly
  // repeated singular values (Kronecker structure); Jacobi is exact there.
  Eigen::JacobiSVD<Matrix> s(m, opts);
  out.sigma = s.singularValues();
  if (want_u) out.u = s.matrixU();
  if (want_v) out.v = s.matrixV();
  return out;
}

inline Index count_above(const Eigen::VectorXd& sigma, double rank_eps,
                         double scale) {
  if (sigma.size() == 0) return 0;
  const double ref = std::max(sigma(0), scale);
  if (ref == 0.0) return 0;
  const double thr = rank_eps * ref;
  Index r = 0;
  for (Index i = 0; i < sigma.size(); ++i)
    if (sigma(i) > thr) ++r;
  return r;
}

}  // namespace detail

/// Number of singular values above rank_eps * max(largest singular value, scale).
inline Index rank_at_scale(const Matrix& m, const Tolerance& tol, double scale) {
  require_finite(m, "rank");
  return detail::count_above(detail::svd(m, false, false).sigma, tol.rank_eps,
                             scale);
}

inline Index rank_with_tol(const Matrix& m, const Tolerance& tol) {
  return rank_at_scale(m, tol, 0.0);
}

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  auto s = detail::svd(m, false, false).sigma;
  return s.size() ? s(0) : 0.0;
}

/// A linear subspace of C^n, stored by an orthonormal basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient) : basis_(ambient, 0) {}

  /// Takes ownership of an orthonormal basis. Use column_span() for arbitrary
  /// spanning sets.
  static Subspace from_orthonormal(Matrix q) {
    Subspace s;
    s.basis_ = std::move(q);
    return s;
  }

  static Subspace full(Index n) {
    return from_orthonormal(Matrix::Identity(n, n));
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }

  /// Orthogonal projector onto the subspace.
  Matrix projector() const { return basis_ * basis_.adjoint(); }

 private:
  Matrix basis_;
};

/// Column space of m, with rank decided at rank_eps * max(sigma_max, scale).
inline Subspace column_span(const Matrix& m, const Tolerance& tol,
                            double scale = 0.0) {
  require_finite(m, "column_span");
  if (m.cols() == 0) return Subspace(m.rows());
  auto parts = detail::svd(m, true, false);
  const Index r = detail::count_above(parts.sigma, tol.rank_eps, scale);
  return Subspace::from_orthonormal(parts.u.leftCols(r));
}

inline Subspace kernel_at_scale(const Matrix& m, const Tolerance& tol,
                                double scale) {
  require_finite(m, "kernel");
  if (m.rows() == 0) return Subspace::full(m.cols());
  auto parts = detail::svd(m, false, true);
  const Index r = detail::count_above(parts.sigma, tol.rank_eps, scale);
  return Subspace::from_orthonormal(parts.v.rightCols(m.cols() - r));
}

inline Subspace kernel_basis(const Matrix& m, const Tolerance& tol) {
  return kernel_at_scale(m, tol, 0.0);
}

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw input_error("subspaces live in different ambient spaces");
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b,
                             const Tolerance& tol) {
  require_same_ambient(a, b);
  Matrix cat(a.ambient_dim(), a.dim() + b.dim());
  cat << a.basis(), b.basis();
  return column_span(cat, tol, 1.0);
}

inline Subspace subspace_intersection(const Subspace& a, const Subspace& b,
                                      const Tolerance& tol) {
  require_same_ambient(a, b);
  if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_dim());
  Matrix cat(a.ambient_dim(), a.dim() + b.dim());
  cat << a.basis(), -b.basis();
  Subspace coeffs = kernel_at_scale(cat, tol, 1.0);
  Matrix vecs = a.basis() * coeffs.basis().topRows(a.dim());
  return column_span(vecs, tol, 1.0);
}

/// Least-squares residual of v against the subspace, at match_eps.
inline bool contains(const Subspace& a, const Vector& v, const Tolerance& tol) {
  if (v.size() != a.ambient_dim())
    throw input_error("contains: vector length does not match ambient space");
  const Vector r = v - a.basis() * (a.basis().adjoint() * v);
  return r.norm() <= tol.match_eps * std::max(1.0, v.norm());
}

inline bool contains(const Subspace& a, const Subspace& b, const Tolerance& tol) {
  require_same_ambient(a, b);
  for (Index j = 0; j < b.dim(); ++j)
    if (!contains(a, Vector(b.basis().col(j)), tol)) return false;
  return true;
}

inline bool same_subspace(const Subspace& a, const Subspace& b,
                          const Tolerance& tol) {
  return a.dim() == b.dim() && contains(a, b, tol) && contains(b, a, tol);
}

/// Generalized kernel of (m - mu I): the union of ker (m - mu I)^j, grown one
/// Jordan layer at a time so that no matrix power is ever formed.
inline Subspace generalized_kernel(const Matrix& m, Scalar mu,
                                   const Tolerance& tol, double context = 0.0,
                                   double floor = 0.0) {
  const Index n = m.rows();
  const Matrix a = m - mu * Matrix::Identity(n, n);
  const double scale =
      std::max({context, spectral_norm(m), std::abs(mu), floor / tol.rank_eps});
  if (scale == 0.0) return Subspace::full(n);
  Subspace k = kernel_at_scale(a, tol, scale);
  for (Index it = 0; it < n && k.dim() > 0 && k.dim() < n; ++it) {
    const Matrix proj_out = Matrix::Identity(n, n) - k.projector();
    Subspace next = kernel_at_scale(proj_out * a, tol, scale);
    if (next.dim() <= k.dim()) break;
    k = std::move(next);
  }
  return k;
}

struct EigenSpace {
  Scalar value;
  Subspace space;
};

struct EigenDecomposition {
  std::vector<EigenSpace> spaces;
  /// Set when no clustering radius produced spaces matching the algebraic
  /// multiplicities; the spaces are then a best effort and may not sum to n.
  bool ambiguous = false;
};

namespace detail {

inline std::vector<std::vector<Scalar>> single_linkage(
    const std::vector<Scalar>& sorted, double radius) {
  const std::size_t n = sorted.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(sorted[i] - sorted[j]) <= radius) parent[find(j)] = find(i);
  std::vector<std::vector<Scalar>> groups;
  std::vector<long> slot(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<long>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[r])].push_back(sorted[i]);
  }
  return groups;
}

}  // namespace detail

/// Generalized eigenspaces of a square matrix.
///
/// Eigenvalue approximations are grouped by single-linkage clustering, first
/// at match_eps. A cluster is accepted when the generalized kernel at its mean,
/// taken with a rank threshold of at least ten times the radius, has exactly
/// the cluster's size. Defective eigenvalues scatter their
/// approximations by roughly (eps * |m|)^(1/size), so on rejection the radius
/// is widened tenfold and the pass repeated. Reported values are the traces of
/// the restricted operators divided by the space dimension.
inline EigenDecomposition generalized_eigenspaces(const Matrix& m,
                                                  const Tolerance& tol,
                                                  double context = 1.0) {
  if (m.rows() != m.cols())
    throw input_error("generalized_eigenspaces: matrix must be square");
  require_finite(m, "generalized_eigenspaces");
  EigenDecomposition out;
  const Index n = m.rows();
  if (n == 0) return out;

  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success)
    throw numerical_failure("eigenvalue iteration did not converge");
  std::vector<Scalar> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](Scalar a, Scalar b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  const double scale = std::max(context, spectral_norm(m));
  const double max_radius = 0.5 * scale;
  std::vector<EigenSpace> best;
  for (double radius = tol.match_eps; radius <= max_radius * 10.0;
       radius *= 10.0) {
    const double r = std::min(radius, max_radius);
    auto groups = detail::single_linkage(ev, r);
    std::vector<EigenSpace> spaces;
    bool ok = true;
    for (const auto& g : groups) {
      Scalar mean = 0.0;
      for (auto v : g) mean += v;
      mean /= static_cast<double>(g.size());
      Subspace s = generalized_kernel(m, mean, tol, scale, 10.0 * r);
      if (s.dim() != static_cast<Index>(g.size())) ok = false;
      spaces.push_back({mean, std::move(s)});
    }
    if (ok && spaces.size() > 1) {
      Matrix cat(n, n);
      Index at = 0;
      for (const auto& e : spaces) {
        cat.middleCols(at, e.space.dim()) = e.space.basis();
        at += e.space.dim();
      }
      ok = rank_at_scale(cat, tol, 1.0) == n;
    }
    if (ok) {
      for (auto& e : spaces) {
        const Matrix& q = e.space.basis();
        e.value = (q.adjoint() * m * q).trace() / static_cast<double>(q.cols());
      }
      std::sort(spaces.begin(), spaces.end(),
                [](const EigenSpace& a, const EigenSpace& b) {
                  return a.value.real() != b.value.real()
                             ? a.value.real() < b.value.real()
                             : a.value.imag() < b.value.imag();
                });
      out.spaces = std::move(spaces);
      return out;
    }
    if (best.empty()) best = std::move(spaces);
    if (r >= max_radius) break;
  }
  out.spaces = std::move(best);
  out.ambiguous = true;
  return out;
}

struct JointSpace {
  std::vector<Scalar> values;  // one eigenvalue per operator
  Subspace space;
};

/// Simultaneous generalized-eigenspace refinement of a family of operators
/// that preserve each other's generalized eigenspaces (the situation for a
/// representation of a nilpotent Lie algebra). Operators are processed in
/// index order; each current space is split by the operator restricted to it.
inline std::vector<JointSpace> joint_generalized_eigenspaces(
    const std::vector<Matrix>& ops, Index n, const Tolerance& tol) {
  std::vector<JointSpace> current;
  current.push_back({{}, Subspace::full(n)});
  for (const auto& op : ops) {
    if (op.rows() != n || op.cols() != n)
      throw input_error("joint refinement: operator has the wrong shape");
    const double scale = std::max(1.0, spectral_norm(op));
    std::vector<JointSpace> next;
    for (const auto& js : current) {
      const Matrix& q = js.space.basis();
      const Matrix restricted = q.adjoint() * op * q;
      if ((op * q - q * restricted).norm() > std::sqrt(tol.rank_eps) * scale)
        throw numerical_failure(
            "joint refinement: operator does not preserve a joint space");
      auto dec = generalized_eigenspaces(restricted, tol, scale);
      Index total = 0;
      for (const auto& e : dec.spaces) total += e.space.dim();
      if (dec.ambiguous || total != q.cols())
        throw numerical_failure(
            "joint refinement: generalized eigenspaces do not fill the space");
      for (auto& e : dec.spaces) {
        JointSpace child;
        child.values = js.values;
        child.values.push_back(e.value);
        child.space = Subspace::from_orthonormal(q * e.space.basis());
        next.push_back(std::move(child));
      }
    }
    current = std::move(next);
  }
  return current;
}

/// Reduced row-echelon basis of a subspace (rows of the result span it). Used
/// for human-readable output; internal code keeps orthonormal bases.
inline Matrix echelon_rows(const Subspace& s, const Tolerance& tol) {
  Matrix a = s.basis().transpose();  // dim x n
  const Index rows = a.rows(), cols = a.cols();
  Index lead = 0;
  for (Index c = 0; c < cols && lead < rows; ++c) {
    Index piv = lead;
    for (Index r = lead + 1; r < rows; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (std::abs(a(piv, c)) <= tol.rank_eps) continue;
    a.row(piv).swap(a.row(lead));
    a.row(lead) /= a(lead, c);
    for (Index r = 0; r < rows; ++r)
      if (r != lead) a.row(r) -= a(r, c) * a.row(lead);
    ++lead;
  }
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      double re = a(i, j).real(), im = a(i, j).imag();
      if (std::abs(re) < 1e-13) re = 0.0;
      if (std::abs(im) < 1e-13) im = 0.0;
      a(i, j) = Scalar(re, im);
    }
  return a;
}

/// 64-bit FNV-1a, used for content digests of inputs.
class Fnv1a {
 public:
  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) { bytes(&v, sizeof v); }
  void real(double d) {
    if (d == 0.0) d = 0.0;  // fold -0
    bytes(&d, sizeof d);
  }
  void matrix(const Matrix& m) {
    u64(static_cast<std::uint64_t>(m.rows()));
    u64(static_cast<std::uint64_t>(m.cols()));
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) {
        real(m(i, j).real());
        real(m(i, j).imag());
      }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace jointspec
