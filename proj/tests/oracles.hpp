#pragma once

// Exact and brute-force references used by the tests. Nothing here calls into
// the library's numerical routines.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "jointspec/jointspec.hpp"

namespace oracle {

using jointspec::Index;
using jointspec::Matrix;
using jointspec::Vector;

struct Frac {
  long long p = 0, q = 1;
  Frac() = default;
  Frac(long long n) : p(n) {}
  Frac(long long n, long long d) : p(n), q(d) { norm(); }
  void norm() {
    if (q < 0) p = -p, q = -q;
    const long long g = std::gcd(p < 0 ? -p : p, q);
    if (g > 1) p /= g, q /= g;
  }
  bool zero() const { return p == 0; }
  friend Frac operator-(Frac a, Frac b) { return {a.p * b.q - b.p * a.q, a.q * b.q}; }
  friend Frac operator*(Frac a, Frac b) { return {a.p * b.p, a.q * b.q}; }
  friend Frac operator/(Frac a, Frac b) { return {a.p * b.q, a.q * b.p}; }
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

using FracMatrix = std::vector<std::vector<Frac>>;

inline FracMatrix exact(const Matrix& m) {
  FracMatrix out(static_cast<std::size_t>(m.rows()), std::vector<Frac>(static_cast<std::size_t>(m.cols())));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out[i][j] = Frac(static_cast<long long>(std::llround(m(i, j).real())));
  return out;
}

/// Reduced row echelon form by fraction arithmetic; returns pivot columns.
inline std::vector<std::size_t> rref(FracMatrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t piv = lead;
    while (piv < rows && a[piv][c].zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[lead]);
    const Frac inv = a[lead][c];
    for (auto& x : a[lead]) x = x / inv;
    for (std::size_t r = 0; r < rows; ++r)
      if (r != lead && !a[r][c].zero()) {
        const Frac f = a[r][c];
        for (std::size_t k = 0; k < cols; ++k) a[r][k] = a[r][k] - f * a[lead][k];
      }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

inline Index rank(const Matrix& m) {
  auto a = exact(m);
  return static_cast<Index>(rref(a).size());
}

/// Nullspace basis (columns) of an integer matrix.
inline Matrix nullspace(const Matrix& m) {
  auto a = exact(m);
  const auto piv = rref(a);
  const std::size_t cols = static_cast<std::size_t>(m.cols());
  std::vector<std::size_t> free;
  for (std::size_t c = 0, p = 0; c < cols; ++c) {
    if (p < piv.size() && piv[p] == c) {
      ++p;
      continue;
    }
    free.push_back(c);
  }
  Matrix out = Matrix::Zero(m.cols(), static_cast<Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    out(static_cast<Index>(free[f]), static_cast<Index>(f)) = 1.0;
    for (std::size_t p = 0; p < piv.size(); ++p)
      out(static_cast<Index>(piv[p]), static_cast<Index>(f)) = -a[p][free[f]].value();
  }
  return out;
}

/// Cyclic Jacobi sums expanded term by term from the structure constants.
inline double jacobi_defect(const jointspec::LieAlgebra& alg) {
  const Index n = alg.dim();
  double worst = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index k = 0; k < n; ++k)
        for (Index m = 0; m < n; ++m) {
          std::complex<double> s = 0.0;
          for (Index l = 0; l < n; ++l)
            s += alg.c(j, k, l) * alg.c(i, l, m) + alg.c(k, i, l) * alg.c(j, l, m) +
                 alg.c(i, j, l) * alg.c(k, l, m);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

/// Dimensions of the derived series, from exact ranks of bracket spans.
inline std::vector<Index> derived_dims(const jointspec::LieAlgebra& alg) {
  const Index n = alg.dim();
  Matrix span = Matrix::Identity(n, n);
  std::vector<Index> dims{n};
  while (dims.back() > 0) {
    Matrix br(n, span.cols() * span.cols());
    Index c = 0;
    for (Index a = 0; a < span.cols(); ++a)
      for (Index b = 0; b < span.cols(); ++b) br.col(c++) = alg.bracket(span.col(a), span.col(b));
    const Index r = rank(br);
    if (r == dims.back()) break;
    dims.push_back(r);
    // echelon basis of the new span
    auto e = exact(br.transpose());
    rref(e);
    span = Matrix::Zero(n, r);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < n; ++j) span(j, i) = e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value();
  }
  return dims;
}

/// A triangular instance: basis matrices of a solvable matrix Lie algebra
/// (upper triangular, integer) restricted to a diagonal block, conjugated by
/// an integer unimodular matrix. The spectrum is the set of diagonal tuples.
struct TriangularInstance {
  jointspec::Representation rep;
  std::vector<Vector> diagonal_tuples;
};

inline TriangularInstance triangular_instance(std::uint64_t seed, Index max_alg, Index max_space) {
  std::mt19937_64 rng(seed);
  for (;;) {
    const Index d = std::uniform_int_distribution<Index>(1, max_space)(rng);
    const Index big = d + std::uniform_int_distribution<Index>(0, 1)(rng);
    const Index g = std::uniform_int_distribution<Index>(1, max_alg)(rng);
    std::vector<Matrix> gens;
    for (Index i = 0; i < g; ++i)
      gens.push_back(jointspec::detail::random_triangular(rng, big, false, 0.35));
    auto basis = jointspec::detail::lie_closure(gens, max_alg);
    if (basis.empty()) continue;
    auto alg = jointspec::detail::algebra_of_matrices(basis);
    const bool top = std::bernoulli_distribution(0.5)(rng);
    const Index off = top ? 0 : big - d;
    auto [p, pinv] = jointspec::detail::unimodular(rng, d, 4);
    TriangularInstance t;
    std::vector<Matrix> mats;
    for (const auto& b : basis) mats.push_back(p * b.block(off, off, d, d) * pinv);
    t.rep = jointspec::make_representation(alg, mats);
    for (Index k = 0; k < d; ++k) {
      Vector v(static_cast<Index>(basis.size()));
      for (std::size_t i = 0; i < basis.size(); ++i) v(static_cast<Index>(i)) = basis[i](off + k, off + k);
      bool seen = false;
      for (const auto& w : t.diagonal_tuples) seen = seen || (w - v).norm() == 0.0;
      if (!seen) t.diagonal_tuples.push_back(v);
    }
    return t;
  }
}

inline Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  const Index r = static_cast<Index>(rows.size()), c = static_cast<Index>(rows.begin()->size());
  Matrix m(r, c);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace oracle
