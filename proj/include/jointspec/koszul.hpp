#pragma once

#include <vector>

#include "rep.hpp"

namespace jointspec {

/// Chevalley-Eilenberg chain complex of an H-module X twisted by a character
/// f of H:  C_p = X (x) Lambda^p H,  with boundaries d_p : C_p -> C_{p-1}.
///
/// Coordinates of C_p are blocks of length d, one per p-subset of the H basis
/// in lexicographic order.
struct KoszulComplex {
  Index h_dim = 0;
  Index space_dim = 0;
  std::vector<Matrix> boundaries;  // boundaries[p - 1] = d_p, p = 1..h_dim
  double scale = 1.0;              // magnitude used for rank decisions

  Index chain_dim(Index p) const;
  /// max over p of |d_p d_{p+1}| / scale^2, Frobenius norm.
  double complex_residual() const;
};

struct HomologyProfile {
  std::vector<Index> dims;  // H_0 .. H_r
  Index top() const { return static_cast<Index>(dims.size()) - 1; }
};

enum class Side { delta, pi };

namespace detail {

inline Index binomial(Index n, Index k) {
  if (k < 0 || k > n) return 0;
  Index b = 1;
  for (Index i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

/// All p-subsets of {0..r-1} as bitmasks, in lexicographic order of the
/// sorted index tuples.
inline std::vector<unsigned> subsets_lex(Index r, Index p) {
  std::vector<unsigned> out;
  std::vector<Index> idx(static_cast<std::size_t>(p));
  for (Index i = 0; i < p; ++i) idx[static_cast<std::size_t>(i)] = i;
  if (p > r) return out;
  while (true) {
    unsigned mask = 0;
    for (Index v : idx) mask |= 1u << v;
    out.push_back(mask);
    Index i = p - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == r - p + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < p; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

inline std::vector<Index> members(unsigned mask) {
  std::vector<Index> out;
  for (Index i = 0; mask; ++i, mask >>= 1)
    if (mask & 1u) out.push_back(i);
  return out;
}

inline int popcount_below(unsigned mask, Index c) {
  int n = 0;
  for (Index i = 0; i < c; ++i)
    if (mask & (1u << i)) ++n;
  return n;
}

}  // namespace detail

inline Index KoszulComplex::chain_dim(Index p) const {
  return space_dim * detail::binomial(h_dim, p);
}

inline double KoszulComplex::complex_residual() const {
  double worst = 0.0;
  for (std::size_t p = 0; p + 1 < boundaries.size(); ++p)
    worst = std::max(worst, (boundaries[p] * boundaries[p + 1]).norm() / (scale * scale));
  return worst;
}

/// Builds the complex for h_rep twisted by f (values on the H basis):
///   d(x (x) h_S) = sum_k (-1)^(k+1) (rho(h_sk) - f(h_sk)) x (x) h_{S - sk}
///                + sum_{k<l} (-1)^(k+l+1) x (x) [h_sk, h_sl] ^ h_{S - sk - sl}
/// with 1-based positions k, l inside the sorted subset S.
inline KoszulComplex build_complex(const Representation& h_rep, const Vector& f,
                                   const Tolerance& tol) {
  check_shape(h_rep);
  const LieAlgebra& h = h_rep.algebra;
  const Index r = h.dim(), d = h_rep.space_dim;
  if (f.size() != r) throw input_error("character length does not match the algebra");
  if (r > 20) throw input_error("Koszul complex: algebra dimension too large");
  require_finite(f, "character");

  const double fscale = std::max(1.0, sup_norm(f));
  for (Index i = 0; i < r; ++i)
    for (Index j = i + 1; j < r; ++j) {
      const Vector br = h.bracket(h.basis_vector(i), h.basis_vector(j));
      if (std::abs(pair(f, br)) > tol.match_eps * fscale * std::max(1.0, br.norm()))
        throw input_error("twisting functional does not vanish on [H, H]");
    }

  KoszulComplex c;
  c.h_dim = r;
  c.space_dim = d;
  std::vector<Matrix> twisted;
  double s = std::max(1.0, h.structure_scale());
  for (Index k = 0; k < r; ++k) {
    twisted.push_back(h_rep.mats[static_cast<std::size_t>(k)] -
                      f(k) * Matrix::Identity(d, d));
    s = std::max(s, spectral_norm(twisted.back()));
  }
  c.scale = s;

  const Matrix id = Matrix::Identity(d, d);
  std::vector<std::vector<unsigned>> subsets;
  std::vector<std::vector<Index>> position(static_cast<std::size_t>(r + 1));
  for (Index p = 0; p <= r; ++p) {
    subsets.push_back(detail::subsets_lex(r, p));
    position[static_cast<std::size_t>(p)].assign(std::size_t{1} << r, -1);
    for (std::size_t a = 0; a < subsets.back().size(); ++a)
      position[static_cast<std::size_t>(p)][subsets.back()[a]] = static_cast<Index>(a);
  }

  for (Index p = 1; p <= r; ++p) {
    Matrix dp = Matrix::Zero(c.chain_dim(p - 1), c.chain_dim(p));
    const auto& lower = position[static_cast<std::size_t>(p - 1)];
    const auto& cols = subsets[static_cast<std::size_t>(p)];
    for (std::size_t cs = 0; cs < cols.size(); ++cs) {
      const unsigned mask = cols[cs];
      const auto mem = detail::members(mask);
      const Index col0 = static_cast<Index>(cs) * d;
      for (std::size_t k = 0; k < mem.size(); ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^(k+1), k 1-based
        const Index row = lower[mask & ~(1u << mem[k])] * d;
        dp.block(row, col0, d, d) += sign * twisted[static_cast<std::size_t>(mem[k])];
      }
      if (p < 2) continue;
      const auto& lower2 = position[static_cast<std::size_t>(p - 1)];
      for (std::size_t k = 0; k < mem.size(); ++k)
        for (std::size_t l = k + 1; l < mem.size(); ++l) {
          // (-1)^(k+l+1) with 1-based k, l equals (-1)^(k+l+1) for 0-based too.
          const double sign = ((k + l + 1) % 2 == 0) ? 1.0 : -1.0;
          const unsigned rest = mask & ~(1u << mem[k]) & ~(1u << mem[l]);
          for (Index cidx = 0; cidx < r; ++cidx) {
            const Scalar coef = h.c(mem[k], mem[l], cidx);
            if (coef == Scalar(0) || (rest & (1u << cidx))) continue;
            const double wedge = (detail::popcount_below(rest, cidx) % 2 == 0) ? 1.0 : -1.0;
            const Index row = lower2[rest | (1u << cidx)] * d;
            dp.block(row, col0, d, d) += (sign * wedge) * coef * id;
          }
        }
    }
    c.boundaries.push_back(std::move(dp));
  }
  return c;
}

/// H_p = dim C_p - rank d_p - rank d_{p+1}.
inline HomologyProfile homology_dims(const KoszulComplex& c, const Tolerance& tol) {
  const Index r = c.h_dim;
  std::vector<Index> ranks(static_cast<std::size_t>(r + 2), 0);
  for (Index p = 1; p <= r; ++p)
    ranks[static_cast<std::size_t>(p)] =
        rank_at_scale(c.boundaries[static_cast<std::size_t>(p - 1)], tol, c.scale);
  HomologyProfile prof;
  for (Index p = 0; p <= r; ++p) {
    const Index hp = c.chain_dim(p) - ranks[static_cast<std::size_t>(p)] -
                     ranks[static_cast<std::size_t>(p + 1)];
    if (hp < 0) throw numerical_failure("homology: inconsistent boundary ranks");
    prof.dims.push_back(hp);
  }
  return prof;
}

inline std::vector<Index> nonexact_degrees(const HomologyProfile& prof) {
  std::vector<Index> out;
  for (std::size_t p = 0; p < prof.dims.size(); ++p)
    if (prof.dims[p] != 0) out.push_back(static_cast<Index>(p));
  return out;
}

/// delta side inspects degrees 0..k, pi side degrees r-k..r.
inline bool slodkowski_membership(const HomologyProfile& prof, Index k, Side side) {
  const Index r = prof.top();
  if (k < 0 || k > r) throw input_error("Slodkowski level out of range");
  const Index lo = side == Side::delta ? 0 : r - k;
  const Index hi = side == Side::delta ? k : r;
  for (Index p = lo; p <= hi; ++p)
    if (prof.dims[static_cast<std::size_t>(p)] != 0) return true;
  return false;
}

inline bool taylor_membership(const HomologyProfile& prof) {
  return !nonexact_degrees(prof).empty();
}

}  // namespace jointspec
