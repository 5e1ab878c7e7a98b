#pragma once

// Random solvable instances with exact integer ground truth.
//
// An algebra is drawn as the Lie closure of a few random upper-triangular
// integer matrices, so it is solvable and the inclusion is a representation.
// A diagonal block of the closure gives a possibly non-faithful
// representation. The algebra basis is then changed by a random unimodular
// integer matrix and the space conjugated by another one.

#include <cstdint>
#include <random>
#include <vector>

#include "verify.hpp"

namespace jointspec {

struct FuzzConfig {
  Index max_algebra_dim = 3;
  Index max_space_dim = 5;
  bool nilpotent = false;  // draw from scalars + strictly upper triangular
  int max_attempts = 400;
};

namespace detail {

inline Vector vec_of(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

/// Basis of the Lie algebra generated by `gens`, or empty when it exceeds `cap`.
inline std::vector<Matrix> lie_closure(const std::vector<Matrix>& gens, Index cap) {
  const Tolerance tol;
  std::vector<Matrix> basis;
  auto try_add = [&](const Matrix& m) {
    Matrix cols(m.size(), static_cast<Index>(basis.size()) + 1);
    for (std::size_t i = 0; i < basis.size(); ++i) cols.col(static_cast<Index>(i)) = vec_of(basis[i]);
    cols.col(cols.cols() - 1) = vec_of(m);
    if (rank_at_scale(cols, tol, 1.0) == cols.cols()) {
      basis.push_back(m);
      return true;
    }
    return false;
  };
  for (const auto& g : gens) try_add(g);
  if (static_cast<Index>(basis.size()) > cap) return {};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      try_add(basis[i] * basis[j] - basis[j] * basis[i]);
      if (static_cast<Index>(basis.size()) > cap) return {};
    }
  }
  return basis;
}

/// Structure constants of the span of linearly independent matrices.
inline LieAlgebra algebra_of_matrices(const std::vector<Matrix>& mats) {
  const Index n = static_cast<Index>(mats.size());
  LieAlgebra alg(n);
  if (n == 0) return alg;
  Matrix cols(mats.front().size(), n);
  for (Index i = 0; i < n; ++i) cols.col(i) = vec_of(mats[static_cast<std::size_t>(i)]);
  Eigen::ColPivHouseholderQR<Matrix> qr(cols);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Matrix& a = mats[static_cast<std::size_t>(i)];
      const Matrix& b = mats[static_cast<std::size_t>(j)];
      const Vector c = qr.solve(vec_of(a * b - b * a));
      for (Index k = 0; k < n; ++k) {
        const Scalar v(std::abs(c(k).real()) < 1e-12 ? 0.0 : c(k).real(),
                       std::abs(c(k).imag()) < 1e-12 ? 0.0 : c(k).imag());
        alg.set(i, j, k, v);
        alg.set(j, i, k, -v);
      }
    }
  return alg;
}

/// Random unimodular integer matrix and its inverse, as products of a few
/// elementary shears and sign flips.
inline std::pair<Matrix, Matrix> unimodular(std::mt19937_64& rng, Index n, int steps) {
  Matrix p = Matrix::Identity(n, n), pinv = Matrix::Identity(n, n);
  if (n == 0) return {p, pinv};
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::uniform_int_distribution<int> mult(-2, 2);
  std::uniform_int_distribution<int> coin(0, 3);
  for (int s = 0; s < steps; ++s) {
    const Index i = pick(rng), j = pick(rng);
    if (i == j || n == 1) {
      if (coin(rng) == 0) {
        p.col(i) *= -1.0;
        pinv.row(i) *= -1.0;
      }
      continue;
    }
    const int m = mult(rng);
    if (m == 0) continue;
    // p <- p (I + m E_ij), pinv <- (I - m E_ij) pinv
    p.col(j) += static_cast<double>(m) * p.col(i);
    pinv.row(i) -= static_cast<double>(m) * pinv.row(j);
  }
  return {p, pinv};
}

inline Matrix random_triangular(std::mt19937_64& rng, Index size, bool nilpotent, double density) {
  std::uniform_int_distribution<int> diag(-2, 2);
  std::uniform_int_distribution<int> off(1, 2);
  std::bernoulli_distribution fill(density), neg(0.5);
  Matrix m = Matrix::Zero(size, size);
  const int scalar = diag(rng);
  for (Index i = 0; i < size; ++i) {
    m(i, i) = static_cast<double>(nilpotent ? scalar : diag(rng));
    for (Index j = i + 1; j < size; ++j)
      if (fill(rng)) m(i, j) = static_cast<double>(neg(rng) ? -off(rng) : off(rng));
  }
  return m;
}

}  // namespace detail

inline Representation random_instance(std::mt19937_64& rng, const FuzzConfig& cfg) {
  std::uniform_int_distribution<Index> space(1, cfg.max_space_dim);
  std::uniform_int_distribution<Index> extra(0, 2);
  std::uniform_int_distribution<Index> ngens(1, std::max<Index>(1, cfg.max_algebra_dim));
  std::uniform_int_distribution<int> density_pick(0, 2);
  std::bernoulli_distribution top_block(0.5);
  const double densities[] = {0.15, 0.3, 0.45};
  for (int attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    const Index d = space(rng);
    const Index big = d + extra(rng);
    const Index g = ngens(rng);
    const double density = densities[density_pick(rng)];
    std::vector<Matrix> gens;
    for (Index i = 0; i < g; ++i) gens.push_back(detail::random_triangular(rng, big, cfg.nilpotent, density));
    auto basis = detail::lie_closure(gens, cfg.max_algebra_dim);
    if (basis.empty()) continue;
    const Index n = static_cast<Index>(basis.size());

    auto [q, qinv] = detail::unimodular(rng, n, 3);
    std::vector<Matrix> rebased;
    for (Index i = 0; i < n; ++i) {
      Matrix m = Matrix::Zero(big, big);
      for (Index j = 0; j < n; ++j) m += q(j, i) * basis[static_cast<std::size_t>(j)];
      rebased.push_back(std::move(m));
    }
    LieAlgebra alg = detail::algebra_of_matrices(rebased);

    const Index off = top_block(rng) ? 0 : big - d;
    auto [p, pinv] = detail::unimodular(rng, d, 3);
    std::vector<Matrix> mats;
    for (const auto& m : rebased) mats.push_back(p * m.block(off, off, d, d) * pinv);
    return make_representation(std::move(alg), std::move(mats));
  }
  throw numerical_failure("instance generation exhausted its attempts");
}

/// Per-case seed, so every case can be regenerated on its own.
inline std::uint64_t case_seed(std::uint64_t seed, Index index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

template <class F>
CheckReport guarded(const char* name, const Representation& r, const CheckOptions& opt, F&& f) {
  try {
    return f();
  } catch (const input_error& e) {
    CheckReport rep = start(name, {&r}, opt);
    rep.rejected = true;
    rep.passed = false;
    rep.note = std::string("input rejected: ") + e.what();
    return rep;
  } catch (const numerical_failure& e) {
    CheckReport rep = start(name, {&r}, opt);
    rep.passed = false;
    rep.note = std::string("numerical failure: ") + e.what();
    return rep;
  }
}

}  // namespace detail

/// Runs every applicable checker on one instance. An instance that fails
/// validation yields a single rejected report. The partner, if given, feeds
/// the tensor and multiplication checks.
inline std::vector<CheckReport> check_instance(const Representation& r, const Representation* partner,
                                               const CheckOptions& opt) {
  std::vector<CheckReport> out;
  try {
    require_valid(r, opt.tol);
  } catch (const input_error& e) {
    CheckReport rep = detail::start("validation", {&r}, opt);
    rep.rejected = true;
    rep.passed = false;
    rep.note = std::string("input rejected: ") + e.what();
    out.push_back(std::move(rep));
    return out;
  }
  out.push_back(detail::guarded("common_eigenvector", r, opt, [&] { return check_common_eigenvector(r, opt); }));
  out.push_back(detail::guarded("structure", r, opt, [&] { return check_structure(r, opt); }));
  out.push_back(detail::guarded("duality", r, opt, [&] { return check_duality(r, opt); }));
  if (detail::split_fits(r, opt))
    out.push_back(detail::guarded("split_identity", r, opt, [&] { return check_split_identity(r, opt); }));
  out.push_back(detail::guarded("cartan_independence", r, opt, [&] {
    return check_cartan_independence(r, std::vector<std::uint64_t>{opt.seed, opt.seed + 1, opt.seed + 2}, opt);
  }));
  for (const auto& sub : probe_subalgebras(r.algebra, opt.seed, opt.tol))
    out.push_back(detail::guarded("projection", r, opt, [&] { return check_projection(r, sub, opt); }));
  if (is_nilpotent(r.algebra, opt.tol))
    out.push_back(detail::guarded("nilpotent_coincidence", r, opt,
                                  [&] { return check_nilpotent_coincidence(r, opt); }));
  if (partner) {
    out.push_back(detail::guarded("tensor_formula", r, opt,
                                  [&] { return check_tensor_formula(r, *partner, opt); }));
    out.push_back(detail::guarded("multiplication_formula", r, opt,
                                  [&] { return check_multiplication_formula(r, *partner, opt); }));
  }
  return out;
}

/// `count` random cases; each case draws an instance and a small partner
/// (space dimension chosen so the product stays within 16) from its own seed.
inline std::vector<CheckReport> fuzz(std::uint64_t seed, Index count, const FuzzConfig& cfg,
                                     const CheckOptions& base = {}) {
  std::vector<CheckReport> out;
  for (Index c = 0; c < count; ++c) {
    const std::uint64_t cs = case_seed(seed, c);
    std::mt19937_64 rng(cs);
    CheckOptions opt = base;
    opt.seed = cs;
    std::vector<CheckReport> reports;
    try {
      const Representation r = random_instance(rng, cfg);
      FuzzConfig pcfg = cfg;
      pcfg.max_algebra_dim = std::min<Index>(cfg.max_algebra_dim, 2);
      pcfg.max_space_dim = std::max<Index>(1, std::min(cfg.max_space_dim, 16 / r.space_dim));
      const Representation partner = random_instance(rng, pcfg);
      reports = check_instance(r, &partner, opt);
    } catch (const numerical_failure& e) {
      CheckReport rep;
      rep.check = "generation";
      rep.seed = cs;
      rep.passed = false;
      rep.rejected = true;
      rep.note = std::string("generation failure: ") + e.what();
      reports.push_back(std::move(rep));
    }
    for (auto& r : reports) {
      r.case_index = c;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace jointspec
