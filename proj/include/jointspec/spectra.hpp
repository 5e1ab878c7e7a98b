#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cartan.hpp"
#include "koszul.hpp"

namespace jointspec {

/// A functional on L by its values f(e_i); `is_character` records f(L^2) = 0.
struct Character {
  Vector coords;
  bool is_character = false;
};

inline Character make_character(const LieAlgebra& alg, Vector coords, const Tolerance& tol) {
  Character c{std::move(coords), true};
  const Subspace l2 = derived_subalgebra(alg, tol);
  for (Index j = 0; j < l2.dim(); ++j)
    if (std::abs(pair(c.coords, l2.basis().col(j))) > tol.match_eps) c.is_character = false;
  return c;
}

// ---------------------------------------------------------------------------
// Weights of a representation of a nilpotent algebra

struct Weight {
  Vector values;  // f(h_j) on the algebra's basis
  Index multiplicity = 0;
  Vector witness;  // common eigenvector, unit norm
  double witness_residual = 0.0;
};

/// Joint generalized eigenspaces of rho(h_1..h_r), each with a common
/// eigenvector found as the joint kernel of the restricted operators.
inline std::vector<Weight> weights_of_nilpotent_rep(const Representation& h_rep,
                                                    const Tolerance& tol) {
  check_shape(h_rep);
  const Index r = h_rep.algebra.dim(), d = h_rep.space_dim;
  auto joint = joint_generalized_eigenspaces(h_rep.mats, d, tol);
  std::vector<Weight> out;
  for (auto& js : joint) {
    Weight w;
    w.values = Vector(r);
    for (Index j = 0; j < r; ++j) w.values(j) = js.values[static_cast<std::size_t>(j)];
    w.multiplicity = js.space.dim();
    const Matrix& q = js.space.basis();
    const Index m = q.cols();
    double scale = 1.0;
    Matrix stacked(r * m, m);
    for (Index j = 0; j < r; ++j) {
      const Matrix& a = h_rep.mats[static_cast<std::size_t>(j)];
      stacked.middleRows(j * m, m) = q.adjoint() * a * q - w.values(j) * Matrix::Identity(m, m);
      scale = std::max(scale, spectral_norm(a));
    }
    Vector x;
    if (r == 0) {
      x = q.col(0);
    } else {
      Subspace k = kernel_at_scale(stacked, tol, scale);
      if (k.dim() == 0) throw numerical_failure("weight space has no common eigenvector");
      x = q * k.basis().col(0);
    }
    x.normalize();
    for (Index j = 0; j < r; ++j)
      w.witness_residual = std::max(
          w.witness_residual,
          (h_rep.mats[static_cast<std::size_t>(j)] * x - w.values(j) * x).norm());
    w.witness = std::move(x);
    out.push_back(std::move(w));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum kinds and sets

enum class Base { cartan, split, essential, essential_split };
enum class Family { taylor, delta, pi };

struct SpectrumKind {
  Base base = Base::cartan;
  Family family = Family::taylor;
  Index level = 0;  // meaningful for delta / pi only

  bool essential() const { return base == Base::essential || base == Base::essential_split; }

  std::string label() const {
    std::string b;
    switch (base) {
      case Base::cartan: b = ""; break;
      case Base::split: b = "split_"; break;
      case Base::essential: b = "essential_"; break;
      case Base::essential_split: b = "essential_split_"; break;
    }
    switch (family) {
      case Family::taylor:
        if (base == Base::cartan) return "taylor";
        if (base == Base::split) return "split";
        if (base == Base::essential) return "essential_taylor";
        return "essential_split";
      case Family::delta: return (base == Base::cartan ? std::string("slodkowski_") : b) + "delta(" + std::to_string(level) + ")";
      case Family::pi: return (base == Base::cartan ? std::string("slodkowski_") : b) + "pi(" + std::to_string(level) + ")";
    }
    return b;
  }

  friend bool operator==(const SpectrumKind&, const SpectrumKind&) = default;
};

inline SpectrumKind taylor_kind() { return {Base::cartan, Family::taylor, 0}; }

/// Every non-essential kind for an algebra of dimension n: Taylor, split and
/// both Slodkowski families of each, at levels 0..n.
inline std::vector<SpectrumKind> non_essential_kinds(Index n, bool with_split = true) {
  std::vector<SpectrumKind> out;
  for (Base b : {Base::cartan, Base::split}) {
    if (b == Base::split && !with_split) continue;
    out.push_back({b, Family::taylor, 0});
    for (Index k = 0; k <= n; ++k) {
      out.push_back({b, Family::delta, k});
      out.push_back({b, Family::pi, k});
    }
  }
  return out;
}

inline constexpr const char* kFredholmTrivial = "finite_dimensional_fredholm_trivial";

struct SpectrumPoint {
  Vector coords;  // f(e_i)
  bool is_character = false;
  Index multiplicity = 0;
  std::optional<HomologyProfile> profile;
  std::optional<Vector> witness;
  double complex_residual = 0.0;
};

struct SpectrumSet {
  SpectrumKind kind;
  std::vector<SpectrumPoint> points;
  Tolerance tolerance;
  Subspace cartan_basis;
  std::string reason;  // set for kinds that are empty by construction

  std::vector<Vector> coords() const {
    std::vector<Vector> out;
    for (const auto& p : points) out.push_back(p.coords);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Cartan pipeline

struct Candidate {
  Character character;
  Index multiplicity = 0;
  Vector witness;
  HomologyProfile profile;
  double complex_residual = 0.0;
};

/// Weights of rho|_H lifted by zero on H_*, each with the homology profile of
/// its twisted Koszul complex. Every Cartan spectrum kind filters this list.
struct CartanAnalysis {
  CartanDecomposition cd;
  Index algebra_dim = 0;
  std::vector<Candidate> candidates;
};

inline void require_same_algebra(const Representation& r, const CartanDecomposition& cd) {
  if (!(r.algebra == cd.algebra))
    throw input_error("Cartan decomposition belongs to a different algebra");
}

inline CartanAnalysis analyze(const Representation& r, const CartanDecomposition& cd,
                              const Tolerance& tol) {
  tol.check();
  check_shape(r);
  require_same_algebra(r, cd);
  CartanAnalysis a;
  a.cd = cd;
  a.algebra_dim = r.algebra.dim();
  const Representation h_rep = restrict(r, cd.h, tol);
  for (auto& w : weights_of_nilpotent_rep(h_rep, tol)) {
    Candidate c;
    c.character = make_character(r.algebra, cd.lift_functional(w.values), tol);
    c.multiplicity = w.multiplicity;
    c.witness = std::move(w.witness);
    const KoszulComplex kc = build_complex(h_rep, cd.restrict_functional(c.character.coords), tol);
    c.profile = homology_dims(kc, tol);
    c.complex_residual = kc.complex_residual();
    a.candidates.push_back(std::move(c));
  }
  return a;
}

namespace detail {

inline void sort_and_merge(std::vector<SpectrumPoint>& pts, const Tolerance& tol) {
  std::sort(pts.begin(), pts.end(),
            [](const SpectrumPoint& a, const SpectrumPoint& b) { return lex_less(a.coords, b.coords); });
  std::vector<SpectrumPoint> out;
  for (auto& p : pts) {
    bool merged = false;
    for (auto& q : out)
      if (sup_norm(q.coords - p.coords) <= tol.match_eps) {
        q.multiplicity += p.multiplicity;
        merged = true;
        break;
      }
    if (!merged) out.push_back(std::move(p));
  }
  pts = std::move(out);
}

inline bool member(const Candidate& c, Family fam, Index level) {
  switch (fam) {
    case Family::taylor: return taylor_membership(c.profile);
    case Family::delta: return slodkowski_membership(c.profile, std::min(level, c.profile.top()), Side::delta);
    case Family::pi: return slodkowski_membership(c.profile, std::min(level, c.profile.top()), Side::pi);
  }
  return false;
}

}  // namespace detail

/// Filters an analysis down to one family. Levels run over 0..dim L; levels at
/// or above dim H inspect the whole complex.
inline SpectrumSet select(const CartanAnalysis& a, SpectrumKind kind, const Tolerance& tol) {
  if (kind.family != Family::taylor && (kind.level < 0 || kind.level > a.algebra_dim))
    throw input_error("spectrum level out of range 0..dim L");
  SpectrumSet s;
  s.kind = kind;
  s.tolerance = tol;
  s.cartan_basis = a.cd.h.basis;
  for (const auto& c : a.candidates) {
    if (!detail::member(c, kind.family, kind.level)) continue;
    SpectrumPoint p;
    p.coords = c.character.coords;
    p.is_character = c.character.is_character;
    p.multiplicity = c.multiplicity;
    p.profile = c.profile;
    p.witness = c.witness;
    p.complex_residual = c.complex_residual;
    s.points.push_back(std::move(p));
  }
  detail::sort_and_merge(s.points, tol);
  return s;
}

inline SpectrumSet cartan_taylor(const Representation& r, const CartanDecomposition& cd,
                                 const Tolerance& tol) {
  return select(analyze(r, cd, tol), taylor_kind(), tol);
}

inline SpectrumSet cartan_slodkowski(const Representation& r, const CartanDecomposition& cd,
                                     Index k, Side side, const Tolerance& tol) {
  return select(analyze(r, cd, tol),
                {Base::cartan, side == Side::delta ? Family::delta : Family::pi, k}, tol);
}

/// Cartan analyses of rho, of L_rho, and of R_rho (over L^op); the split
/// analyses are built on first use.
class SpectralSuite {
 public:
  SpectralSuite(Representation r, CartanDecomposition cd, Tolerance tol,
                Index cap = kDefaultDimCap)
      : rep_(std::move(r)), cd_(std::move(cd)), tol_(tol), cap_(cap) {}

  const CartanAnalysis& main() {
    if (!main_) main_ = analyze(rep_, cd_, tol_);
    return *main_;
  }
  const CartanAnalysis& left() {
    if (!left_) left_ = analyze(left_mult_rep(rep_, cap_), cd_, tol_);
    return *left_;
  }
  const CartanAnalysis& right() {
    if (!right_)
      right_ = analyze(right_mult_rep(rep_, cap_), opposite_decomposition(cd_), tol_);
    return *right_;
  }

  SpectrumSet get(SpectrumKind kind) {
    if (kind.essential()) {
      SpectrumSet s;
      s.kind = kind;
      s.tolerance = tol_;
      s.cartan_basis = cd_.h.basis;
      s.reason = kFredholmTrivial;
      return s;
    }
    if (kind.base == Base::cartan) return select(main(), kind, tol_);
    // Sp_{delta,k} = Sigma_{delta,k}(L_rho), Sp_{pi,k} = Sigma_{delta,k}(R_rho),
    // Sp = Sigma(L_rho).
    SpectrumKind inner{Base::cartan, kind.family == Family::taylor ? Family::taylor : Family::delta,
                       kind.level};
    SpectrumSet s = select(kind.family == Family::pi ? right() : left(), inner, tol_);
    s.kind = kind;
    return s;
  }

  const Representation& rep() const { return rep_; }
  const CartanDecomposition& decomposition() const { return cd_; }

 private:
  Representation rep_;
  CartanDecomposition cd_;
  Tolerance tol_;
  Index cap_;
  std::optional<CartanAnalysis> main_, left_, right_;
};

inline SpectrumSet cartan_split(const Representation& r, const CartanDecomposition& cd, Index k,
                                Side side, const Tolerance& tol, Index cap = kDefaultDimCap) {
  SpectralSuite suite(r, cd, tol, cap);
  return suite.get({Base::split, side == Side::delta ? Family::delta : Family::pi, k});
}

inline SpectrumSet cartan_split_taylor(const Representation& r, const CartanDecomposition& cd,
                                       const Tolerance& tol, Index cap = kDefaultDimCap) {
  SpectralSuite suite(r, cd, tol, cap);
  return suite.get({Base::split, Family::taylor, 0});
}

/// Essential kinds: every operator on a finite-dimensional space is Fredholm,
/// so these are empty, tagged with kFredholmTrivial.
inline SpectrumSet cartan_essential(const Representation& r, const CartanDecomposition& cd,
                                    SpectrumKind kind, const Tolerance& tol) {
  require_same_algebra(r, cd);
  if (!kind.essential()) throw input_error("cartan_essential needs an essential kind");
  SpectralSuite suite(r, cd, tol);
  return suite.get(kind);
}

inline SpectrumSet compute_spectrum(const Representation& r, const CartanDecomposition& cd,
                                    SpectrumKind kind, const Tolerance& tol,
                                    Index cap = kDefaultDimCap) {
  require_same_algebra(r, cd);
  SpectralSuite suite(r, cd, tol, cap);
  return suite.get(kind);
}

/// Characters f with f(L^2) = 0, f = 0 on H_*, and a common eigenvector
/// rho(h) x = f(h) x on H.
///
/// Independent of the Koszul machinery and of the joint refinement: candidate
/// values come from the eigenvalues of each rho(h_j) separately, and a tuple is
/// kept when the successive kernels ker(rho(h_j) - f_j) still intersect.
inline SpectrumSet common_eigenvector_spectrum(const Representation& r,
                                               const CartanDecomposition& cd,
                                               const Tolerance& tol) {
  tol.check();
  check_shape(r);
  require_same_algebra(r, cd);
  const Matrix& hb = cd.h.basis.basis();
  const Index rdim = hb.cols(), d = r.space_dim;
  std::vector<Matrix> ops;
  std::vector<std::vector<Scalar>> eigs;
  for (Index j = 0; j < rdim; ++j) {
    ops.push_back(r(hb.col(j)));
    std::vector<Scalar> vals;
    for (const auto& e : generalized_eigenspaces(ops.back(), tol).spaces) vals.push_back(e.value);
    eigs.push_back(std::move(vals));
  }

  SpectrumSet s;
  s.kind = taylor_kind();
  s.tolerance = tol;
  s.cartan_basis = cd.h.basis;
  Vector values(rdim);
  std::function<void(Index, const Matrix&)> descend = [&](Index j, const Matrix& q) {
    if (j == rdim) {
      Character ch = make_character(r.algebra, cd.lift_functional(values), tol);
      if (!ch.is_character) return;
      SpectrumPoint p;
      p.coords = std::move(ch.coords);
      p.is_character = true;
      p.multiplicity = q.cols();
      p.witness = Vector(q.col(0));
      s.points.push_back(std::move(p));
      return;
    }
    const Matrix& a = ops[static_cast<std::size_t>(j)];
    for (Scalar lambda : eigs[static_cast<std::size_t>(j)]) {
      const double scale = std::max({1.0, spectral_norm(a), std::abs(lambda)});
      const Matrix shifted = (a - lambda * Matrix::Identity(d, d)) * q;
      const Subspace k = kernel_at_scale(shifted, tol, scale);
      if (k.dim() == 0) continue;
      values(j) = lambda;
      descend(j + 1, column_span(q * k.basis(), tol, 1.0).basis());
    }
  };
  descend(0, Matrix::Identity(d, d));
  detail::sort_and_merge(s.points, tol);
  return s;
}

// ---------------------------------------------------------------------------
// Set comparison

/// Directed distance sup_{a in A} min_{b in B} |a - b|_inf (0 for empty A).
inline double directed_distance(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  double worst = 0.0;
  for (const auto& x : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& y : b) {
      if (y.size() != x.size()) continue;
      best = std::min(best, sup_norm(x - y));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  return std::max(directed_distance(a, b), directed_distance(b, a));
}

}  // namespace jointspec
