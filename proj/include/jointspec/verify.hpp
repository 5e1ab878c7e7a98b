#pragma once

// Executable identities between Cartan joint spectra.
//
// Each checker builds the two sides of one identity on concrete inputs and
// records the comparison in a CheckReport. In finite dimensions every
// identity is an equality, so inclusions are asserted alongside equalities:
// a report then distinguishes a broken inclusion from a marginal equality.

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spectra.hpp"

namespace jointspec {

enum class Relation { equal, subset, bound };

struct Assertion {
  std::string label;
  Relation relation = Relation::equal;
  std::vector<Vector> lhs, rhs;  // empty for bounds
  double value = 0.0;            // set distance, or the bounded quantity
  double limit = 0.0;
  bool passed = false;
};

struct CheckReport {
  std::string check;
  std::uint64_t inputs_digest = 0;
  std::optional<std::uint64_t> seed;
  std::optional<Index> case_index;
  std::vector<Assertion> assertions;
  double distance = 0.0;  // largest set distance over all assertions
  bool passed = true;
  bool rejected = false;  // input refused by validation; not a failure
  std::string note;

  void add_sets(std::string label, Relation rel, std::vector<Vector> lhs, std::vector<Vector> rhs,
                double eps) {
    Assertion a;
    a.label = std::move(label);
    a.relation = rel;
    a.value = rel == Relation::subset ? directed_distance(lhs, rhs) : hausdorff(lhs, rhs);
    a.limit = eps;
    a.passed = a.value <= eps;
    a.lhs = std::move(lhs);
    a.rhs = std::move(rhs);
    distance = std::max(distance, a.value);
    passed = passed && a.passed;
    assertions.push_back(std::move(a));
  }

  void add_bound(std::string label, double value, double limit) {
    Assertion a;
    a.label = std::move(label);
    a.relation = Relation::bound;
    a.value = value;
    a.limit = limit;
    a.passed = value <= limit;
    passed = passed && a.passed;
    assertions.push_back(std::move(a));
  }
};

struct CheckOptions {
  Tolerance tol;
  std::uint64_t seed = 1;
  Index cap = kDefaultDimCap;
};

namespace detail {

inline std::uint64_t digest_of(std::initializer_list<const Representation*> reps,
                               std::uint64_t extra) {
  Fnv1a h;
  for (const auto* r : reps) h.u64(digest(*r));
  h.u64(extra);
  return h.value();
}

inline CheckReport start(std::string name, std::initializer_list<const Representation*> reps,
                         const CheckOptions& opt) {
  CheckReport rep;
  rep.check = std::move(name);
  rep.seed = opt.seed;
  rep.inputs_digest = digest_of(reps, opt.seed);
  return rep;
}

inline bool split_fits(const Representation& r, const CheckOptions& opt) {
  return r.space_dim * r.space_dim <= opt.cap;
}

inline std::vector<Vector> product(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Vector z(x.size() + y.size());
      z << x, y;
      out.push_back(std::move(z));
    }
  return out;
}

inline void append(std::vector<Vector>& to, const std::vector<Vector>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

inline SpectrumKind kind_of(Base b, Family f, Index k = 0) { return {b, f, k}; }

}  // namespace detail

/// Koszul-route Cartan spectra against the common-eigenvector description;
/// every Slodkowski level must reproduce the same set.
inline CheckReport check_common_eigenvector(const Representation& r, const CheckOptions& opt) {
  require_valid(r, opt.tol);
  auto rep = detail::start("common_eigenvector", {&r}, opt);
  const auto cd = cartan_decomposition(r.algebra, opt.seed, opt.tol);
  const auto oracle = common_eigenvector_spectrum(r, cd, opt.tol).coords();
  SpectralSuite s(r, cd, opt.tol, opt.cap);
  const auto eps = opt.tol.match_eps;
  rep.add_sets("taylor = common eigenvector set", Relation::equal, s.get(taylor_kind()).coords(), oracle, eps);
  for (Index k = 0; k <= r.algebra.dim(); ++k) {
    rep.add_sets("slodkowski_delta(" + std::to_string(k) + ") = common eigenvector set", Relation::equal,
                 s.get(detail::kind_of(Base::cartan, Family::delta, k)).coords(), oracle, eps);
    rep.add_sets("slodkowski_pi(" + std::to_string(k) + ") = common eigenvector set", Relation::equal,
                 s.get(detail::kind_of(Base::cartan, Family::pi, k)).coords(), oracle, eps);
  }
  return rep;
}

/// Sigma_{pi,k}(rho) = Sigma_{delta,k}(rho*), Sigma_{delta,k}(rho) = Sigma_{pi,k}(rho*),
/// Sigma(rho) = Sigma(rho*). rho* lives over L^op and gets its own Cartan search.
inline CheckReport check_duality(const Representation& r, const CheckOptions& opt) {
  require_valid(r, opt.tol);
  auto rep = detail::start("duality", {&r}, opt);
  const Representation dual = adjoint_rep(r);
  SpectralSuite s(r, cartan_decomposition(r.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  SpectralSuite sd(dual, cartan_decomposition(dual.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  const auto eps = opt.tol.match_eps;
  using detail::kind_of;
  for (Index k = 0; k <= r.algebra.dim(); ++k) {
    const auto ks = std::to_string(k);
    rep.add_sets("pi(" + ks + ")(rho) = delta(" + ks + ")(rho*)", Relation::equal,
                 s.get(kind_of(Base::cartan, Family::pi, k)).coords(),
                 sd.get(kind_of(Base::cartan, Family::delta, k)).coords(), eps);
    rep.add_sets("delta(" + ks + ")(rho) = pi(" + ks + ")(rho*)", Relation::equal,
                 s.get(kind_of(Base::cartan, Family::delta, k)).coords(),
                 sd.get(kind_of(Base::cartan, Family::pi, k)).coords(), eps);
  }
  rep.add_sets("taylor(rho) = taylor(rho*)", Relation::equal, s.get(taylor_kind()).coords(),
               sd.get(taylor_kind()).coords(), eps);
  return rep;
}

/// Sp_{delta,k}(rho) = Sigma_{delta,k}(L_rho), Sp_{pi,k}(rho) = Sigma_{delta,k}(R_rho),
/// Sp(rho) = Sigma(L_rho) = Sigma(R_rho), and all of them equal the matching
/// Cartan spectrum of rho. The multiplication representations get their own
/// Cartan subalgebras (seed + 1).
inline CheckReport check_split_identity(const Representation& r, const CheckOptions& opt) {
  require_valid(r, opt.tol);
  if (!detail::split_fits(r, opt)) throw input_error("split check: dimension cap exceeded");
  auto rep = detail::start("split_identity", {&r}, opt);
  SpectralSuite s(r, cartan_decomposition(r.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  const Representation lr = left_mult_rep(r, opt.cap);
  const Representation rr = right_mult_rep(r, opt.cap);
  const auto left = analyze(lr, cartan_decomposition(lr.algebra, opt.seed + 1, opt.tol), opt.tol);
  const auto right = analyze(rr, cartan_decomposition(rr.algebra, opt.seed + 1, opt.tol), opt.tol);
  const auto eps = opt.tol.match_eps;
  using detail::kind_of;
  for (Index k = 0; k <= r.algebra.dim(); ++k) {
    const auto ks = std::to_string(k);
    const auto spd = s.get(kind_of(Base::split, Family::delta, k)).coords();
    const auto spp = s.get(kind_of(Base::split, Family::pi, k)).coords();
    rep.add_sets("split_delta(" + ks + ") = delta(" + ks + ")(L_rho)", Relation::equal, spd,
                 select(left, kind_of(Base::cartan, Family::delta, k), opt.tol).coords(), eps);
    rep.add_sets("split_pi(" + ks + ") = delta(" + ks + ")(R_rho)", Relation::equal, spp,
                 select(right, kind_of(Base::cartan, Family::delta, k), opt.tol).coords(), eps);
    rep.add_sets("slodkowski_delta(" + ks + ") subset split_delta(" + ks + ")", Relation::subset,
                 s.get(kind_of(Base::cartan, Family::delta, k)).coords(), spd, eps);
    rep.add_sets("split_delta(" + ks + ") = slodkowski_delta(" + ks + ")", Relation::equal, spd,
                 s.get(kind_of(Base::cartan, Family::delta, k)).coords(), eps);
    rep.add_sets("slodkowski_pi(" + ks + ") subset split_pi(" + ks + ")", Relation::subset,
                 s.get(kind_of(Base::cartan, Family::pi, k)).coords(), spp, eps);
    rep.add_sets("split_pi(" + ks + ") = slodkowski_pi(" + ks + ")", Relation::equal, spp,
                 s.get(kind_of(Base::cartan, Family::pi, k)).coords(), eps);
  }
  const auto sp = s.get(kind_of(Base::split, Family::taylor)).coords();
  rep.add_sets("split = taylor(L_rho)", Relation::equal, sp,
               select(left, taylor_kind(), opt.tol).coords(), eps);
  rep.add_sets("split = taylor(R_rho)", Relation::equal, sp,
               select(right, taylor_kind(), opt.tol).coords(), eps);
  rep.add_sets("taylor subset split", Relation::subset, s.get(taylor_kind()).coords(), sp, eps);
  rep.add_sets("split = taylor", Relation::equal, sp, s.get(taylor_kind()).coords(), eps);
  return rep;
}

/// pi(Sigma_*(rho)) = Sigma_*(rho|_E) for Taylor, both Slodkowski families at
/// levels 0..dim E, and the split kinds when the dimension cap allows.
inline CheckReport check_projection(const Representation& r, const SubalgebraBasis& sub,
                                    const CheckOptions& opt) {
  require_valid(r, opt.tol);
  if (!subalgebra_closure_check(r.algebra, sub, opt.tol))
    throw input_error("projection check: subspace is not a subalgebra");
  auto rep = detail::start("projection", {&r}, opt);
  const Representation re = restrict(r, sub, opt.tol);
  SpectralSuite s(r, cartan_decomposition(r.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  SpectralSuite se(re, cartan_decomposition(re.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  const Matrix qt = sub.basis.basis().transpose();
  const bool split = detail::split_fits(r, opt);
  if (!split) rep.note = "split kinds skipped: dimension cap";
  for (const auto& kind : non_essential_kinds(re.algebra.dim(), split)) {
    std::vector<Vector> projected;
    for (const auto& c : s.get(kind).coords()) projected.push_back(qt * c);
    rep.add_sets("restrict(" + kind.label() + "(rho)) = " + kind.label() + "(rho|E)", Relation::equal,
                 std::move(projected), se.get(kind).coords(), opt.tol.match_eps);
  }
  return rep;
}

/// All spectrum kinds agree across the given Cartan subalgebras.
inline CheckReport check_cartan_independence(const Representation& r,
                                             const std::vector<SubalgebraBasis>& cartans,
                                             const CheckOptions& opt) {
  require_valid(r, opt.tol);
  if (cartans.size() < 2) throw input_error("independence check needs at least two Cartan subalgebras");
  auto rep = detail::start("cartan_independence", {&r}, opt);
  const bool split = detail::split_fits(r, opt);
  if (!split) rep.note = "split kinds skipped: dimension cap";
  std::vector<SpectralSuite> suites;
  for (const auto& h : cartans)
    suites.emplace_back(r, root_decomposition(r.algebra, h, opt.tol), opt.tol, opt.cap);
  auto kinds = non_essential_kinds(r.algebra.dim(), split);
  kinds.push_back({Base::essential, Family::taylor, 0});
  kinds.push_back({Base::essential_split, Family::taylor, 0});
  for (const auto& kind : kinds) {
    const auto ref = suites.front().get(kind).coords();
    for (std::size_t i = 1; i < suites.size(); ++i)
      rep.add_sets(kind.label() + ": H#0 vs H#" + std::to_string(i), Relation::equal, ref,
                   suites[i].get(kind).coords(), opt.tol.match_eps);
  }
  return rep;
}

inline CheckReport check_cartan_independence(const Representation& r,
                                             const std::vector<std::uint64_t>& seeds,
                                             const CheckOptions& opt) {
  require_valid(r, opt.tol);
  std::vector<SubalgebraBasis> hs;
  for (auto s : seeds) hs.push_back(find_cartan_subalgebra(r.algebra, s, opt.tol));
  auto rep = check_cartan_independence(r, hs, opt);
  Fnv1a h;
  h.u64(rep.inputs_digest);
  for (auto s : seeds) h.u64(s);
  rep.inputs_digest = h.value();
  return rep;
}

namespace detail {

/// One side of a product formula: the union over p + q = k of
/// A_p x B_{g(q)}, where g maps q to the level used on the second factor.
template <class GetA, class GetB, class MapQ>
std::vector<Vector> union_of_products(Index k, Index n1, Index n2, GetA a, GetB b, MapQ g) {
  std::vector<Vector> out;
  for (Index p = 0; p <= std::min(k, n1); ++p) {
    const Index q = k - p;
    if (q < 0 || q > n2) continue;
    append(out, product(a(p), b(g(q))));
  }
  return out;
}

/// Shared shape of the tensor and multiplication checks.
inline void product_formula(CheckReport& rep, SpectralSuite& s1, SpectralSuite& s2,
                            SpectralSuite& s, bool whole_split, bool factor_split,
                            bool mirror_second, const Tolerance& tol) {
  const Index n1 = s1.rep().algebra.dim(), n2 = s2.rep().algebra.dim();
  const Index n = n1 + n2;
  const auto eps = tol.match_eps;
  auto other = [&](Family f) {
    if (!mirror_second) return f;
    return f == Family::delta ? Family::pi : Family::delta;
  };
  auto qmap = [&](Index q) { return mirror_second ? n2 - q : q; };
  for (Family fam : {Family::delta, Family::pi}) {
    const char* fname = fam == Family::delta ? "delta" : "pi";
    for (Index k = 0; k <= n; ++k) {
      const std::string ks = std::string(fname) + "(" + std::to_string(k) + ")";
      auto lower = union_of_products(
          k, n1, n2, [&](Index p) { return s1.get(kind_of(Base::cartan, fam, p)).coords(); },
          [&](Index q) { return s2.get(kind_of(Base::cartan, other(fam), q)).coords(); }, qmap);
      const auto mid = s.get(kind_of(Base::cartan, fam, k)).coords();
      rep.add_sets("factor union subset " + ks, Relation::subset, lower, mid, eps);
      rep.add_sets("factor union = " + ks, Relation::equal, lower, mid, eps);
      if (!factor_split) continue;
      auto upper = union_of_products(
          k, n1, n2, [&](Index p) { return s1.get(kind_of(Base::split, fam, p)).coords(); },
          [&](Index q) { return s2.get(kind_of(Base::split, other(fam), q)).coords(); }, qmap);
      if (whole_split) {
        const auto sp = s.get(kind_of(Base::split, fam, k)).coords();
        rep.add_sets(ks + " subset split_" + ks, Relation::subset, mid, sp, eps);
        rep.add_sets("split_" + ks + " subset split factor union", Relation::subset, sp, upper, eps);
      } else {
        rep.add_sets(ks + " subset split factor union", Relation::subset, mid, upper, eps);
      }
      rep.add_sets(ks + " = split factor union", Relation::equal, mid, upper, eps);
    }
  }
  rep.add_sets("taylor = taylor x taylor", Relation::equal, s.get(taylor_kind()).coords(),
               product(s1.get(taylor_kind()).coords(), s2.get(taylor_kind()).coords()), eps);
  rep.add_sets("taylor x taylor subset taylor", Relation::subset,
               product(s1.get(taylor_kind()).coords(), s2.get(taylor_kind()).coords()),
               s.get(taylor_kind()).coords(), eps);
}

}  // namespace detail

/// Product formula for the tensor product representation of L1 x L2.
inline CheckReport check_tensor_formula(const Representation& r1, const Representation& r2,
                                        const CheckOptions& opt) {
  require_valid(r1, opt.tol);
  require_valid(r2, opt.tol);
  const Representation t = tensor_rep(r1, r2, opt.cap);
  auto rep = detail::start("tensor_formula", {&r1, &r2}, opt);
  SpectralSuite s1(r1, cartan_decomposition(r1.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  SpectralSuite s2(r2, cartan_decomposition(r2.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  SpectralSuite s(t, cartan_decomposition(t.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  const bool whole = detail::split_fits(t, opt);
  const bool factors = detail::split_fits(r1, opt) && detail::split_fits(r2, opt);
  if (!whole) rep.note = "split spectra of the product skipped: dimension cap";
  detail::product_formula(rep, s1, s2, s, whole, factors, false, opt.tol);
  return rep;
}

/// Product formula for the multiplication representation of L1 x L2^op on
/// L(X2, X1); the second factor enters with the opposite family at level m - q.
inline CheckReport check_multiplication_formula(const Representation& r1, const Representation& r2,
                                                const CheckOptions& opt) {
  require_valid(r1, opt.tol);
  require_valid(r2, opt.tol);
  const Representation t = multiplication_rep(r1, r2, opt.cap);
  auto rep = detail::start("multiplication_formula", {&r1, &r2}, opt);
  SpectralSuite s1(r1, cartan_decomposition(r1.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  SpectralSuite s2(r2, cartan_decomposition(r2.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  SpectralSuite s(t, cartan_decomposition(t.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  const bool whole = detail::split_fits(t, opt);
  const bool factors = detail::split_fits(r1, opt) && detail::split_fits(r2, opt);
  if (!whole) rep.note = "split spectra of the product skipped: dimension cap";
  detail::product_formula(rep, s1, s2, s, whole, factors, true, opt.tol);
  return rep;
}

/// For nilpotent L, spectra through a found Cartan subalgebra equal the
/// spectra computed with H = L and H_* = 0.
inline CheckReport check_nilpotent_coincidence(const Representation& r, const CheckOptions& opt) {
  require_valid(r, opt.tol);
  if (!is_nilpotent(r.algebra, opt.tol)) throw input_error("nilpotent check: algebra is not nilpotent");
  auto rep = detail::start("nilpotent_coincidence", {&r}, opt);
  const auto whole = root_decomposition(r.algebra, {Subspace::full(r.algebra.dim())}, opt.tol);
  rep.add_bound("H_* = 0 when H = L", static_cast<double>(whole.h_star.dim()), 0.0);
  SpectralSuite found(r, cartan_decomposition(r.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  SpectralSuite direct(r, whole, opt.tol, opt.cap);
  for (const auto& kind : non_essential_kinds(r.algebra.dim(), detail::split_fits(r, opt)))
    rep.add_sets(kind.label() + ": found H vs H = L", Relation::equal, found.get(kind).coords(),
                 direct.get(kind).coords(), opt.tol.match_eps);
  return rep;
}

inline constexpr double kComplexResidualLimit = 1e-9;

/// Structural invariants: Koszul complexes are complexes, non-essential
/// spectra are nonempty sets of characters, essential kinds are empty with
/// their reason code.
inline CheckReport check_structure(const Representation& r, const CheckOptions& opt) {
  require_valid(r, opt.tol);
  auto rep = detail::start("structure", {&r}, opt);
  SpectralSuite s(r, cartan_decomposition(r.algebra, opt.seed, opt.tol), opt.tol, opt.cap);
  const bool split = detail::split_fits(r, opt);
  std::vector<const CartanAnalysis*> analyses{&s.main()};
  if (split) {
    analyses.push_back(&s.left());
    analyses.push_back(&s.right());
  }
  double resid = 0.0;
  for (const auto* a : analyses)
    for (const auto& c : a->candidates) resid = std::max(resid, c.complex_residual);
  rep.add_bound("|d d| / scale^2 over built complexes", resid, kComplexResidualLimit);
  const Subspace l2 = derived_subalgebra(r.algebra, opt.tol);
  for (const auto& kind : non_essential_kinds(r.algebra.dim(), split)) {
    const auto set = s.get(kind);
    rep.add_bound(kind.label() + " is nonempty", set.points.empty() ? 1.0 : 0.0, 0.0);
    double worst = 0.0;
    for (const auto& p : set.points)
      for (Index j = 0; j < l2.dim(); ++j)
        worst = std::max(worst, std::abs(pair(p.coords, l2.basis().col(j))));
    rep.add_bound(kind.label() + " vanishes on L^2", worst, opt.tol.match_eps);
  }
  for (Base b : {Base::essential, Base::essential_split})
    for (Family f : {Family::taylor, Family::delta, Family::pi}) {
      const auto set = s.get({b, f, 0});
      rep.add_bound(set.kind.label() + " is empty with reason",
                    (set.points.empty() && set.reason == kFredholmTrivial) ? 0.0 : 1.0, 0.0);
    }
  return rep;
}

/// A finite family of 1- and 2-dimensional subalgebras to probe the
/// projection property: lines through basis vectors, sums of pairs, Cartan
/// and root vectors, and one seeded random vector, plus every closed plane
/// spanned by two of them.
inline std::vector<SubalgebraBasis> probe_subalgebras(const LieAlgebra& alg, std::uint64_t seed,
                                                      const Tolerance& tol,
                                                      std::size_t max_each = 6) {
  const Index n = alg.dim();
  std::vector<Vector> pool;
  for (Index i = 0; i < n; ++i) pool.push_back(alg.basis_vector(i));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) pool.push_back(alg.basis_vector(i) + alg.basis_vector(j));
  try {
    const auto cd = cartan_decomposition(alg, seed, tol);
    const Matrix hrows = echelon_rows(cd.h.basis, tol);
    for (Index i = 0; i < hrows.rows(); ++i) pool.push_back(hrows.row(i).transpose());
    for (const auto& root : cd.roots) {
      const Matrix rows = echelon_rows(root.space, tol);
      for (Index i = 0; i < rows.rows(); ++i) pool.push_back(rows.row(i).transpose());
    }
  } catch (const numerical_failure&) {
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> coord(-3, 3);
  Vector rnd(n);
  for (Index i = 0; i < n; ++i) rnd(i) = static_cast<double>(coord(rng));
  if (!rnd.isZero()) pool.push_back(rnd);

  std::vector<SubalgebraBasis> ones, twos;
  auto seen = [&](const std::vector<SubalgebraBasis>& list, const Subspace& s) {
    for (const auto& e : list)
      if (same_subspace(e.basis, s, tol)) return true;
    return false;
  };
  for (const auto& v : pool) {
    if (ones.size() >= max_each) break;
    Subspace s = column_span(v, tol, 1.0);
    if (s.dim() == 1 && !seen(ones, s)) ones.push_back({std::move(s)});
  }
  for (std::size_t i = 0; i < pool.size() && twos.size() < max_each; ++i)
    for (std::size_t j = i + 1; j < pool.size() && twos.size() < max_each; ++j) {
      Matrix m(n, 2);
      m << pool[i], pool[j];
      SubalgebraBasis s{column_span(m, tol, 1.0)};
      if (s.basis.dim() != 2 || seen(twos, s.basis)) continue;
      if (subalgebra_closure_check(alg, s, tol)) twos.push_back(std::move(s));
    }
  ones.insert(ones.end(), twos.begin(), twos.end());
  return ones;
}

}  // namespace jointspec
