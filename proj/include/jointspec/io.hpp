#pragma once

// Problem files and result documents (JSON).
//
// Problem file:
//   {
//     "algebra": {"dim": 2, "brackets": [[1, 2, [0, 1]]]},
//     "representation": {"space_dim": 2, "matrices": [[[1, 0], [0, 0]], [[0, 1], [0, 0]]]},
//     "subalgebras": [{"name": "E", "basis": [[0, 1]]}],
//     "tolerance": {"rank_eps": 1e-9, "match_eps": 1e-7}
//   }
// Indices are 1-based. A scalar is a number or an [re, im] pair; brackets are
// (i, j, coefficients) with i < j and the antisymmetric part implied.

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "verify.hpp"

namespace jointspec {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

struct NamedSubalgebra {
  std::string name;
  Matrix spanning;  // columns span the subalgebra
};

struct Problem {
  LieAlgebra algebra;
  std::optional<Representation> representation;
  std::vector<NamedSubalgebra> subalgebras;
  std::optional<Tolerance> tolerance;
};

namespace io_detail {

inline Scalar scalar_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw input_error("expected a number or an [re, im] pair, got " + j.dump());
}

inline Vector vector_from(const json& j, Index expected) {
  if (!j.is_array()) throw input_error("expected a list of scalars");
  if (expected >= 0 && static_cast<Index>(j.size()) != expected)
    throw input_error("vector has length " + std::to_string(j.size()) + ", expected " +
                      std::to_string(expected));
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = scalar_from(j[i]);
  return v;
}

inline Matrix matrix_from(const json& j, Index size) {
  if (!j.is_array() || static_cast<Index>(j.size()) != size)
    throw input_error("matrix must have " + std::to_string(size) + " rows");
  Matrix m(size, size);
  for (Index i = 0; i < size; ++i) m.row(i) = vector_from(j[static_cast<std::size_t>(i)], size).transpose();
  return m;
}

inline double chop(double x) { return std::abs(x) < 1e-12 ? 0.0 : x; }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw input_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace io_detail

inline json to_json(Scalar s) { return json::array({io_detail::chop(s.real()), io_detail::chop(s.imag())}); }

inline json to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline json to_json(const Matrix& m) {
  json out = json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vector(m.row(i).transpose())));
  return out;
}

inline json rows_to_json(const Matrix& rows) {
  json out = json::array();
  for (Index i = 0; i < rows.rows(); ++i) out.push_back(to_json(Vector(rows.row(i).transpose())));
  return out;
}

inline json to_json(const Tolerance& t) { return {{"rank_eps", t.rank_eps}, {"match_eps", t.match_eps}}; }

inline Problem parse_problem(const json& doc) {
  if (!doc.is_object()) throw input_error("problem file must be a JSON object");
  Problem p;
  try {
    const json& a = io_detail::field(doc, "algebra");
    const auto dim = io_detail::field(a, "dim").get<long long>();
    if (dim < 1) throw input_error("algebra dimension must be positive");
    std::vector<LieAlgebra::Bracket> brackets;
    if (a.contains("brackets")) {
      for (const auto& b : a.at("brackets")) {
        if (!b.is_array() || b.size() != 3) throw input_error("bracket entries are [i, j, coefficients]");
        brackets.push_back({b[0].get<Index>() - 1, b[1].get<Index>() - 1,
                            io_detail::vector_from(b[2], static_cast<Index>(dim))});
      }
    }
    p.algebra = LieAlgebra::from_brackets(static_cast<Index>(dim), brackets);

    if (doc.contains("representation")) {
      const json& r = doc.at("representation");
      const auto d = io_detail::field(r, "space_dim").get<long long>();
      if (d < 1) throw input_error("space_dim must be positive");
      const json& mats = io_detail::field(r, "matrices");
      if (!mats.is_array() || static_cast<long long>(mats.size()) != dim)
        throw input_error("representation needs one matrix per algebra basis vector");
      std::vector<Matrix> ms;
      for (const auto& m : mats) ms.push_back(io_detail::matrix_from(m, static_cast<Index>(d)));
      p.representation = make_representation(p.algebra, std::move(ms));
    }

    if (doc.contains("subalgebras")) {
      for (const auto& s : doc.at("subalgebras")) {
        NamedSubalgebra ns;
        ns.name = s.value("name", std::string("E") + std::to_string(p.subalgebras.size() + 1));
        const json& basis = io_detail::field(s, "basis");
        if (!basis.is_array() || basis.empty()) throw input_error("subalgebra basis must be a nonempty list");
        ns.spanning = Matrix(dim, static_cast<Index>(basis.size()));
        for (std::size_t c = 0; c < basis.size(); ++c)
          ns.spanning.col(static_cast<Index>(c)) = io_detail::vector_from(basis[c], static_cast<Index>(dim));
        p.subalgebras.push_back(std::move(ns));
      }
    }

    if (doc.contains("tolerance")) {
      Tolerance t;
      const json& tj = doc.at("tolerance");
      if (tj.contains("rank_eps")) t.rank_eps = tj.at("rank_eps").get<double>();
      if (tj.contains("match_eps")) t.match_eps = tj.at("match_eps").get<double>();
      t.check();
      p.tolerance = t;
    }
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed problem file: ") + e.what());
  }
  return p;
}

inline Problem parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("not valid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

inline json serialize_problem(const Problem& p) {
  const Index n = p.algebra.dim();
  json brackets = json::array();
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Vector c(n);
      for (Index k = 0; k < n; ++k) c(k) = p.algebra.c(i, j, k);
      if (c.isZero(0.0)) continue;
      json cj = json::array();
      for (Index k = 0; k < n; ++k) cj.push_back(json::array({c(k).real(), c(k).imag()}));
      brackets.push_back(json::array({i + 1, j + 1, cj}));
    }
  json doc = {{"algebra", {{"dim", n}, {"brackets", brackets}}}};
  auto raw = [](const Matrix& m) {
    json rows = json::array();
    for (Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Index j = 0; j < m.cols(); ++j) row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
      rows.push_back(row);
    }
    return rows;
  };
  if (p.representation) {
    json mats = json::array();
    for (const auto& m : p.representation->mats) mats.push_back(raw(m));
    doc["representation"] = {{"space_dim", p.representation->space_dim}, {"matrices", mats}};
  }
  if (!p.subalgebras.empty()) {
    json subs = json::array();
    for (const auto& s : p.subalgebras) subs.push_back({{"name", s.name}, {"basis", raw(s.spanning.transpose())}});
    doc["subalgebras"] = subs;
  }
  if (p.tolerance) doc["tolerance"] = to_json(*p.tolerance);
  return doc;
}

inline std::uint64_t problem_digest(const Problem& p) {
  const std::string text = serialize_problem(p).dump();
  Fnv1a h;
  h.bytes(text.data(), text.size());
  return h.value();
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// ---------------------------------------------------------------------------
// Result pieces

inline json to_json(const AlgebraReport& r) {
  return {{"antisymmetry_residual", r.antisymmetry_residual},
          {"jacobi_residual", r.jacobi_residual},
          {"threshold", r.threshold},
          {"antisymmetric", r.antisymmetric},
          {"jacobi", r.jacobi},
          {"solvable", r.solvable},
          {"nilpotent", r.nilpotent},
          {"passed", r.passed()}};
}

inline json to_json(const RepReport& r) {
  return {{"homomorphism_residual", r.homomorphism_residual},
          {"threshold", r.threshold},
          {"passed", r.passed()}};
}

inline json to_json(const CartanDecomposition& cd, const Tolerance& tol) {
  const Matrix hrows = echelon_rows(cd.h.basis, tol);
  // roots evaluated on the echelon basis of H
  const Matrix coeff = cd.h.basis.basis().adjoint() * hrows.transpose();  // r x r
  json roots = json::array();
  for (const auto& root : cd.roots) {
    const Vector on_rows = coeff.transpose() * root.alpha;
    roots.push_back({{"alpha", to_json(on_rows)},
                     {"dim", root.space.dim()},
                     {"space", rows_to_json(echelon_rows(root.space, tol))}});
  }
  return {{"h", rows_to_json(hrows)},
          {"h_dim", cd.h_dim()},
          {"roots", roots},
          {"h_star", rows_to_json(echelon_rows(cd.h_star, tol))},
          {"h_star_dim", cd.h_star.dim()}};
}

inline json to_json(const SpectrumSet& s, const Tolerance& tol) {
  json pts = json::array();
  for (const auto& p : s.points) {
    json pj = {{"coords", to_json(p.coords)},
               {"is_character", p.is_character},
               {"multiplicity", p.multiplicity}};
    if (p.profile) pj["homology"] = p.profile->dims;
    if (p.witness) pj["witness"] = to_json(*p.witness);
    pts.push_back(std::move(pj));
  }
  json out = {{"kind", s.kind.label()},
              {"points", pts},
              {"cartan_basis", rows_to_json(echelon_rows(s.cartan_basis, tol))}};
  if (!s.reason.empty()) out["reason"] = s.reason;
  return out;
}

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::equal: return "equal";
    case Relation::subset: return "subset";
    case Relation::bound: return "bound";
  }
  return "?";
}

inline json to_json(const CheckReport& r) {
  json as = json::array();
  for (const auto& a : r.assertions) {
    json aj = {{"label", a.label},
               {"relation", relation_name(a.relation)},
               {"value", a.value},
               {"limit", a.limit},
               {"passed", a.passed}};
    if (a.relation != Relation::bound) {
      json l = json::array(), rr = json::array();
      for (const auto& v : a.lhs) l.push_back(to_json(v));
      for (const auto& v : a.rhs) rr.push_back(to_json(v));
      aj["lhs"] = l;
      aj["rhs"] = rr;
    }
    as.push_back(std::move(aj));
  }
  json out = {{"check", r.check},
              {"inputs_digest", hex64(r.inputs_digest)},
              {"distance", r.distance},
              {"passed", r.passed},
              {"rejected", r.rejected},
              {"assertions", as}};
  if (r.seed) out["seed"] = *r.seed;
  if (r.case_index) out["case"] = *r.case_index;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

/// Envelope shared by every command's output.
inline json result_document(const std::string& command, const json& request,
                            std::optional<std::uint64_t> input_digest, const Tolerance& tol,
                            std::optional<std::uint64_t> seed, json result) {
  json doc = {{"tool", "jointspec"}, {"version", kToolVersion}, {"command", command},
              {"request", request}, {"tolerance", to_json(tol)}, {"result", std::move(result)}};
  if (input_digest) doc["input_digest"] = hex64(*input_digest);
  if (seed) doc["seed"] = *seed;
  return doc;
}

inline json error_object(int code, const std::string& kind, const std::string& message,
                         json details = nullptr) {
  json e = {{"error", {{"code", code}, {"kind", kind}, {"message", message}}}};
  if (!details.is_null()) e["error"]["details"] = std::move(details);
  return e;
}

}  // namespace jointspec
