// jointspec command line: validate, cartan, spectrum, verify, fuzz.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jointspec/jointspec.hpp"

using namespace jointspec;

namespace {

enum Exit { kOk = 0, kInput = 1, kNumerical = 2 };

struct Common {
  std::optional<double> rank_eps, match_eps;
  std::uint64_t seed = 1;
};

Problem load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

// file tolerance, then flags
Tolerance effective(const Problem& p, const Common& c) {
  Tolerance t = p.tolerance.value_or(Tolerance{});
  if (c.rank_eps) t.rank_eps = *c.rank_eps;
  if (c.match_eps) t.match_eps = *c.match_eps;
  t.check();
  return t;
}

Tolerance effective(const Common& c) { return effective(Problem{}, c); }

const Representation& need_rep(const Problem& p) {
  if (!p.representation) throw input_error("problem file has no representation block");
  return *p.representation;
}

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

int fail(int code, const std::string& kind, const std::string& msg, json details = nullptr) {
  std::cerr << error_object(code, kind, msg, std::move(details)).dump() << '\n';
  return code;
}

json validation_details(const Problem& p, const Tolerance& tol) {
  json d = {{"algebra", to_json(validate(p.algebra, tol))}};
  if (p.representation) {
    try {
      d["representation"] = to_json(validate_rep(*p.representation, tol));
    } catch (const input_error& e) {
      d["representation"] = {{"error", e.what()}};
    }
  }
  return d;
}

bool valid(const Problem& p, const Tolerance& tol) {
  if (!validate(p.algebra, tol).passed()) return false;
  return !p.representation || validate_rep(*p.representation, tol).passed();
}

SubalgebraBasis named_subalgebra(const Problem& p, const std::string& name, const Tolerance& tol) {
  for (const auto& s : p.subalgebras)
    if (s.name == name) return make_subalgebra(p.algebra, s.spanning, tol);
  throw input_error("no subalgebra named '" + name + "'");
}

SpectrumKind parse_kind(const std::string& kind, std::optional<Index> k, const std::string& side) {
  const Family fam = side == "pi" ? Family::pi : Family::delta;
  auto level = [&] {
    if (!k) throw input_error("--k is required for kind " + kind);
    return *k;
  };
  if (kind == "taylor") return {Base::cartan, Family::taylor, 0};
  if (kind == "slodkowski") return {Base::cartan, fam, level()};
  if (kind == "split") return k ? SpectrumKind{Base::split, fam, *k} : SpectrumKind{Base::split, Family::taylor, 0};
  if (kind == "essential_taylor") return {Base::essential, Family::taylor, 0};
  if (kind == "essential_slodkowski") return {Base::essential, fam, level()};
  if (kind == "essential_split")
    return k ? SpectrumKind{Base::essential_split, fam, *k} : SpectrumKind{Base::essential_split, Family::taylor, 0};
  throw input_error("unknown spectrum kind '" + kind + "'");
}

json summarize(const std::vector<CheckReport>& reports) {
  json list = json::array();
  std::size_t passed = 0, failed = 0, rejected = 0;
  for (const auto& r : reports) {
    list.push_back(to_json(r));
    if (r.rejected) ++rejected;
    else if (r.passed) ++passed;
    else ++failed;
  }
  return {{"reports", list},
          {"summary", {{"passed", passed}, {"failed", failed}, {"rejected", rejected},
                       {"all_passed", failed == 0}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint spectra of representations of solvable Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--rank-eps", common.rank_eps, "relative rank threshold");
  app.add_option("--match-eps", common.match_eps, "eigenvalue / set matching threshold");
  app.add_option("--seed", common.seed, "seed for Cartan search and fuzzing");

  std::string path, with_path, kind = "taylor", side = "delta", check = "all", subalgebra;
  std::optional<Index> level;
  std::vector<std::uint64_t> seeds;
  Index count = 10, max_alg = 3, max_space = 4, cap = kDefaultDimCap;
  bool nilpotent = false;

  auto* validate_cmd = app.add_subcommand("validate", "check structure constants and the homomorphism law");
  validate_cmd->add_option("file", path)->required();

  auto* cartan_cmd = app.add_subcommand("cartan", "Cartan subalgebra and root decomposition");
  cartan_cmd->add_option("file", path)->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "compute a joint spectrum");
  spectrum_cmd->add_option("file", path)->required();
  spectrum_cmd->add_option("--kind", kind)
      ->check(CLI::IsMember({"taylor", "slodkowski", "split", "essential_taylor", "essential_slodkowski",
                             "essential_split", "common_eigenvector"}));
  spectrum_cmd->add_option("--k", level, "Slodkowski level");
  spectrum_cmd->add_option("--side", side)->check(CLI::IsMember({"delta", "pi"}));
  spectrum_cmd->add_option("--cap", cap, "dimension cap for derived representations");

  auto* verify_cmd = app.add_subcommand("verify", "check spectral identities on a problem");
  verify_cmd->add_option("file", path)->required();
  verify_cmd->add_option("--check", check)
      ->check(CLI::IsMember({"all", "common_eigenvector", "duality", "split", "projection", "independence",
                             "tensor", "multiplication", "nilpotent", "structure"}));
  verify_cmd->add_option("--with", with_path, "second problem for tensor / multiplication");
  verify_cmd->add_option("--subalgebra", subalgebra, "named subalgebra for projection");
  verify_cmd->add_option("--seeds", seeds, "Cartan search seeds for independence")->delimiter(',');
  verify_cmd->add_option("--cap", cap, "dimension cap for derived representations");

  auto* fuzz_cmd = app.add_subcommand("fuzz", "run every checker on random instances");
  fuzz_cmd->add_option("--count", count)->check(CLI::NonNegativeNumber);
  fuzz_cmd->add_option("--max-algebra-dim", max_alg)->check(CLI::Range(1, 6));
  fuzz_cmd->add_option("--max-space-dim", max_space)->check(CLI::Range(1, 8));
  fuzz_cmd->add_flag("--nilpotent", nilpotent);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail(kInput, "usage", e.what());
  }

  try {
    if (*fuzz_cmd) {
      const Tolerance tol = effective(common);
      FuzzConfig cfg;
      cfg.max_algebra_dim = max_alg;
      cfg.max_space_dim = max_space;
      cfg.nilpotent = nilpotent;
      CheckOptions opt{tol, common.seed, kDefaultDimCap};
      const auto reports = fuzz(common.seed, count, cfg, opt);
      const json request = {{"count", count}, {"max_algebra_dim", max_alg},
                            {"max_space_dim", max_space}, {"nilpotent", nilpotent}};
      emit(result_document("fuzz", request, std::nullopt, tol, common.seed, summarize(reports)));
      return kOk;
    }

    const Problem p = load(path);
    const Tolerance tol = effective(p, common);
    const auto digest = problem_digest(p);

    if (*validate_cmd) {
      const json details = validation_details(p, tol);
      const bool ok = valid(p, tol);
      emit(result_document("validate", json::object(), digest, tol, std::nullopt,
                           {{"valid", ok}, {"details", details}}));
      return ok ? kOk : fail(kInput, "validation", "input failed validation", details);
    }

    if (!valid(p, tol)) return fail(kInput, "validation", "input failed validation", validation_details(p, tol));

    if (*cartan_cmd) {
      const auto cd = cartan_decomposition(p.algebra, common.seed, tol);
      emit(result_document("cartan", json::object(), digest, tol, common.seed, to_json(cd, tol)));
      return kOk;
    }

    if (*spectrum_cmd) {
      const Representation& r = need_rep(p);
      const auto cd = cartan_decomposition(p.algebra, common.seed, tol);
      json request = {{"kind", kind}, {"side", side}};
      if (level) request["k"] = *level;
      const SpectrumSet s = kind == "common_eigenvector"
                                ? common_eigenvector_spectrum(r, cd, tol)
                                : compute_spectrum(r, cd, parse_kind(kind, level, side), tol, cap);
      emit(result_document("spectrum", request, digest, tol, common.seed, to_json(s, tol)));
      return kOk;
    }

    if (*verify_cmd) {
      const Representation& r = need_rep(p);
      CheckOptions opt{tol, common.seed, cap};
      std::optional<Problem> other;
      if (!with_path.empty()) {
        other = load(with_path);
        if (!valid(*other, tol))
          return fail(kInput, "validation", "second input failed validation", validation_details(*other, tol));
        need_rep(*other);
      }
      auto wants = [&](const char* name) { return check == "all" || check == name; };
      std::vector<CheckReport> reports;
      if (wants("common_eigenvector")) reports.push_back(check_common_eigenvector(r, opt));
      if (wants("structure")) reports.push_back(check_structure(r, opt));
      if (wants("duality")) reports.push_back(check_duality(r, opt));
      if (wants("split")) reports.push_back(check_split_identity(r, opt));
      if (wants("independence")) {
        std::vector<std::uint64_t> s = seeds;
        if (s.empty()) s = {common.seed, common.seed + 1, common.seed + 2};
        if (s.size() < 2) throw input_error("--seeds needs at least two seeds");
        reports.push_back(check_cartan_independence(r, s, opt));
      }
      if (wants("projection")) {
        std::vector<SubalgebraBasis> subs;
        if (!subalgebra.empty()) subs.push_back(named_subalgebra(p, subalgebra, tol));
        else if (!p.subalgebras.empty())
          for (const auto& s : p.subalgebras) subs.push_back(make_subalgebra(p.algebra, s.spanning, tol));
        else subs = probe_subalgebras(p.algebra, common.seed, tol);
        for (const auto& s : subs) reports.push_back(check_projection(r, s, opt));
      }
      if (wants("nilpotent") && (check == "nilpotent" || is_nilpotent(p.algebra, tol)))
        reports.push_back(check_nilpotent_coincidence(r, opt));
      if (wants("tensor") || wants("multiplication")) {
        if (!other && check != "all") throw input_error("--with is required for " + check);
        if (other) {
          if (wants("tensor")) reports.push_back(check_tensor_formula(r, *other->representation, opt));
          if (wants("multiplication"))
            reports.push_back(check_multiplication_formula(r, *other->representation, opt));
        }
      }
      json request = {{"check", check}};
      if (!with_path.empty()) request["with_digest"] = hex64(problem_digest(*other));
      if (!subalgebra.empty()) request["subalgebra"] = subalgebra;
      if (!seeds.empty()) request["seeds"] = seeds;
      emit(result_document("verify", request, digest, tol, common.seed, summarize(reports)));
      return kOk;
    }
  } catch (const input_error& e) {
    return fail(kInput, "input", e.what());
  } catch (const numerical_failure& e) {
    return fail(kNumerical, "numerical", e.what());
  }
  return kOk;
}
