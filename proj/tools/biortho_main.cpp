// biortho: construct and verify classical orthogonal polynomial families
// in two variables through the matrix Rodrigues formula.
//
// Subcommands: generate, verify, kron, moments, family list.
// Exit codes: 0 all checks pass, 2 math-level failure, 3 configuration
// error, 4 internal error. Output is deterministic: identical invocations
// produce byte-identical files.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biortho/catalog.hpp"
#include "biortho/json_io.hpp"
#include "biortho/latex.hpp"

namespace {

using namespace biortho;

constexpr int kExitOk = 0;
constexpr int kExitMathFailure = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInternal = 4;

struct CommonOpts {
  std::string family;
  std::string family_file;
  std::map<std::string, std::string> param_flags;  // raw strings, parsed exactly
  std::string form = "auto";
  std::string format;
  std::string out;
};

void add_family_options(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--family", o.family, "catalog family name (see `family list`)");
  cmd->add_option("--family-file", o.family_file, "path to a family JSON document");
  for (const char* p : {"mu", "alpha", "beta", "gamma"})
    cmd->add_option("--" + std::string(p), o.param_flags[p],
                    std::string("family parameter ") + p + " as an exact rational p/q");
}

FamilySpec load_family(const CommonOpts& o) {
  if (!o.family.empty() && !o.family_file.empty())
    throw ParameterError("--family and --family-file are mutually exclusive");
  if (o.family.empty() && o.family_file.empty())
    throw ParameterError("one of --family or --family-file is required");
  if (!o.family_file.empty()) {
    for (const auto& [k, v] : o.param_flags)
      if (!v.empty())
        throw ParameterError("--" + k + " does not apply to --family-file documents");
    std::ifstream in(o.family_file);
    if (!in) throw ParameterError("cannot open family file: " + o.family_file);
    json j = json::parse(in, nullptr, true, true);
    return family_from_json(j);
  }
  std::map<std::string, Rational> params;
  for (const auto& [k, v] : o.param_flags)
    if (!v.empty()) params[k] = parse_rational(v);
  return catalog_load(o.family, params);
}

Form parse_form(const std::string& s) {
  if (s == "auto") return Form::automatic;
  if (s == "original") return Form::original;
  if (s == "diagonal") return Form::diagonal;
  throw ParameterError("--form must be auto, original, or diagonal");
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write output file: " + out);
  f << text;
}

int cmd_generate(const CommonOpts& o, int degree, int cap_override) {
  if (degree < 0) throw ParameterError("--degree must be >= 0");
  FamilySpec fam = load_family(o);
  ResolvedForm form = resolve_form(fam, parse_form(o.form));
  (void)cap_override;
  if (!form.compat_solvable)
    std::cerr << "warning: the divergence compatibility condition has no solution for the " << form_name(form.which)
              << " form of " << fam.name
              << "; the construction may fail or lose orthogonality\n";
  KronCache cache(form.phi);
  std::vector<RodriguesVector> qs;
  for (int n = 0; n <= degree; ++n) qs.push_back(build_Q(form, n, &cache));

  const std::string format = o.format.empty() ? "text" : o.format;
  if (format == "json") {
    json j;
    j["family"] = fam.name;
    json params = json::object();
    for (const auto& [k, v] : fam.params) params[k] = to_string(v);
    j["params"] = params;
    j["form_used"] = form_name(form.which);
    json degrees = json::array();
    for (const auto& q : qs) {
      json entry;
      entry["n"] = q.n;
      json list = json::array();
      for (const auto& p : q.entries) list.push_back(to_json(p));
      entry["q"] = list;
      degrees.push_back(entry);
    }
    j["degrees"] = degrees;
    write_output(o.out, j.dump(2) + "\n");
  } else if (format == "latex") {
    write_output(o.out, latex_q_table(qs));
  } else if (format == "text") {
    std::string text;
    for (const auto& q : qs) {
      text += "Q_" + std::to_string(q.n) + "^t = (";
      for (size_t i = 0; i < q.entries.size(); ++i) {
        if (i) text += ", ";
        text += q.entries[i].to_string();
      }
      text += ")\n";
    }
    write_output(o.out, text);
  } else {
    throw ParameterError("--format must be json, latex, or text");
  }
  return kExitOk;
}

int cmd_verify(const CommonOpts& o, int degree, int cap_override) {
  if (degree < 0) throw ParameterError("--degree must be >= 0");
  FamilySpec fam = load_family(o);
  VerifyOptions opt;
  opt.max_degree = degree;
  opt.form = parse_form(o.form);
  if (cap_override > 0) {
    if (cap_override < 2 * degree)
      throw ParameterError("--cap must be at least 2*degree for verification");
    opt.cap = cap_override;
  }
  VerificationReport rep = run_verification(fam, opt);

  const std::string format = o.format.empty() ? "json" : o.format;
  if (format == "json") {
    write_output(o.out, to_json(rep).dump(2) + "\n");
  } else if (format == "text") {
    std::string text = "family " + rep.family + " (form " + form_name(rep.form_used) + ")\n";
    auto flag = [&](const std::string& name, bool v) {
      text += "  " + name + ": " + (v ? "pass" : "FAIL") + "\n";
    };
    if (rep.symmetry_original.checked) flag("symmetry factor", rep.symmetry_original.pass);
    if (rep.symmetrizable) flag("symmetrizable", *rep.symmetrizable);
    text += "  compatibility(original): " + std::string(rep.compat_original ? "solvable" : "no solution") + "\n";
    if (rep.compat_diagonal)
      text += "  compatibility(diagonal): " + std::string(*rep.compat_diagonal ? "solvable" : "no solution") + "\n";
    flag("det<u,Phi> != 0", rep.phi_moment_nonsingular);
    flag("moment matrices nonsingular", rep.quasi.all_nonsingular);
    for (const auto& s : rep.degrees)
      text += "  degree " + std::to_string(s.n) + ": " + (s.pass ? "pass" : "FAIL") + "\n";
    text += rep.all_pass ? "ALL PASS\n" : "FAILURES PRESENT\n";
    write_output(o.out, text);
  } else {
    throw ParameterError("--format must be json or text for verify");
  }
  return rep.all_pass ? kExitOk : kExitMathFailure;
}

int cmd_kron(const std::string& matrix_text, int n, const std::string& variant,
             const std::string& out) {
  if (n < 0) throw ParameterError("--n must be >= 0");
  json jm = json::parse(matrix_text, nullptr, true, true);
  PolyMatrix a = matrix_from_nested_json(jm);
  PolyMatrix result(1, 1);
  if (variant == "explicit")
    result = kron_power_explicit(a, n);
  else if (variant == "rec1")
    result = kron_power_recurrence(a, n, KronVariant::recurrence_i);
  else if (variant == "rec2")
    result = kron_power_recurrence(a, n, KronVariant::recurrence_ii);
  else
    throw ParameterError("--variant must be explicit, rec1, or rec2");
  write_output(out, to_json(result).dump(2) + "\n");
  return kExitOk;
}

int cmd_moments(const CommonOpts& o, int cap) {
  if (cap < 0) throw ParameterError("--cap must be >= 0");
  FamilySpec fam = load_family(o);
  MomentFunctional u = moments_from_pearson(fam, cap);
  write_output(o.out, to_json(u).dump(2) + "\n");
  return kExitOk;
}

int cmd_family_list(const std::string& format, const std::string& out) {
  if (format == "json") {
    json list = json::array();
    for (const auto& info : catalog_list()) {
      json entry;
      entry["name"] = info.name;
      entry["description"] = info.description;
      json params = json::array();
      for (const auto& p : info.params)
        params.push_back(json{{"name", p.name}, {"domain", p.domain},
                              {"default", to_string(p.def)}});
      entry["params"] = params;
      entry["weight_route"] = info.weight_route;
      entry["document"] = to_json(catalog_load(info.name));
      list.push_back(entry);
    }
    write_output(out, list.dump(2) + "\n");
  } else {
    std::string text;
    for (const auto& info : catalog_list()) {
      text += info.name;
      if (!info.params.empty()) {
        text += " (";
        for (size_t i = 0; i < info.params.size(); ++i) {
          if (i) text += ", ";
          text += info.params[i].name + ": " + info.params[i].domain +
                  ", default " + to_string(info.params[i].def);
        }
        text += ")";
      }
      if (!info.weight_route) text += " [moment route only]";
      text += "\n    " + info.description + "\n";
    }
    write_output(out, text);
  }
  return kExitOk;
}

json error_json(const std::string& type, const std::string& message) {
  return json{{"error", {{"type", type}, {"message", message}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact construction and verification of bivariate classical "
               "orthogonal polynomials via the matrix Rodrigues formula"};
  app.require_subcommand(1);

  CommonOpts gen_opts, ver_opts, mom_opts;
  int gen_degree = 0, ver_degree = 8, gen_cap = 0, ver_cap = 0, mom_cap = 8;
  int kron_n = 0;
  std::string kron_matrix, kron_variant = "rec1", kron_out;
  std::string list_format = "text", list_out;

  CLI::App* gen = app.add_subcommand("generate", "emit Q_0..Q_N for a family");
  add_family_options(gen, gen_opts);
  gen->add_option("--degree", gen_degree, "highest degree N")->required();
  gen->add_option("--form", gen_opts.form, "auto|original|diagonal");
  gen->add_option("--format", gen_opts.format, "json|latex|text (default text)");
  gen->add_option("--out", gen_opts.out, "output path (default stdout)");
  gen->add_option("--cap", gen_cap, "unused for generation; accepted for uniformity");

  CLI::App* ver = app.add_subcommand("verify", "run the full verification suite");
  add_family_options(ver, ver_opts);
  ver->add_option("--degree", ver_degree, "highest degree N (default 8)");
  ver->add_option("--cap", ver_cap, "moment cap override (>= 2N)");
  ver->add_option("--form", ver_opts.form, "auto|original|diagonal");
  ver->add_option("--format", ver_opts.format, "json|text (default json)");
  ver->add_option("--out", ver_opts.out, "output path (default stdout)");

  CLI::App* kron = app.add_subcommand("kron", "second-kind Kronecker power of a 2x2 matrix");
  kron->add_option("--n", kron_n, "power")->required();
  kron->add_option("--matrix", kron_matrix,
                   "2x2 matrix as JSON, e.g. \"[[1,2],[3,4]]\"; entries may be "
                   "integers, \"p/q\" strings, or polynomial objects")
      ->required();
  kron->add_option("--variant", kron_variant, "explicit|rec1|rec2 (default rec1)");
  kron->add_option("--out", kron_out, "output path (default stdout)");

  CLI::App* mom = app.add_subcommand("moments", "moment table from the Pearson equation");
  add_family_options(mom, mom_opts);
  mom->add_option("--cap", mom_cap, "highest total degree of tabulated moments")->required();
  mom->add_option("--out", mom_opts.out, "output path (default stdout)");

  CLI::App* fam = app.add_subcommand("family", "catalog inspection");
  CLI::App* fam_list = fam->add_subcommand("list", "enumerate built-in families");
  fam_list->add_option("--format", list_format, "text|json (default text)");
  fam_list->add_option("--out", list_out, "output path (default stdout)");
  fam->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_opts, gen_degree, gen_cap);
    if (ver->parsed()) return cmd_verify(ver_opts, ver_degree, ver_cap);
    if (kron->parsed()) return cmd_kron(kron_matrix, kron_n, kron_variant, kron_out);
    if (mom->parsed()) return cmd_moments(mom_opts, mom_cap);
    if (fam->parsed() && fam_list->parsed()) return cmd_family_list(list_format, list_out);
    std::cerr << error_json("config", "no subcommand").dump() << "\n";
    return kExitConfig;
  } catch (const UnknownFamilyError& e) {
    std::cerr << error_json("unknown-family", e.what()).dump() << "\n";
    return kExitConfig;
  } catch (const ParameterError& e) {
    std::cerr << error_json("parameter", e.what()).dump() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    std::cerr << error_json("parse", e.what()).dump() << "\n";
    return kExitConfig;
  } catch (const json::exception& e) {
    std::cerr << error_json("parse", e.what()).dump() << "\n";
    return kExitConfig;
  } catch (const NotDivisibleError& e) {
    std::cerr << error_json("not-divisible", e.what()).dump() << "\n";
    return kExitMathFailure;
  } catch (const PearsonInconsistentError& e) {
    std::cerr << error_json("pearson-inconsistent", e.what()).dump() << "\n";
    return kExitMathFailure;
  } catch (const PearsonUnderdeterminedError& e) {
    std::cerr << error_json("pearson-underdetermined", e.what()).dump() << "\n";
    return kExitMathFailure;
  } catch (const WeightRouteError& e) {
    std::cerr << error_json("weight-route", e.what()).dump() << "\n";
    return kExitMathFailure;
  } catch (const MomentCapError& e) {
    std::cerr << error_json("moment-cap", e.what()).dump() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << error_json("internal", e.what()).dump() << "\n";
    return kExitInternal;
  }
}
