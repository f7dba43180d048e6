#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "metriclie/catalog.hpp"
#include "metriclie/curvature.hpp"
#include "metriclie/geodesic_orbit.hpp"
#include "metriclie/killing_length.hpp"
#include "metriclie/model_io.hpp"
#include "metriclie/report.hpp"
#include "metriclie/version.hpp"

namespace {

using namespace metriclie;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct CommonFlags {
  std::optional<double> eps_struct;
  std::optional<double> eps_rank;
  std::optional<double> eps_len;
  std::uint64_t seed = 42;
  bool seed_from_flag = false;
  int probes = 200;
  int orbit_words = 100;
  bool force = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--eps-struct", flags.eps_struct, "Axiom residual tolerance");
  cmd->add_option("--eps-rank", flags.eps_rank, "Rank/feasibility tolerance");
  cmd->add_option("--eps-len", flags.eps_len, "Length-constancy tolerance");
  cmd->add_option("--seed", flags.seed, "Random seed for probe/orbit plans")
      ->each([&flags](const std::string&) { flags.seed_from_flag = true; });
  cmd->add_option("--probes", flags.probes, "Random probe count for the go survey");
  cmd->add_option("--orbit-words", flags.orbit_words,
                  "Random orbit word count for length profiles");
  cmd->add_flag("--force", flags.force,
                "Downgrade validation errors to warnings and continue");
}

std::uint64_t resolve_seed(const CommonFlags& flags) {
  if (flags.seed_from_flag) return flags.seed;
  if (const char* env = std::getenv("METRICLIE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("METRICLIE_SEED is not an integer");
    }
  }
  return flags.seed;
}

AnalysisOptions make_options(const CommonFlags& flags) {
  AnalysisOptions opt;
  opt.eps_struct = flags.eps_struct;
  opt.eps_rank = flags.eps_rank;
  opt.eps_len = flags.eps_len;
  opt.seed = resolve_seed(flags);
  opt.probe_random_count = flags.probes;
  opt.orbit_random_words = flags.orbit_words;
  opt.force = flags.force;
  return opt;
}

BuiltModel load_built(const std::string& path, const CommonFlags& flags) {
  const ModelDocument doc = load_model_document(path);
  return build_from_document(doc, flags.eps_struct, flags.eps_rank, flags.eps_len,
                             flags.force);
}

Vec parse_comma_vector(const std::string& text, int expected, const char* what) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string("invalid ") + what + " component '" + item + "'");
    }
  }
  if (expected >= 0 && static_cast<int>(values.size()) != expected) {
    throw InputError(std::string(what) + " needs " + std::to_string(expected) +
                     " components, got " + std::to_string(values.size()));
  }
  Vec v(static_cast<int>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) v[static_cast<int>(i)] = values[i];
  return v;
}

void print_vec(std::ostream& os, const Vec& v) {
  os << "[";
  for (int i = 0; i < v.size(); ++i) {
    if (i > 0) os << ", ";
    os << v[i];
  }
  os << "]";
}

const NamedSubspace* find_named(const BuiltModel& built, const std::string& name) {
  for (const auto& s : built.subspaces) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

int cmd_validate(const std::string& path, const CommonFlags& flags) {
  try {
    const BuiltModel built = load_built(path, flags);
    std::cout << "model " << built.model.name() << ": "
              << (built.model.validation().ok() ? "valid" : "INVALID (forced)") << "\n"
              << built.model.validation().describe();
    return built.model.validation().ok() ? kExitOk : kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitInput;
  }
}

int cmd_analyze(const std::string& path, const CommonFlags& flags,
                const std::string& json_path) {
  const ModelDocument doc = load_model_document(path);
  const AnalysisReport report = run_analysis(doc, make_options(flags));
  std::cout << report_summary(report);
  if (!json_path.empty()) {
    const std::string rendered = report_to_json(report);
    if (json_path == "-") {
      std::cout << rendered;
    } else {
      std::ofstream out(json_path, std::ios::binary);
      if (!out) throw InputError("cannot open '" + json_path + "' for writing");
      out << rendered;
    }
  }
  return kExitOk;
}

int cmd_go_check(const std::string& path, const CommonFlags& flags,
                 const std::string& direction) {
  const BuiltModel built = load_built(path, flags);
  const HomogeneousModel& model = built.model;
  if (!direction.empty()) {
    const Vec xm = parse_comma_vector(direction, model.dim_m(), "direction");
    const GoCertificate cert = go_certificate(model, xm);
    std::cout << "direction ";
    print_vec(std::cout, cert.direction);
    std::cout << "\n"
              << (cert.feasible ? "feasible" : "infeasible") << ", residual "
              << cert.residual << " (tolerance " << cert.tolerance << ")\n";
    if (model.dim_isotropy() > 0 && cert.feasible) {
      std::cout << "H_X = ";
      print_vec(std::cout, cert.h_solution);
      std::cout << "\n";
    }
    if (!cert.feasible && cert.witness_index >= 0) {
      std::cout << "witness Y = ";
      print_vec(std::cout, cert.witness);
      std::cout << ", ([H+X,Y]_m, X) = " << cert.witness_value << "\n";
    }
    return kExitOk;
  }
  ProbePlan plan;
  plan.random_count = flags.probes;
  plan.seed = resolve_seed(flags);
  const GoSurvey survey = go_survey(model, plan);
  std::cout << "go survey: " << to_string(survey.verdict) << " ("
            << survey.certificates.size() << " probes, " << plan.describe() << ")\n";
  if (survey.first_infeasible >= 0) {
    const auto& cert = survey.certificates[survey.first_infeasible];
    std::cout << "first infeasible direction ";
    print_vec(std::cout, cert.direction);
    std::cout << ", residual " << cert.residual << "\n";
  }
  return kExitOk;
}

int cmd_ricci(const std::string& path, const CommonFlags& flags,
              const std::string& direction) {
  const BuiltModel built = load_built(path, flags);
  const HomogeneousModel& model = built.model;
  if (!direction.empty()) {
    const Vec xm = parse_comma_vector(direction, model.dim_m(), "direction");
    const RicciResult res = ricci(model, xm);
    std::cout << "Ric(X,X) = " << res.value << "\n"
              << "  killing term     " << res.killing_term << "\n"
              << "  bracket-norm term " << res.bracket_term << "\n"
              << "  double-sum term  " << res.double_sum_term << "\n"
              << "  z term           " << res.z_term << "\n";
    return kExitOk;
  }
  const Mat ric = ricci_matrix(model);
  std::cout << "ricci matrix (m-coordinates)\n";
  for (int i = 0; i < ric.rows(); ++i) {
    std::cout << "  ";
    print_vec(std::cout, Vec(ric.row(i).transpose()));
    std::cout << "\n";
  }
  const Vec z = z_vector(model);
  std::cout << "z vector ";
  print_vec(std::cout, z);
  std::cout << "\n";
  return kExitOk;
}

int cmd_const_length(const std::string& path, const CommonFlags& flags,
                     const std::string& field) {
  const BuiltModel built = load_built(path, flags);
  const HomogeneousModel& model = built.model;
  const Vec x = parse_comma_vector(field, model.dim(), "field");
  OrbitPlan plan;
  plan.random_words = flags.orbit_words;
  plan.seed = resolve_seed(flags);
  const LengthProfile profile = length_profile(model, x, plan);
  std::cout << "field ";
  print_vec(std::cout, x);
  std::cout << "\nsquare length at origin " << model.g_norm_sq(model.m_coords(x))
            << "\nsamples " << profile.samples.size() << " (" << plan.describe()
            << ")\nspread " << profile.spread << ", max residual "
            << profile.max_residual << "\nverdict: " << to_string(profile.verdict)
            << " (constancy is relative to the sampled orbit set)\n";
  return kExitOk;
}

int cmd_theorem1(const std::string& path, const CommonFlags& flags,
                 const std::string& ideal_name) {
  const BuiltModel built = load_built(path, flags);
  const NamedSubspace* ideal = find_named(built, ideal_name);
  if (ideal == nullptr) {
    std::cerr << "no subspace named '" << ideal_name << "' in the model file\n";
    return kExitInput;
  }
  ProbePlan probe_plan;
  probe_plan.random_count = flags.probes;
  probe_plan.seed = resolve_seed(flags);
  const GoSurvey survey = go_survey(built.model, probe_plan);
  OrbitPlan plan;
  plan.random_words = flags.orbit_words;
  plan.seed = resolve_seed(flags);
  const TheoremReport report =
      verify_abelian_ideal_theorem(built.model, ideal->space, plan, survey.verdict);
  if (!report.preconditions_ok) {
    std::cout << "PRECONDITIONS NOT MET\n";
    for (const auto& f : report.precondition_failures) std::cout << "  " << f << "\n";
    return kExitOk;
  }
  std::cout << (report.pass ? "PASS" : "CONTRADICTION") << ": max spread "
            << report.max_spread << ", max residual " << report.max_residual << " over "
            << report.profiles.size() << " fields\n";
  return kExitOk;
}

int cmd_ricstar(const std::string& path, const CommonFlags& flags,
                const std::string& k_name) {
  const BuiltModel built = load_built(path, flags);
  const NamedSubspace* k = find_named(built, k_name);
  if (k == nullptr) {
    std::cerr << "no subspace named '" << k_name << "' in the model file\n";
    return kExitInput;
  }
  const RicStarContext ctx = make_ric_star_context(built.model, k->space);
  if (!ctx.ok) {
    std::cout << "PRECONDITIONS NOT MET\n";
    for (const auto& f : ctx.failures) std::cout << "  " << f << "\n";
    return kExitOk;
  }
  std::cout << "m1 dim " << ctx.m1.dim() << ", m2 dim " << ctx.m2.dim()
            << ", ad(k) skew residual on m " << ctx.k_skew_residual << "\n";
  const int d1 = ctx.m1.dim();
  double max_diff = 0.0;
  SeededRng rng(resolve_seed(flags));
  std::vector<Vec> directions;
  for (int i = 0; i < d1; ++i) {
    Vec e = Vec::Zero(d1);
    e[i] = 1.0;
    directions.push_back(e);
  }
  for (int t = 0; t < 10 && d1 > 0; ++t) directions.push_back(rng.unit_vector(d1));
  if (d1 == 0) directions.push_back(Vec::Zero(0));
  for (const Vec& x : directions) {
    const RicStarEvaluation ev = ric_star_evaluate(built.model, ctx, x);
    max_diff = std::max(max_diff, ev.difference);
    std::cout << "x = ";
    print_vec(std::cout, ev.x);
    std::cout << "  left " << ev.left << "  right " << ev.right << "  |diff| "
              << ev.difference << "\n";
  }
  std::cout << "max |left-right| = " << max_diff << "\n";
  return kExitOk;
}

int cmd_catalog_list() {
  for (const auto& entry : catalog_entries()) {
    std::cout << entry.name << "  (dim " << entry.model.dim() << " = "
              << entry.model.dim_isotropy() << " + " << entry.model.dim_m()
              << ", expected go " << to_string(entry.expected.go_verdict) << ")\n";
  }
  return kExitOk;
}

int cmd_catalog_emit(const std::string& name, const std::string& out_path) {
  for (const auto& entry : catalog_entries()) {
    if (entry.name != name) continue;
    const std::string text = emit_model_document(document_from_entry(entry));
    if (out_path.empty() || out_path == "-") {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw InputError("cannot open '" + out_path + "' for writing");
      out << text;
    }
    return kExitOk;
  }
  std::cerr << "unknown catalog entry '" << name << "' (see: metriclie catalog list)\n";
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"metriclie - homogeneous Riemannian models from Lie data: "
               "geodesic-orbit feasibility, Ricci curvature, Killing field "
               "length analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("metriclie ") + kVersion);

  CommonFlags flags;
  std::string path;
  std::string json_path;
  std::string direction;
  std::string field;
  std::string ideal_name;
  std::string k_name;
  std::string catalog_name;
  std::string out_path;

  auto* validate = app.add_subcommand("validate", "Parse and validate a model file");
  validate->add_option("file", path, "Model file")->required();
  add_common_flags(validate, flags);

  auto* analyze = app.add_subcommand("analyze", "Run the full analysis report");
  analyze->add_option("file", path, "Model file")->required();
  analyze->add_option("--json", json_path, "Write the JSON report to this path");
  add_common_flags(analyze, flags);

  auto* go_check = app.add_subcommand("go-check", "Geodesic-vector feasibility");
  go_check->add_option("file", path, "Model file")->required();
  go_check->add_option("--direction", direction,
                       "Comma-separated m-coordinates of one direction");
  add_common_flags(go_check, flags);

  auto* ricci_cmd = app.add_subcommand("ricci", "Ricci curvature");
  ricci_cmd->add_option("file", path, "Model file")->required();
  ricci_cmd->add_option("--direction", direction,
                        "Comma-separated m-coordinates of one direction");
  add_common_flags(ricci_cmd, flags);

  auto* constlen = app.add_subcommand("const-length", "Killing field length profile");
  constlen->add_option("file", path, "Model file")->required();
  constlen->add_option("--field", field, "Comma-separated algebra coordinates")
      ->required();
  add_common_flags(constlen, flags);

  auto* theorem1 = app.add_subcommand(
      "theorem1", "Constant-length check for an abelian ideal");
  theorem1->add_option("file", path, "Model file")->required();
  theorem1->add_option("--ideal", ideal_name, "Named subspace from the file")
      ->required();
  add_common_flags(theorem1, flags);

  auto* ricstar = app.add_subcommand("ricstar", "Ric*/Ric comparison identity");
  ricstar->add_option("file", path, "Model file")->required();
  ricstar->add_option("--k", k_name, "Named subalgebra from the file")->required();
  add_common_flags(ricstar, flags);

  auto* catalog = app.add_subcommand("catalog", "Built-in oracle models");
  auto* catalog_list = catalog->add_subcommand("list", "List catalog entries");
  auto* catalog_emit = catalog->add_subcommand("emit", "Emit an entry as a model file");
  catalog_emit->add_option("name", catalog_name, "Catalog entry name")->required();
  catalog_emit->add_option("--out", out_path, "Output path (default stdout)");
  catalog->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(path, flags);
    if (analyze->parsed()) return cmd_analyze(path, flags, json_path);
    if (go_check->parsed()) return cmd_go_check(path, flags, direction);
    if (ricci_cmd->parsed()) return cmd_ricci(path, flags, direction);
    if (constlen->parsed()) return cmd_const_length(path, flags, field);
    if (theorem1->parsed()) return cmd_theorem1(path, flags, ideal_name);
    if (ricstar->parsed()) return cmd_ricstar(path, flags, k_name);
    if (catalog->parsed()) {
      if (catalog_list->parsed()) return cmd_catalog_list();
      if (catalog_emit->parsed()) return cmd_catalog_emit(catalog_name, out_path);
    }
    std::cerr << app.help() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
