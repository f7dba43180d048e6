// Acceptance suite: every criterion prints one PASS/FAIL line and the
// process exits nonzero when any of them fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "metriclie/curvature.hpp"
#include "metriclie/geodesic_orbit.hpp"
#include "metriclie/killing_length.hpp"
#include "metriclie/model_io.hpp"
#include "metriclie/report.hpp"

using namespace metriclie;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << number << ": " << name;
  if (!detail.empty()) std::cout << "  [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++failures;
}

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Vec basis_vec(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1.0;
  return v;
}

const CatalogEntry& by_name(const std::vector<CatalogEntry>& entries,
                            const std::string& name) {
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw std::runtime_error("missing catalog entry " + name);
}

// Independent re-substitution of a certificate, straight from brackets.
double resubstitute(const HomogeneousModel& m, const Vec& h_ambient, const Vec& xm) {
  const Vec shifted = h_ambient + m.ambient_from_m(xm);
  double worst = 0.0;
  for (int j = 0; j < m.dim_m(); ++j) {
    const Vec w = m.algebra().bracket(shifted, Vec(m.onb_m_ambient().col(j)));
    worst = std::max(worst, std::abs(m.g_inner(m.m_coords(w), xm)));
  }
  return worst;
}

std::string run_command(const std::string& command, int* exit_code) {
  std::array<char, 4096> buffer{};
  std::string output;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (pipe == nullptr) {
    *exit_code = -1;
    return output;
  }
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) output += buffer.data();
  const int status = pclose(pipe);
  *exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return output;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_1(const std::vector<CatalogEntry>& entries) {
  const Mat ric = ricci_matrix(by_name(entries, "so3_biinvariant").model);
  const double err = max_abs(Mat(ric - 0.5 * Mat::Identity(3, 3)));
  std::ostringstream os;
  os << "max entry error " << err;
  report(1, "bi-invariant so(3) Ricci matrix is 0.5*I", err <= 1e-9, os.str());
}

void criterion_2(const std::vector<CatalogEntry>& entries) {
  const HomogeneousModel& m = by_name(entries, "sphere_s2").model;
  const double ric_err = max_abs(Mat(ricci_matrix(m) - Mat::Identity(2, 2)));
  const bool sym = symmetric_pair_check(m).value;
  const GoSurvey survey = go_survey(m, ProbePlan{});
  double worst_resub = 0.0;
  for (const auto& cert : survey.certificates) {
    worst_resub = std::max(worst_resub,
                           resubstitute(m, cert.h_solution, cert.direction));
  }
  const bool ok = ric_err <= 1e-9 && sym && survey.verdict == Verdict::pass &&
                  worst_resub <= 1e-9;
  std::ostringstream os;
  os << "ricci err " << ric_err << ", resubstitution " << worst_resub;
  report(2, "round sphere: Ricci = I, symmetric pair, survey sound", ok, os.str());
}

void criterion_3(const std::vector<CatalogEntry>& entries) {
  const HomogeneousModel& m = by_name(entries, "so3_squashed").model;
  const GoSurvey survey = go_survey(m, ProbePlan{});
  bool ok = survey.verdict == Verdict::fail && survey.first_infeasible >= 0;
  double witness_err = 1.0;
  if (ok) {
    const GoCertificate& cert = survey.certificates[survey.first_infeasible];
    Vec expected(3);
    expected << 1, 0, 1;
    ok = (cert.direction - expected).norm() <= 1e-12;
    // Independent witness value: |([X, e2], X)_g| for X = e1 + e3.
    const Vec x = basis_vec(3, 0) + basis_vec(3, 2);
    const Vec w = m.algebra().bracket(x, basis_vec(3, 1));
    const double value = std::abs(m.g_inner(m.m_coords(w), m.m_coords(x)));
    witness_err = std::abs(value - 1.0);
    ok = ok && witness_err <= 1e-9 && std::abs(cert.residual - 1.0) <= 1e-9;
  }
  std::ostringstream os;
  os << "witness value error " << witness_err;
  report(3, "squashed so(3) fails with witness direction (1,0,1)", ok, os.str());
}

void criterion_4(const std::vector<CatalogEntry>& entries) {
  bool ok = true;
  std::ostringstream os;
  for (const auto& entry : entries) {
    const GoSurvey survey = go_survey(entry.model, ProbePlan{});
    const double defect = unimodularity_audit(entry.model).defect;
    if (survey.verdict == Verdict::pass && defect > 1e-9) {
      ok = false;
      os << entry.name << " passes with defect " << defect << "; ";
    }
  }
  const auto& aff = by_name(entries, "aff_line");
  const double defect = unimodularity_audit(aff.model).defect;
  const Verdict v = go_survey(aff.model, ProbePlan{}).verdict;
  if (std::abs(defect - 1.0) > 1e-12 || v != Verdict::fail) {
    ok = false;
    os << "aff_line defect " << defect << " verdict " << to_string(v);
  }
  report(4, "passing models are unimodular; aff(1) pairs defect 1 with fail", ok,
         os.str());
}

void criterion_5(const std::vector<CatalogEntry>& entries) {
  bool ok = true;
  std::ostringstream os;
  for (const std::string name : {"e2_plane", "abelian1", "abelian2", "abelian3"}) {
    const auto& entry = by_name(entries, name);
    const NamedSubspace* ideal = entry.find_subspace("a");
    if (ideal == nullptr) {
      ok = false;
      os << name << " has no ideal; ";
      continue;
    }
    const GoSurvey survey = go_survey(entry.model, ProbePlan{});
    const TheoremReport rep = verify_abelian_ideal_theorem(
        entry.model, ideal->space, OrbitPlan{}, survey.verdict);
    if (!rep.preconditions_ok || !rep.pass || rep.max_spread > 1e-8) {
      ok = false;
      os << name << " spread " << rep.max_spread << "; ";
    }
  }
  const auto& squashed = by_name(entries, "so3_squashed");
  const LengthProfile profile =
      length_profile(squashed.model, basis_vec(3, 0), OrbitPlan{});
  if (profile.spread < 0.9) {
    ok = false;
    os << "sensitivity spread " << profile.spread;
  } else {
    os << "sensitivity spread " << profile.spread;
  }
  report(5, "abelian ideals have constant length; sensitivity control detects",
         ok, os.str());
}

void criterion_6(const std::vector<CatalogEntry>& entries) {
  bool ok = true;
  double worst = 0.0;
  int pairs = 0;
  std::ostringstream os;
  for (const auto& entry : entries) {
    const NamedSubspace* k = entry.find_subspace("k");
    if (k == nullptr) continue;
    const RicStarContext ctx = make_ric_star_context(entry.model, k->space);
    if (!ctx.ok) {
      ok = false;
      os << entry.name << " preconditions failed; ";
      continue;
    }
    ++pairs;
    SeededRng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
      const Vec x = ctx.m1.dim() > 0 ? rng.unit_vector(ctx.m1.dim()) : Vec(Vec::Zero(0));
      const RicStarEvaluation ev = ric_star_evaluate(entry.model, ctx, x);
      worst = std::max(worst, ev.difference);
    }
  }
  ok = ok && worst <= 1e-8 && pairs > 0;
  os << pairs << " (model,k) pairs, max |Ric* - (Ric - corr)| = " << worst;
  report(6, "Ric*/Ric identity via independent code paths", ok, os.str());
}

void criterion_7(const std::vector<CatalogEntry>& entries) {
  bool ok = true;
  int splits = 0;
  double worst = 0.0;
  std::ostringstream os;
  for (const auto& entry : entries) {
    const NamedSubspace* m1 = entry.find_subspace("m1");
    if (m1 == nullptr) continue;
    if (go_survey(entry.model, ProbePlan{}).verdict != Verdict::pass) continue;
    ++splits;
    const SplitPair split = make_split(entry.model, m1->space);
    const SkewAudit audit = skew_symmetry_audit(entry.model, split);
    worst = std::max(worst, audit.max_residual);
    if (audit.max_residual > 1e-9) {
      ok = false;
      os << entry.name << " residual " << audit.max_residual << "; ";
    }
    if (audit.h_m1_commutes && audit.full_m_residuals.size() !=
                                   static_cast<std::size_t>(split.m1.dim())) {
      ok = false;
      os << entry.name << " missing full-m audit; ";
    }
  }
  ok = ok && splits > 0;
  os << splits << " splits, max skew residual " << worst;
  report(7, "restricted ad acts skewly on tested splits of passing models", ok,
         os.str());
}

void criterion_8(const std::vector<CatalogEntry>& entries) {
  std::vector<const CatalogEntry*> base;
  for (const auto& e : entries) {
    if (e.name.find("_x_") == std::string::npos) base.push_back(&e);
  }
  SeededRng rng(42);
  bool ok = true;
  std::ostringstream os;
  for (int trial = 0; trial < 20; ++trial) {
    const CatalogEntry& a = *base[rng.index(static_cast<int>(base.size()))];
    const CatalogEntry& b = *base[rng.index(static_cast<int>(base.size()))];
    const HomogeneousModel prod = product_model(a.model, b.model);
    const Verdict va = go_survey(a.model, ProbePlan{}).verdict;
    const Verdict vb = go_survey(b.model, ProbePlan{}).verdict;
    const Verdict vp = go_survey(prod, ProbePlan{}).verdict;
    const Verdict expected = (va == Verdict::pass && vb == Verdict::pass)
                                 ? Verdict::pass
                                 : Verdict::fail;
    if (vp != expected) {
      ok = false;
      os << a.name << " x " << b.name << " gave " << to_string(vp) << "; ";
    }
  }
  report(8, "product verdict equals the conjunction of factor verdicts (20 pairs)",
         ok, os.str());
}

void criterion_9(const std::vector<CatalogEntry>& entries) {
  bool ok = true;
  double worst_axiom = 0.0;
  double worst_invariance = 0.0;
  double worst_group = 0.0;
  for (const auto& entry : entries) {
    const StructureTensor& t = entry.model.algebra();
    const auto v = validate_structure(t, 1e-10);
    worst_axiom = std::max({worst_axiom, v.antisymmetry_residual, v.jacobi_residual});

    SeededRng rng(42);
    for (int trial = 0; trial < 100; ++trial) {
      const Vec x = rng.unit_vector(t.dim());
      const Vec y = rng.unit_vector(t.dim());
      const Vec z = rng.unit_vector(t.dim());
      worst_invariance = std::max(
          worst_invariance, std::abs(killing_form(t, t.bracket(z, x), y) +
                                     killing_form(t, x, t.bracket(z, y))));
    }
    for (int trial = 0; trial < 10; ++trial) {
      const Vec v = rng.unit_vector(t.dim());
      const double s = rng.uniform(-2, 2);
      const double u = rng.uniform(-2, 2);
      worst_group = std::max(
          worst_group, max_abs(Mat(ad_exponential(t, v, s + u) -
                                   ad_exponential(t, v, s) * ad_exponential(t, v, u))));
    }
  }
  ok = worst_axiom <= 1e-10 && worst_invariance <= 1e-9 && worst_group <= 1e-10;
  std::ostringstream os;
  os << "axioms " << worst_axiom << ", invariance " << worst_invariance << ", group law "
     << worst_group;
  report(9, "structural numerics hold on every catalog entry", ok, os.str());
}

void criterion_10(const std::vector<CatalogEntry>& entries, const char* cli,
                  const char* tmpdir) {
  bool ok = true;
  std::ostringstream os;
  for (const auto& entry : entries) {
    const ModelDocument doc = document_from_entry(entry);
    const std::string text = emit_model_document(doc);
    if (emit_model_document(parse_model_document(text)) != text) {
      ok = false;
      os << entry.name << " emit/parse not a fixed point; ";
    }
  }
  AnalysisOptions options;
  options.probe_random_count = 50;
  options.orbit_random_words = 20;
  const ModelDocument doc = document_from_entry(by_name(entries, "sphere_s2"));
  if (report_to_json(run_analysis(doc, options)) !=
      report_to_json(run_analysis(doc, options))) {
    ok = false;
    os << "in-process reports differ; ";
  }

  const std::string dir(tmpdir);
  const std::string model = dir + "/acc_sphere.model";
  const std::string j1 = dir + "/acc1.json";
  const std::string j2 = dir + "/acc2.json";
  int code = 0;
  run_command(std::string(cli) + " catalog emit sphere_s2 --out " + model, &code);
  bool cli_ok = code == 0;
  run_command(std::string(cli) + " analyze " + model + " --json " + j1, &code);
  cli_ok = cli_ok && code == 0;
  run_command(std::string(cli) + " analyze " + model + " --json " + j2, &code);
  cli_ok = cli_ok && code == 0;
  if (!cli_ok || slurp(j1).empty() || slurp(j1) != slurp(j2)) {
    ok = false;
    os << "CLI reports differ across runs; ";
  }
  report(10, "byte-identical reports and emit/parse fixed points", ok, os.str());
}

}  // namespace

int main() {
  const std::vector<CatalogEntry> entries = catalog_entries();
  criterion_1(entries);
  criterion_2(entries);
  criterion_3(entries);
  criterion_4(entries);
  criterion_5(entries);
  criterion_6(entries);
  criterion_7(entries);
  criterion_8(entries);
  criterion_9(entries);
  criterion_10(entries, METRICLIE_CLI_PATH, METRICLIE_TEST_TMPDIR);
  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
    return 0;
  }
  std::cout << failures << " acceptance criteria failed\n";
  return 1;
}
