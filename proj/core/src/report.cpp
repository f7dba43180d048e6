#include "metriclie/report.hpp"

#include <json.hpp>
#include <sstream>

#include "metriclie/version.hpp"

namespace metriclie {

using json = nlohmann::ordered_json;

namespace {

json vec_to_json(const Vec& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json mat_to_json(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json issues_to_json(const std::vector<ValidationIssue>& issues) {
  json arr = json::array();
  for (const auto& issue : issues) {
    arr.push_back({{"invariant", issue.invariant},
                   {"message", issue.message},
                   {"residual", issue.residual}});
  }
  return arr;
}

json profile_to_json(const LengthProfile& profile) {
  json samples = json::array();
  for (const auto& s : profile.samples) {
    samples.push_back({{"word", s.word},
                       {"square_length", s.value},
                       {"residual", s.residual}});
  }
  return {{"field", vec_to_json(profile.field)},
          {"verdict", to_string(profile.verdict)},
          {"constancy", profile.verdict == Verdict::pass
                            ? "constant on sampled orbit set"
                            : (profile.verdict == Verdict::fail
                                   ? "varies on sampled orbit set"
                                   : "borderline on sampled orbit set")},
          {"spread", profile.spread},
          {"max_residual", profile.max_residual},
          {"samples", samples}};
}

json certificate_to_json(const GoCertificate& cert, bool has_isotropy) {
  json c = {{"direction", vec_to_json(cert.direction)},
            {"feasible", cert.feasible},
            {"residual", cert.residual},
            {"tolerance", cert.tolerance}};
  c["h_solution"] = has_isotropy ? vec_to_json(cert.h_solution) : json(nullptr);
  if (!cert.feasible && cert.witness_index >= 0) {
    c["witness"] = {{"basis_index", cert.witness_index},
                    {"vector", vec_to_json(cert.witness)},
                    {"value", cert.witness_value}};
  } else {
    c["witness"] = nullptr;
  }
  return c;
}

}  // namespace

AnalysisReport run_analysis(const HomogeneousModel& model,
                            const std::vector<NamedSubspace>& subspaces,
                            const AnalysisOptions& options) {
  AnalysisReport rep;
  rep.model_name = model.name();
  rep.dim = model.dim();
  rep.dim_isotropy = model.dim_isotropy();
  rep.dim_m = model.dim_m();
  rep.basis_names = model.basis_names();
  rep.tol = model.tolerances();
  rep.forced = options.force;
  rep.validation = model.validation();

  rep.probe_plan.random_count = options.probe_random_count;
  rep.probe_plan.seed = options.seed;
  rep.orbit_plan.random_words = options.orbit_random_words;
  rep.orbit_plan.seed = options.seed;

  rep.unimodularity = unimodularity_audit(model);
  rep.z_m = z_vector(model);
  rep.ricci_mat = ricci_matrix(model);
  for (int i = 0; i < model.dim_m(); ++i) {
    Vec e = Vec::Zero(model.dim_m());
    e[i] = 1.0;
    rep.ricci_basis_terms.push_back(ricci(model, e));
  }

  rep.survey = go_survey(model, rep.probe_plan);
  rep.unimodular_contradiction = rep.survey.verdict == Verdict::pass &&
                                 rep.unimodularity.defect > model.tolerances().eps_rank;
  rep.natural_reductivity = naturally_reductive_check(model);
  rep.symmetric_pair = symmetric_pair_check(model);

  for (const auto& named : subspaces) {
    if (!named.is_ideal && named.name == options.m1_name) {
      rep.skew_requested = true;
      rep.skew_m1_label = named.name;
      const SplitPair split = make_split(model, named.space);
      rep.skew_audit = skew_symmetry_audit(model, split);
    }
  }

  for (const auto& named : subspaces) {
    if (!named.is_ideal) continue;
    TheoremSection section;
    section.ideal_label = named.name;
    section.report = verify_abelian_ideal_theorem(model, named.space, rep.orbit_plan,
                                                  rep.survey.verdict);
    rep.theorems.push_back(std::move(section));

    ParallelSection psec;
    psec.ideal_label = named.name;
    psec.report = parallel_candidate_report(model, named.space, rep.orbit_plan,
                                            rep.survey.verdict);
    rep.parallel.push_back(std::move(psec));
  }

  for (int i = 0; i < model.dim(); ++i) {
    Vec e = Vec::Zero(model.dim());
    e[i] = 1.0;
    rep.basis_profiles.emplace_back(model.basis_names()[i],
                                    length_profile(model, e, rep.orbit_plan));
  }

  for (const auto& named : subspaces) {
    if (named.is_ideal || named.name != options.k_name) continue;
    rep.ric_star.requested = true;
    rep.ric_star.k_label = named.name;
    const RicStarContext ctx = make_ric_star_context(model, named.space);
    rep.ric_star.preconditions_ok = ctx.ok;
    rep.ric_star.failures = ctx.failures;
    if (ctx.ok) {
      rep.ric_star.m1_dim = ctx.m1.dim();
      rep.ric_star.m2_dim = ctx.m2.dim();
      rep.ric_star.k_skew_residual = ctx.k_skew_residual;
      const int d1 = ctx.m1.dim();
      std::vector<Vec> directions;
      for (int i = 0; i < d1; ++i) {
        Vec e = Vec::Zero(d1);
        e[i] = 1.0;
        directions.push_back(e);
      }
      SeededRng rng(options.seed);
      for (int t = 0; t < 10 && d1 > 0; ++t) directions.push_back(rng.unit_vector(d1));
      if (d1 == 0) directions.push_back(Vec::Zero(0));
      for (const Vec& x : directions) {
        rep.ric_star.evaluations.push_back(ric_star_evaluate(model, ctx, x));
        rep.ric_star.max_difference = std::max(
            rep.ric_star.max_difference, rep.ric_star.evaluations.back().difference);
      }
    }
  }
  return rep;
}

AnalysisReport run_analysis(const ModelDocument& doc, const AnalysisOptions& options) {
  const BuiltModel built = build_from_document(doc, options.eps_struct,
                                               options.eps_rank, options.eps_len,
                                               options.force);
  return run_analysis(built.model, built.subspaces, options);
}

std::string report_to_json(const AnalysisReport& rep) {
  json root;
  root["schema"] = kReportSchema;
  root["tool"] = {{"name", "metriclie"}, {"version", kVersion}};
  root["relative_to_supplied_algebra"] = true;
  root["model"] = {{"name", rep.model_name},
                   {"dim", rep.dim},
                   {"dim_isotropy", rep.dim_isotropy},
                   {"dim_m", rep.dim_m},
                   {"basis", rep.basis_names}};
  root["tolerances"] = {{"eps_struct", rep.tol.eps_struct},
                        {"eps_rank", rep.tol.eps_rank},
                        {"eps_len", rep.tol.eps_len}};
  root["plans"] = {{"probe",
                    {{"description", rep.probe_plan.describe()},
                     {"seed", rep.probe_plan.seed},
                     {"random_count", rep.probe_plan.random_count}}},
                   {"orbit",
                    {{"description", rep.orbit_plan.describe()},
                     {"seed", rep.orbit_plan.seed},
                     {"random_words", rep.orbit_plan.random_words},
                     {"t_values", rep.orbit_plan.t_values}}}};

  const auto& val = rep.validation;
  root["validation"] = {
      {"ok", val.ok()},
      {"forced", rep.forced},
      {"antisymmetry_residual", val.structure.antisymmetry_residual},
      {"jacobi_residual", val.structure.jacobi_residual},
      {"direct_sum_min_singular", val.span_min_singular},
      {"isotropy_subalgebra_residual", val.isotropy_subalgebra_residual},
      {"reductivity_residual", val.reductivity_residual},
      {"metric_min_eigenvalue", val.metric_min_eigenvalue},
      {"metric_skew_residual", val.metric_skew_residual},
      {"effective", val.effective},
      {"noneffective_ideal_dim", val.noneffective_ideal_dim},
      {"errors", issues_to_json(val.errors)},
      {"warnings", issues_to_json(val.warnings)}};

  root["unimodularity"] = {
      {"defect", rep.unimodularity.defect},
      {"kernel_dim", rep.unimodularity.kernel_dim},
      {"kernel_ideal_residual", rep.unimodularity.kernel_ideal_residual},
      {"contradiction_with_survey", rep.unimodular_contradiction}};

  root["z_vector"] = vec_to_json(rep.z_m);

  json basis_terms = json::array();
  for (std::size_t i = 0; i < rep.ricci_basis_terms.size(); ++i) {
    const auto& t = rep.ricci_basis_terms[i];
    basis_terms.push_back({{"basis_index", static_cast<int>(i)},
                           {"value", t.value},
                           {"terms",
                            {{"killing", t.killing_term},
                             {"bracket_norm", t.bracket_term},
                             {"double_sum", t.double_sum_term},
                             {"z", t.z_term}}}});
  }
  root["ricci"] = {{"matrix", mat_to_json(rep.ricci_mat)},
                   {"basis_terms", basis_terms}};

  json certs = json::array();
  int feasible_count = 0;
  for (const auto& c : rep.survey.certificates) {
    if (c.feasible) ++feasible_count;
    certs.push_back(certificate_to_json(c, rep.dim_isotropy > 0));
  }
  root["go_survey"] = {
      {"verdict", to_string(rep.survey.verdict)},
      {"plan", rep.probe_plan.describe()},
      {"probe_count", static_cast<int>(rep.survey.certificates.size())},
      {"feasible_count", feasible_count},
      {"first_infeasible", rep.survey.first_infeasible >= 0
                               ? json(rep.survey.first_infeasible)
                               : json(nullptr)},
      {"certificates", certs}};

  root["naturally_reductive"] = {{"value", rep.natural_reductivity.naturally_reductive},
                                 {"residual", rep.natural_reductivity.residual}};
  root["symmetric_pair"] = {{"value", rep.symmetric_pair.value},
                            {"residual", rep.symmetric_pair.residual}};

  if (rep.skew_requested) {
    json m2_res = json::array();
    for (const auto& e : rep.skew_audit.m2_residuals) {
      m2_res.push_back({{"label", e.label}, {"residual", e.residual}});
    }
    json full_res = json::array();
    for (const auto& e : rep.skew_audit.full_m_residuals) {
      full_res.push_back({{"label", e.label}, {"residual", e.residual}});
    }
    root["skew_audit"] = {{"requested", true},
                          {"m1", rep.skew_m1_label},
                          {"h_m1_commutes", rep.skew_audit.h_m1_commutes},
                          {"h_m1_bracket_norm", rep.skew_audit.h_m1_bracket_norm},
                          {"m2_residuals", m2_res},
                          {"full_m_residuals", full_res},
                          {"max_residual", rep.skew_audit.max_residual}};
  } else {
    root["skew_audit"] = {{"requested", false}, {"status", "not requested"}};
  }

  json theorems = json::array();
  for (const auto& section : rep.theorems) {
    json profiles = json::array();
    for (const auto& entry : section.report.profiles) {
      json p = profile_to_json(entry.profile);
      p["label"] = entry.label;
      profiles.push_back(p);
    }
    theorems.push_back({{"ideal", section.ideal_label},
                        {"preconditions_ok", section.report.preconditions_ok},
                        {"precondition_failures", section.report.precondition_failures},
                        {"pass", section.report.pass},
                        {"contradiction", section.report.contradiction},
                        {"max_spread", section.report.max_spread},
                        {"max_residual", section.report.max_residual},
                        {"profiles", profiles}});
  }
  root["abelian_ideal_theorems"] = theorems;

  json parallel = json::array();
  for (const auto& section : rep.parallel) {
    json cands = json::array();
    for (const auto& c : section.report.candidates) {
      cands.push_back({{"label", c.label},
                       {"field", vec_to_json(c.field)},
                       {"ricci", c.ricci_value},
                       {"length_verdict", to_string(c.length_verdict)},
                       {"candidate", c.candidate}});
    }
    parallel.push_back({{"ideal", section.ideal_label},
                        {"preconditions_ok", section.report.preconditions_ok},
                        {"precondition_failures", section.report.precondition_failures},
                        {"candidates", cands}});
  }
  root["parallel_candidates"] = parallel;

  json profiles = json::array();
  for (const auto& [label, profile] : rep.basis_profiles) {
    json p = profile_to_json(profile);
    p["label"] = label;
    profiles.push_back(p);
  }
  root["length_profiles"] = profiles;

  if (rep.ric_star.requested) {
    json evals = json::array();
    for (const auto& ev : rep.ric_star.evaluations) {
      evals.push_back({{"x", vec_to_json(ev.x)},
                       {"left", ev.left},
                       {"right", ev.right},
                       {"difference", ev.difference}});
    }
    root["ric_star"] = {{"requested", true},
                        {"k", rep.ric_star.k_label},
                        {"preconditions_ok", rep.ric_star.preconditions_ok},
                        {"precondition_failures", rep.ric_star.failures},
                        {"m1_dim", rep.ric_star.m1_dim},
                        {"m2_dim", rep.ric_star.m2_dim},
                        {"k_skew_residual", rep.ric_star.k_skew_residual},
                        {"max_difference", rep.ric_star.max_difference},
                        {"evaluations", evals}};
  } else {
    root["ric_star"] = {{"requested", false}, {"status", "not requested"}};
  }

  return root.dump(2) + "\n";
}

std::string report_summary(const AnalysisReport& rep) {
  std::ostringstream os;
  os << "model " << rep.model_name << " (dim " << rep.dim << " = " << rep.dim_isotropy
     << " + " << rep.dim_m << ")\n";
  os << "validation            " << (rep.validation.ok() ? "ok" : "FAILED")
     << (rep.forced ? " (forced)" : "") << "\n";
  for (const auto& w : rep.validation.warnings) {
    os << "  warning: " << w.message << "\n";
  }
  os << "go survey             " << to_string(rep.survey.verdict) << " ("
     << rep.survey.certificates.size() << " probes";
  if (rep.survey.first_infeasible >= 0) {
    const auto& cert = rep.survey.certificates[rep.survey.first_infeasible];
    os << "; witness direction [";
    for (int i = 0; i < cert.direction.size(); ++i) {
      if (i > 0) os << ", ";
      os << cert.direction[i];
    }
    os << "] residual " << cert.residual;
  }
  os << ")\n";
  os << "naturally reductive   "
     << (rep.natural_reductivity.naturally_reductive ? "yes" : "no")
     << " (residual " << rep.natural_reductivity.residual << ")\n";
  os << "symmetric pair        " << (rep.symmetric_pair.value ? "yes" : "no")
     << " (residual " << rep.symmetric_pair.residual << ")\n";
  os << "unimodularity defect  " << rep.unimodularity.defect
     << (rep.unimodular_contradiction ? "  ** contradicts passing survey **" : "")
     << "\n";
  os << "ricci matrix\n";
  for (int i = 0; i < rep.ricci_mat.rows(); ++i) {
    os << "  [";
    for (int j = 0; j < rep.ricci_mat.cols(); ++j) {
      if (j > 0) os << ", ";
      os << rep.ricci_mat(i, j);
    }
    os << "]\n";
  }
  for (const auto& section : rep.theorems) {
    os << "abelian ideal '" << section.ideal_label << "'  ";
    if (!section.report.preconditions_ok) {
      os << "preconditions not met";
      for (const auto& f : section.report.precondition_failures) os << "; " << f;
    } else if (section.report.pass) {
      os << "constant length on sampled orbits (max spread "
         << section.report.max_spread << ")";
    } else {
      os << "CONTRADICTION: non-constant profile detected";
    }
    os << "\n";
  }
  if (rep.ric_star.requested) {
    os << "ric* identity ('" << rep.ric_star.k_label << "')  ";
    if (!rep.ric_star.preconditions_ok) {
      os << "preconditions not met";
      for (const auto& f : rep.ric_star.failures) os << "; " << f;
    } else {
      os << "max |left-right| = " << rep.ric_star.max_difference;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace metriclie
