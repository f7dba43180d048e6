#ifndef METRICLIE_REPORT_HPP
#define METRICLIE_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metriclie/catalog.hpp"
#include "metriclie/curvature.hpp"
#include "metriclie/geodesic_orbit.hpp"
#include "metriclie/killing_length.hpp"
#include "metriclie/model_io.hpp"

namespace metriclie {

struct AnalysisOptions {
  std::optional<double> eps_struct;
  std::optional<double> eps_rank;
  std::optional<double> eps_len;
  std::uint64_t seed = 42;
  int probe_random_count = 200;
  int orbit_random_words = 100;
  bool force = false;
  std::string k_name = "k";
  std::string m1_name = "m1";
};

struct RicStarSection {
  bool requested = false;
  std::string k_label;
  bool preconditions_ok = false;
  std::vector<std::string> failures;
  int m1_dim = 0;
  int m2_dim = 0;
  double k_skew_residual = 0.0;
  std::vector<RicStarEvaluation> evaluations;
  double max_difference = 0.0;
};

struct TheoremSection {
  std::string ideal_label;
  TheoremReport report;
};

struct ParallelSection {
  std::string ideal_label;
  ParallelReport report;
};

/// Everything run_analysis produces; deterministic for a fixed document,
/// seed and flags. Verdicts are always relative to the supplied algebra.
struct AnalysisReport {
  std::string model_name;
  int dim = 0;
  int dim_isotropy = 0;
  int dim_m = 0;
  std::vector<std::string> basis_names;
  Tolerances tol;
  bool forced = false;
  ModelValidation validation;
  ProbePlan probe_plan;
  OrbitPlan orbit_plan;
  UnimodularityAudit unimodularity;
  bool unimodular_contradiction = false;
  Vec z_m;
  Mat ricci_mat;
  std::vector<RicciResult> ricci_basis_terms;
  GoSurvey survey;
  NaturalReductivityResult natural_reductivity;
  SubspaceTestResult symmetric_pair;
  bool skew_requested = false;
  std::string skew_m1_label;
  SkewAudit skew_audit;
  std::vector<TheoremSection> theorems;
  std::vector<ParallelSection> parallel;
  std::vector<std::pair<std::string, LengthProfile>> basis_profiles;
  RicStarSection ric_star;
};

/// Runs every applicable section on an already built model. Sections that
/// need optional inputs (k, candidate ideals, m1) are marked not requested
/// when those subspaces are absent.
AnalysisReport run_analysis(const HomogeneousModel& model,
                            const std::vector<NamedSubspace>& subspaces,
                            const AnalysisOptions& options);

AnalysisReport run_analysis(const ModelDocument& doc, const AnalysisOptions& options);

/// Deterministic JSON rendering (2-space indent, key order fixed).
std::string report_to_json(const AnalysisReport& report);

/// Human-readable summary table.
std::string report_summary(const AnalysisReport& report);

}  // namespace metriclie

#endif
