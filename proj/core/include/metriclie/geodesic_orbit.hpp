#ifndef METRICLIE_GEODESIC_ORBIT_HPP
#define METRICLIE_GEODESIC_ORBIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metriclie/homogeneous_model.hpp"

namespace metriclie {

/// Probe battery for the geodesic-vector survey: all m-coordinate basis
/// vectors, their pairwise sums and differences, and seeded random unit
/// directions. A pass is a necessary-condition verdict on this battery,
/// always relative to the supplied algebra.
struct ProbePlan {
  bool include_basis = true;
  bool include_pairs = true;
  int random_count = 200;
  std::uint64_t seed = 42;
  std::string describe() const;
};

/// Feasibility result for one direction X: the minimum-norm solution H_X
/// of ([H + X, Y]_m, X) = 0 over the g-orthonormal basis Y of m, and the
/// re-substituted residual that decides feasibility.
struct GoCertificate {
  Vec direction;            // m-coordinates
  bool feasible = false;
  double residual = 0.0;    // max_Y |([H_X + X, Y]_m, X)|
  double tolerance = 0.0;   // eps_rank * (1 + |X|_g^2)
  Vec h_solution;           // ambient coordinates, zero vector when h = {0}
  int witness_index = -1;   // basis index attaining the residual
  Vec witness;              // ambient Y attaining the residual
  double witness_value = 0.0;
};

GoCertificate go_certificate(const HomogeneousModel& model, const Vec& xm);

struct GoSurvey {
  ProbePlan plan;
  std::vector<GoCertificate> certificates;
  Verdict verdict = Verdict::indeterminate;
  int first_infeasible = -1;
};

GoSurvey go_survey(const HomogeneousModel& model, const ProbePlan& plan);

/// H_X = 0 specialization: true iff ([X_i, X_j]_m, X_k) is antisymmetric
/// in (j, k) on all span-row triples of m.
struct NaturalReductivityResult {
  bool naturally_reductive = false;
  double residual = 0.0;
};

NaturalReductivityResult naturally_reductive_check(const HomogeneousModel& model);

struct SkewAuditEntry {
  std::string label;
  double residual = 0.0;
};

/// Skewness of ad_U on m2 (w.r.t. the restricted metric) for U in the
/// m1-basis; when [h, m1] = 0 the audit extends to all of m.
struct SkewAudit {
  bool h_m1_commutes = false;
  double h_m1_bracket_norm = 0.0;
  std::vector<SkewAuditEntry> m2_residuals;
  std::vector<SkewAuditEntry> full_m_residuals;
  double max_residual = 0.0;
};

SkewAudit skew_symmetry_audit(const HomogeneousModel& model, const SplitPair& split);

struct UnimodularityAudit {
  double defect = 0.0;  // max_i |trace ad_{e_i}|
  int kernel_dim = 0;
  double kernel_ideal_residual = 0.0;
};

UnimodularityAudit unimodularity_audit(const HomogeneousModel& model);

}  // namespace metriclie

#endif
