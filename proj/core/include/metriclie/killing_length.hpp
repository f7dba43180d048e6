#ifndef METRICLIE_KILLING_LENGTH_HPP
#define METRICLIE_KILLING_LENGTH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metriclie/geodesic_orbit.hpp"
#include "metriclie/homogeneous_model.hpp"

namespace metriclie {

/// Orbit sampling plan: points a.o are reached through words of adjoint
/// exponentials exp(t ad_{e_i}); no manifold points are materialized.
struct OrbitPlan {
  std::vector<double> t_values{-1.3, -0.7, -0.1, 0.1, 0.7, 1.3};
  int max_word_length = 2;
  int random_words = 100;
  int random_fields = 10;  // random elements drawn inside an ideal under test
  std::uint64_t seed = 42;
  std::string describe() const;
};

/// One orbit point: `value` is the squared length g_a(X,X) of the field at
/// the sampled point (the function whose critical points characterize
/// geodesic integral curves); `residual` is the max over the algebra basis
/// Y of |g(([Y,X'])_m, X'_m)| for the transported field X'.
struct OrbitSample {
  std::string word;
  double value = 0.0;
  double residual = 0.0;
};

/// verdict == pass means constant on the sampled orbit set (spread within
/// eps_len*(1+max) and every residual within eps_len); fail means the
/// variation exceeds 100x those bounds; in between is indeterminate.
struct LengthProfile {
  Vec field;  // ambient coordinates
  std::vector<OrbitSample> samples;
  double spread = 0.0;
  double max_residual = 0.0;
  Verdict verdict = Verdict::indeterminate;
};

/// |X_m|_g at the origin; zero exactly when X lies in the isotropy.
double length_at_origin(const HomogeneousModel& model, const Vec& x);

/// max over the algebra basis Y of |g(([Y,X])_m, X_m)|; zero makes the
/// origin a critical point of the squared-length function of X.
double critical_point_residual(const HomogeneousModel& model, const Vec& x);

LengthProfile length_profile(const HomogeneousModel& model, const Vec& x,
                             const OrbitPlan& plan);

/// Constant-length verification for every field in an abelian ideal.
/// A profile that is not constant despite satisfied preconditions is a
/// contradiction (modeling error or false survey verdict), never accepted.
struct TheoremReport {
  bool preconditions_ok = false;
  std::vector<std::string> precondition_failures;
  struct Entry {
    std::string label;
    LengthProfile profile;
  };
  std::vector<Entry> profiles;
  bool pass = false;
  bool contradiction = false;
  double max_spread = 0.0;
  double max_residual = 0.0;
};

TheoremReport verify_abelian_ideal_theorem(const HomogeneousModel& model,
                                           const Subspace& ideal,
                                           const OrbitPlan& plan,
                                           Verdict survey_verdict);

/// Fields in the ideal with a constant-length verdict and vanishing Ricci
/// value: candidates for parallel fields / flat factors. Reporting only.
struct ParallelCandidate {
  std::string label;
  Vec field;  // ambient
  double ricci_value = 0.0;
  Verdict length_verdict = Verdict::indeterminate;
  bool candidate = false;
};

struct ParallelReport {
  bool preconditions_ok = false;
  std::vector<std::string> precondition_failures;
  std::vector<ParallelCandidate> candidates;
};

ParallelReport parallel_candidate_report(const HomogeneousModel& model,
                                         const Subspace& ideal,
                                         const OrbitPlan& plan,
                                         Verdict survey_verdict);

}  // namespace metriclie

#endif
