#include <doctest.h>

#include "metriclie/geodesic_orbit.hpp"
#include "test_helpers.hpp"

using namespace metriclie;
using namespace metriclie::testing;

namespace {

// Independent re-substitution: loops over the g-orthonormal basis and
// evaluates ([H + X, Y]_m, X) straight from brackets and the metric.
double resubstitute(const HomogeneousModel& m, const Vec& h_ambient, const Vec& xm) {
  const Vec shifted = h_ambient + m.ambient_from_m(xm);
  double worst = 0.0;
  for (int j = 0; j < m.dim_m(); ++j) {
    const Vec w = m.algebra().bracket(shifted, Vec(m.onb_m_ambient().col(j)));
    worst = std::max(worst, std::abs(m.g_inner(m.m_coords(w), xm)));
  }
  return worst;
}

}  // namespace

TEST_CASE("sphere directions are geodesic with H = 0") {
  const HomogeneousModel m = entry_by_name("sphere_s2").model;
  const GoCertificate cert = go_certificate(m, basis_vec(2, 0));
  CHECK(cert.feasible);
  CHECK(cert.residual <= 1e-12);
  CHECK(cert.h_solution.norm() <= 1e-12);
}

TEST_CASE("squashed so(3) rejects the diagonal direction with witness e2") {
  const HomogeneousModel m = entry_by_name("so3_squashed").model;
  Vec x(3);
  x << 1, 0, 1;
  const GoCertificate cert = go_certificate(m, x);
  CHECK(!cert.feasible);
  CHECK(cert.residual == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cert.witness_index == 1);
  CHECK((cert.witness - basis_vec(3, 1)).norm() <= 1e-12);
  CHECK(cert.witness_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a point model passes trivially") {
  // Full isotropy leaves nothing to probe.
  const HomogeneousModel point =
      build_model("point", so3(), Subspace::full(3, "h"), Mat(0, 0));
  const GoSurvey survey = go_survey(point, ProbePlan{});
  CHECK(survey.verdict == Verdict::pass);
  CHECK(survey.certificates.empty());
}

TEST_CASE("the zero direction is trivially feasible") {
  const HomogeneousModel m = entry_by_name("so3_squashed").model;
  const GoCertificate cert = go_certificate(m, Vec::Zero(3));
  CHECK(cert.feasible);
  CHECK(cert.residual == 0.0);
}

TEST_CASE("feasibility is scaling covariant") {
  for (const auto& entry : catalog_entries()) {
    const HomogeneousModel& m = entry.model;
    const int r = m.dim_m();
    std::vector<Vec> probes;
    for (int i = 0; i < r; ++i) probes.push_back(basis_vec(r, i));
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        probes.push_back(basis_vec(r, i) + basis_vec(r, j));
      }
    }
    for (const Vec& x : probes) {
      const GoCertificate base = go_certificate(m, x);
      for (double lambda : {2.0, -1.0}) {
        const Vec scaled = lambda * x;
        const GoCertificate cert = go_certificate(m, scaled);
        CHECK(cert.feasible == base.feasible);
        if (base.feasible) {
          // lambda * H_X works for lambda * X.
          const double res = resubstitute(m, Vec(lambda * base.h_solution), scaled);
          CHECK(res <= m.tolerances().eps_rank * (1.0 + m.g_norm_sq(scaled)));
        }
      }
    }
  }
}

TEST_CASE("survey verdicts and first witnesses on the catalog") {
  const GoSurvey sphere = go_survey(entry_by_name("sphere_s2").model, ProbePlan{});
  CHECK(sphere.verdict == Verdict::pass);
  CHECK(sphere.first_infeasible == -1);

  const GoSurvey squashed = go_survey(entry_by_name("so3_squashed").model, ProbePlan{});
  CHECK(squashed.verdict == Verdict::fail);
  REQUIRE(squashed.first_infeasible >= 0);
  Vec expected(3);
  expected << 1, 0, 1;
  CHECK((squashed.certificates[squashed.first_infeasible].direction - expected).norm() <=
        1e-12);
}

TEST_CASE("bi-invariant so(3) passes with H = 0 on every probe") {
  const GoSurvey survey = go_survey(entry_by_name("so3_biinvariant").model, ProbePlan{});
  CHECK(survey.verdict == Verdict::pass);
  for (const auto& cert : survey.certificates) {
    CHECK(cert.h_solution.norm() <= 1e-12);
  }
}

TEST_CASE("certificates are sound under independent re-substitution") {
  for (const auto& entry : catalog_entries()) {
    const GoSurvey survey = go_survey(entry.model, ProbePlan{});
    for (const auto& cert : survey.certificates) {
      if (!cert.feasible) continue;
      const double res = resubstitute(entry.model, cert.h_solution, cert.direction);
      CHECK(res <= cert.tolerance);
    }
  }
}

TEST_CASE("natural reductivity values") {
  CHECK(naturally_reductive_check(entry_by_name("so3_biinvariant").model)
            .naturally_reductive);
  CHECK(naturally_reductive_check(entry_by_name("abelian2").model).naturally_reductive);
  CHECK(naturally_reductive_check(entry_by_name("sphere_s2").model).naturally_reductive);

  const auto squashed = naturally_reductive_check(entry_by_name("so3_squashed").model);
  CHECK(!squashed.naturally_reductive);
  // Triple (e1, e2, e3): g(e3,e3) + g(-e2,e2) = 2 - 1.
  CHECK(squashed.residual == doctest::Approx(1.0));
}

TEST_CASE("natural reductivity implies a passing survey") {
  for (const auto& entry : catalog_entries()) {
    if (naturally_reductive_check(entry.model).naturally_reductive) {
      CHECK(go_survey(entry.model, ProbePlan{}).verdict == Verdict::pass);
    }
  }
}

TEST_CASE("skew audit on the bi-invariant circle split") {
  const HomogeneousModel m = entry_by_name("so3_biinvariant").model;
  const SplitPair split = make_split(m, Subspace::of_vector(basis_vec(3, 2), "m1"));
  const SkewAudit audit = skew_symmetry_audit(m, split);
  REQUIRE(audit.m2_residuals.size() == 1);
  CHECK(audit.m2_residuals[0].residual <= 1e-12);
  CHECK(audit.h_m1_commutes);  // trivial isotropy
  REQUIRE(audit.full_m_residuals.size() == 1);
  CHECK(audit.full_m_residuals[0].residual <= 1e-12);
  CHECK(audit.max_residual <= 1e-12);
}

TEST_CASE("skew audit is vacuous for trivial splits") {
  const HomogeneousModel sphere = entry_by_name("sphere_s2").model;
  const SkewAudit all = skew_symmetry_audit(sphere, make_split(sphere, sphere.complement()));
  CHECK(all.max_residual <= 1e-12);

  const HomogeneousModel plane = entry_by_name("e2_plane").model;
  const SkewAudit none =
      skew_symmetry_audit(plane, make_split(plane, Subspace::zero(3, "m1")));
  CHECK(none.m2_residuals.empty());
  CHECK(none.max_residual == 0.0);
}

TEST_CASE("unimodularity audits") {
  const UnimodularityAudit aff = unimodularity_audit(entry_by_name("aff_line").model);
  CHECK(aff.defect == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(aff.kernel_dim == 1);
  CHECK(aff.kernel_ideal_residual <= 1e-10);

  CHECK(unimodularity_audit(entry_by_name("so3_biinvariant").model).defect <= 1e-12);
  CHECK(unimodularity_audit(entry_by_name("abelian3").model).defect == 0.0);
  CHECK(unimodularity_audit(entry_by_name("e2_plane").model).defect <= 1e-12);
}

TEST_CASE("passing surveys come with vanishing unimodularity defect") {
  for (const auto& entry : catalog_entries()) {
    if (go_survey(entry.model, ProbePlan{}).verdict == Verdict::pass) {
      CHECK(unimodularity_audit(entry.model).defect <= 1e-9);
    }
  }
}

TEST_CASE("the non-unimodular entry also fails its survey") {
  const auto entry = entry_by_name("aff_line");
  CHECK(unimodularity_audit(entry.model).defect > 0.5);
  CHECK(go_survey(entry.model, ProbePlan{}).verdict == Verdict::fail);
}
