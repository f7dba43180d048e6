#include "metriclie/geodesic_orbit.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace metriclie {

std::string ProbePlan::describe() const {
  std::ostringstream os;
  os << "probes:";
  if (include_basis) os << " basis";
  if (include_pairs) os << " pairs";
  os << " random(" << random_count << ", seed " << seed << ")";
  return os.str();
}

GoCertificate go_certificate(const HomogeneousModel& model, const Vec& xm) {
  require(xm.size() == model.dim_m(), "go_certificate: direction must be in m-coordinates");
  const int r = model.dim_m();
  const int kh = model.dim_isotropy();
  const double eps = model.tolerances().eps_rank;

  GoCertificate cert;
  cert.direction = xm;
  cert.tolerance = eps * (1.0 + model.g_norm_sq(xm));
  cert.h_solution = Vec::Zero(model.dim());
  if (xm.lpNorm<Eigen::Infinity>() == 0.0) {
    cert.feasible = true;
    return cert;
  }

  const Vec x_amb = model.ambient_from_m(xm);

  // ([H, Y_j]_m, X) = -([X, Y_j]_m, X) in the unknown H over the isotropy
  // orthonormal basis; minimum-norm least squares picks a canonical H_X.
  if (kh > 0) {
    Mat system(r, kh);
    Vec rhs(r);
    for (int j = 0; j < r; ++j) {
      const Vec yj = model.onb_m_ambient().col(j);
      rhs[j] = -model.g_inner(model.m_coords(model.algebra().bracket(x_amb, yj)), xm);
      for (int l = 0; l < kh; ++l) {
        const Vec hl = model.isotropy_onb().col(l);
        system(j, l) =
            model.g_inner(model.m_coords(model.algebra().bracket(hl, yj)), xm);
      }
    }
    Eigen::JacobiSVD<Mat> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(eps);
    const Vec h_coef = svd.solve(rhs);
    cert.h_solution = model.isotropy_onb() * h_coef;
  }

  const Vec shifted = cert.h_solution + x_amb;
  for (int j = 0; j < r; ++j) {
    const Vec yj = model.onb_m_ambient().col(j);
    const double value =
        model.g_inner(model.m_coords(model.algebra().bracket(shifted, yj)), xm);
    if (std::abs(value) > cert.residual) {
      cert.residual = std::abs(value);
      cert.witness_index = j;
      cert.witness = yj;
      cert.witness_value = value;
    }
  }
  cert.feasible = cert.residual <= cert.tolerance;
  return cert;
}

GoSurvey go_survey(const HomogeneousModel& model, const ProbePlan& plan) {
  const int r = model.dim_m();
  GoSurvey survey;
  survey.plan = plan;

  std::vector<Vec> probes;
  if (r == 0) {
    survey.verdict = Verdict::pass;
    return survey;
  }
  Vec e = Vec::Zero(r);
  if (plan.include_basis) {
    for (int i = 0; i < r; ++i) {
      e.setZero();
      e[i] = 1.0;
      probes.push_back(e);
    }
  }
  if (plan.include_pairs) {
    for (int i = 0; i < r; ++i) {
      for (int j = i + 1; j < r; ++j) {
        e.setZero();
        e[i] = 1.0;
        e[j] = 1.0;
        probes.push_back(e);
        e[j] = -1.0;
        probes.push_back(e);
      }
    }
  }
  SeededRng rng(plan.seed);
  for (int t = 0; t < plan.random_count; ++t) {
    probes.push_back(rng.unit_vector(r));
  }

  bool all_feasible = true;
  for (std::size_t idx = 0; idx < probes.size(); ++idx) {
    survey.certificates.push_back(go_certificate(model, probes[idx]));
    if (!survey.certificates.back().feasible && all_feasible) {
      all_feasible = false;
      survey.first_infeasible = static_cast<int>(idx);
    }
  }
  survey.verdict = all_feasible ? Verdict::pass : Verdict::fail;
  return survey;
}

NaturalReductivityResult naturally_reductive_check(const HomogeneousModel& model) {
  const int r = model.dim_m();
  NaturalReductivityResult res;
  // Trilinear form on the m span rows; antisymmetry in the last two slots.
  std::vector<std::vector<Vec>> bracket_m(r, std::vector<Vec>(r));
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      bracket_m[i][j] = model.m_coords(
          model.algebra().bracket(Vec(model.complement().span().row(i).transpose()),
                                  Vec(model.complement().span().row(j).transpose())));
    }
  }
  auto coord = [&](int idx) {
    Vec v = Vec::Zero(r);
    v[idx] = 1.0;
    return v;
  };
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      for (int k = 0; k < r; ++k) {
        const double t1 = model.g_inner(bracket_m[i][j], coord(k));
        const double t2 = model.g_inner(bracket_m[i][k], coord(j));
        res.residual = std::max(res.residual, std::abs(t1 + t2));
      }
    }
  }
  res.naturally_reductive = res.residual <= model.tolerances().eps_struct;
  return res;
}

SkewAudit skew_symmetry_audit(const HomogeneousModel& model, const SplitPair& split) {
  SkewAudit audit;
  const int r = model.dim_m();
  const int d2 = split.m2.dim();

  // Restricted metric on m2 in its orthonormalized basis.
  Mat w2(r, d2);
  for (int i = 0; i < d2; ++i) {
    w2.col(i) = model.m_coords(Vec(split.m2.onb().col(i)));
  }
  const Mat g2 = w2.transpose() * model.metric() * w2;

  for (int a = 0; a < split.m1.dim(); ++a) {
    const Vec u = split.m1.span().row(a).transpose();
    const Mat ad2 = restricted_ad(model, u, split.m2);
    const Mat skew = g2 * ad2 + ad2.transpose() * g2;
    SkewAuditEntry entry{"m1[" + std::to_string(a) + "]",
                         skew.size() == 0 ? 0.0 : skew.cwiseAbs().maxCoeff()};
    audit.max_residual = std::max(audit.max_residual, entry.residual);
    audit.m2_residuals.push_back(entry);
  }

  for (int a = 0; a < model.dim_isotropy(); ++a) {
    for (int i = 0; i < split.m1.dim(); ++i) {
      const Vec w = model.algebra().bracket(
          Vec(model.isotropy().span().row(a).transpose()),
          Vec(split.m1.span().row(i).transpose()));
      audit.h_m1_bracket_norm = std::max(audit.h_m1_bracket_norm, w.norm());
    }
  }
  audit.h_m1_commutes = audit.h_m1_bracket_norm <= model.tolerances().eps_struct;

  if (audit.h_m1_commutes) {
    for (int a = 0; a < split.m1.dim(); ++a) {
      const Vec u = split.m1.span().row(a).transpose();
      Mat ad_m(r, r);
      for (int b = 0; b < r; ++b) {
        ad_m.col(b) = model.m_coords(model.algebra().bracket(
            u, Vec(model.complement().span().row(b).transpose())));
      }
      const Mat skew = model.metric() * ad_m + ad_m.transpose() * model.metric();
      SkewAuditEntry entry{"m1[" + std::to_string(a) + "]",
                           skew.size() == 0 ? 0.0 : skew.cwiseAbs().maxCoeff()};
      audit.max_residual = std::max(audit.max_residual, entry.residual);
      audit.full_m_residuals.push_back(entry);
    }
  }
  return audit;
}

UnimodularityAudit unimodularity_audit(const HomogeneousModel& model) {
  UnimodularityAudit audit;
  audit.defect = trace_vector(model.algebra()).lpNorm<Eigen::Infinity>();
  const Subspace kernel =
      unimodular_kernel(model.algebra(), model.tolerances().eps_rank);
  audit.kernel_dim = kernel.dim();
  audit.kernel_ideal_residual =
      is_ideal(model.algebra(), kernel, model.tolerances().eps_rank).residual;
  return audit;
}

}  // namespace metriclie
