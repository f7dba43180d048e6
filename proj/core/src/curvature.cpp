#include "metriclie/curvature.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

namespace metriclie {

Vec z_vector(const HomogeneousModel& model) {
  const int r = model.dim_m();
  Vec traces(r);
  for (int j = 0; j < r; ++j) {
    traces[j] = trace_ad(model.algebra(),
                         Vec(model.complement().span().row(j).transpose()));
  }
  if (r == 0) return traces;
  Mat metric_sym = 0.5 * (model.metric() + model.metric().transpose());
  return metric_sym.llt().solve(traces);
}

RicciResult ricci(const HomogeneousModel& model, const Vec& xm) {
  require(xm.size() == model.dim_m(), "ricci: direction must be in m-coordinates");
  const int r = model.dim_m();
  RicciResult res;
  if (r == 0) return res;

  const Vec x_amb = model.ambient_from_m(xm);
  res.killing_term = -0.5 * x_amb.dot(model.killing() * x_amb);

  double bracket_sum = 0.0;
  for (int i = 0; i < r; ++i) {
    const Vec w = model.algebra().bracket(x_amb, Vec(model.onb_m_ambient().col(i)));
    const Vec wm = model.m_coords(w);
    bracket_sum += model.g_norm_sq(wm);
  }
  res.bracket_term = -0.5 * bracket_sum;

  double double_sum = 0.0;
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const Vec w = model.algebra().bracket(Vec(model.onb_m_ambient().col(i)),
                                            Vec(model.onb_m_ambient().col(j)));
      const double inner = model.g_inner(model.m_coords(w), xm);
      double_sum += inner * inner;
    }
  }
  res.double_sum_term = 0.25 * double_sum;

  const Vec zm = z_vector(model);
  const Vec zw = model.algebra().bracket(Vec(model.ambient_from_m(zm)), x_amb);
  res.z_term = -model.g_inner(model.m_coords(zw), xm);

  res.value = res.killing_term + res.bracket_term + res.double_sum_term + res.z_term;
  return res;
}

Mat ricci_matrix(const HomogeneousModel& model) {
  const int r = model.dim_m();
  Mat ric = Mat::Zero(r, r);
  Vec ei = Vec::Zero(r);
  Vec ej = Vec::Zero(r);
  for (int i = 0; i < r; ++i) {
    ei.setZero();
    ei[i] = 1.0;
    ric(i, i) = ricci(model, ei).value;
    for (int j = i + 1; j < r; ++j) {
      ej.setZero();
      ej[j] = 1.0;
      const double plus = ricci(model, Vec(ei + ej)).value;
      const double minus = ricci(model, Vec(ei - ej)).value;
      ric(i, j) = ric(j, i) = 0.25 * (plus - minus);
    }
  }
  return ric;
}

RicStarContext make_ric_star_context(const HomogeneousModel& model,
                                     const Subspace& k) {
  const double eps = model.tolerances().eps_rank;
  const int n = model.dim();
  RicStarContext ctx{false, {}, Subspace::zero(n, "m1"), Subspace::zero(n, "m2"),
                     std::nullopt, Mat(), Mat(), 0.0};
  require(k.ambient_dim() == n, "ric_star: k ambient dimension mismatch");

  if (!k.contains(model.isotropy(), eps)) {
    ctx.failures.push_back("k does not contain the isotropy subalgebra");
  }
  double closure = 0.0;
  for (int a = 0; a < k.dim(); ++a) {
    for (int b = a + 1; b < k.dim(); ++b) {
      const Vec w = model.algebra().bracket(Vec(k.span().row(a).transpose()),
                                            Vec(k.span().row(b).transpose()));
      closure = std::max(closure, k.distance(w));
    }
  }
  if (closure > eps) {
    std::ostringstream os;
    os << "k is not a subalgebra (closure residual " << closure << ")";
    ctx.failures.push_back(os.str());
  }
  if (!ctx.failures.empty()) return ctx;

  ctx.m1 = intersection(k, model.complement(), eps, "m1");
  if (k.dim() != model.dim_isotropy() + ctx.m1.dim()) {
    ctx.failures.push_back("k does not split as isotropy + (k intersect m)");
    return ctx;
  }

  SplitPair split{Subspace::zero(n), Subspace::zero(n), 0.0, 0.0};
  try {
    split = make_split(model, ctx.m1);
  } catch (const InputError& e) {
    ctx.failures.push_back(e.what());
    return ctx;
  }
  ctx.m2 = split.m2;

  // Evidence that ad(k) acts by skew operators on (m, g): the infinitesimal
  // signature of a compactly embedded subalgebra. Reported, never decided.
  const int r = model.dim_m();
  for (int a = 0; a < k.dim(); ++a) {
    Mat ad_m(r, r);
    for (int b = 0; b < r; ++b) {
      const Vec w = model.algebra().bracket(
          Vec(k.span().row(a).transpose()),
          Vec(model.complement().span().row(b).transpose()));
      ad_m.col(b) = model.m_coords(w);
    }
    const Mat skew = model.metric() * ad_m + ad_m.transpose() * model.metric();
    ctx.k_skew_residual = std::max(
        ctx.k_skew_residual, skew.size() == 0 ? 0.0 : skew.cwiseAbs().maxCoeff());
  }

  // Auxiliary model on k: basis = isotropy rows then m1 rows, structure
  // constants induced by projecting brackets back onto that basis.
  const int kh = model.dim_isotropy();
  const int d1 = ctx.m1.dim();
  const int d = kh + d1;
  Mat basis_rows(d, n);
  if (kh > 0) basis_rows.topRows(kh) = model.isotropy().span();
  if (d1 > 0) basis_rows.bottomRows(d1) = ctx.m1.span();

  StructureTensor aux_tensor(d == 0 ? 1 : d);
  if (d > 0) {
    const auto solver = basis_rows.transpose().completeOrthogonalDecomposition();
    for (int a = 0; a < d; ++a) {
      for (int b = a + 1; b < d; ++b) {
        const Vec w = model.algebra().bracket(Vec(basis_rows.row(a).transpose()),
                                              Vec(basis_rows.row(b).transpose()));
        const Vec coords = solver.solve(w);
        if ((basis_rows.transpose() * coords - w).norm() > eps * (1.0 + w.norm())) {
          ctx.failures.push_back("bracket of k-basis vectors leaves k");
          return ctx;
        }
        for (int c = 0; c < d; ++c) {
          if (coords[c] != 0.0) aux_tensor.set_bracket(a, b, c, coords[c]);
        }
      }
    }
  }

  ctx.m1_coords.resize(r, d1);
  for (int i = 0; i < d1; ++i) {
    ctx.m1_coords.col(i) = model.m_coords(Vec(ctx.m1.span().row(i).transpose()));
  }
  const Mat metric_m1 = ctx.m1_coords.transpose() * model.metric() * ctx.m1_coords;

  if (d > 0) {
    Mat iso_rows = Mat::Zero(kh, d);
    iso_rows.leftCols(kh) = Mat::Identity(kh, kh);
    Mat comp_rows = Mat::Zero(d1, d);
    comp_rows.rightCols(d1) = Mat::Identity(d1, d1);
    try {
      ctx.aux = build_model(model.name() + "#ricstar", aux_tensor,
                            Subspace(d, iso_rows, "h"),
                            Mat(0.5 * (metric_m1 + metric_m1.transpose())),
                            Subspace(d, comp_rows, "m1"), model.tolerances());
    } catch (const ValidationError& e) {
      ctx.failures.push_back(std::string("auxiliary model invalid: ") + e.what());
      return ctx;
    }
  }

  // g-orthonormal basis of m2 (Cholesky of the restricted metric).
  const int d2 = ctx.m2.dim();
  Mat m2_coords(r, d2);
  for (int i = 0; i < d2; ++i) {
    m2_coords.col(i) = model.m_coords(Vec(ctx.m2.span().row(i).transpose()));
  }
  if (d2 > 0) {
    Mat gram = m2_coords.transpose() * model.metric() * m2_coords;
    gram = 0.5 * (gram + gram.transpose());
    Eigen::LLT<Mat> llt(gram);
    const Mat l = llt.matrixL();
    const Mat c =
        l.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(d2, d2));
    ctx.m2_onb_coords = m2_coords * c;
  } else {
    ctx.m2_onb_coords.resize(r, 0);
  }

  ctx.ok = true;
  return ctx;
}

RicStarEvaluation ric_star_evaluate(const HomogeneousModel& model,
                                    const RicStarContext& ctx, const Vec& x_m1) {
  require(ctx.ok, "ric_star_evaluate: context preconditions failed");
  const int d1 = ctx.m1.dim();
  require(x_m1.size() == d1, "ric_star_evaluate: direction must be in m1 coordinates");

  RicStarEvaluation ev;
  ev.x = x_m1;
  ev.left = (ctx.aux && ctx.aux->dim_m() > 0) ? ricci(*ctx.aux, x_m1).value : 0.0;

  const Vec xm = d1 > 0 ? Vec(ctx.m1_coords * x_m1) : Vec(Vec::Zero(model.dim_m()));
  const double base = ricci(model, xm).value;

  // Projection of the m-part onto m1, taken g-orthogonally within m.
  const Mat gram1 = ctx.m1_coords.transpose() * model.metric() * ctx.m1_coords;
  Eigen::LLT<Mat> llt1(Mat(0.5 * (gram1 + gram1.transpose())));

  double correction = 0.0;
  const int d2 = ctx.m2.dim();
  for (int i = 0; i < d2; ++i) {
    const Vec yi = model.ambient_from_m(Vec(ctx.m2_onb_coords.col(i)));
    for (int j = i + 1; j < d2; ++j) {
      const Vec yj = model.ambient_from_m(Vec(ctx.m2_onb_coords.col(j)));
      const Vec wm = model.m_coords(model.algebra().bracket(yi, yj));
      Vec wm1 = Vec::Zero(model.dim_m());
      if (d1 > 0) {
        const Vec a = llt1.solve(ctx.m1_coords.transpose() * model.metric() * wm);
        wm1 = ctx.m1_coords * a;
      }
      const double inner = model.g_inner(wm1, xm);
      correction += inner * inner;
    }
  }
  ev.right = base - 0.5 * correction;
  ev.difference = std::abs(ev.left - ev.right);
  return ev;
}

RicStarEvaluation ric_star_identity(const HomogeneousModel& model,
                                    const Subspace& k, const Vec& x_m1) {
  const RicStarContext ctx = make_ric_star_context(model, k);
  if (!ctx.ok) {
    std::string msg = "ric_star preconditions failed:";
    for (const auto& f : ctx.failures) msg += " " + f + ";";
    throw InputError(msg);
  }
  return ric_star_evaluate(model, ctx, x_m1);
}

}  // namespace metriclie
