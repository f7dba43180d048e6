#include "metriclie/homogeneous_model.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <sstream>
#include <utility>

namespace metriclie {

namespace {

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

std::string ModelValidation::describe() const {
  std::ostringstream os;
  os << "antisymmetry residual   " << structure.antisymmetry_residual << "\n"
     << "jacobi residual         " << structure.jacobi_residual << "\n"
     << "direct-sum min singular " << span_min_singular << "\n"
     << "isotropy subalgebra res " << isotropy_subalgebra_residual << "\n"
     << "reductivity residual    " << reductivity_residual << "\n"
     << "metric min eigenvalue   " << metric_min_eigenvalue << "\n"
     << "metric ad(h)-skew res   " << metric_skew_residual << "\n"
     << "effective presentation  " << (effective ? "yes" : "no") << "\n";
  for (const auto& issue : errors) {
    os << "error: " << issue.invariant << ": " << issue.message
       << " (residual " << issue.residual << ")\n";
  }
  for (const auto& issue : warnings) {
    os << "warning: " << issue.invariant << ": " << issue.message
       << " (residual " << issue.residual << ")\n";
  }
  return os.str();
}

HomogeneousModel build_model(std::string name, StructureTensor algebra,
                             Subspace isotropy, Mat metric,
                             std::optional<Subspace> complement, Tolerances tol,
                             bool force, std::vector<std::string> basis_names) {
  const int n = algebra.dim();
  require(isotropy.ambient_dim() == n, "build_model: isotropy ambient mismatch");

  ModelValidation val;
  auto error = [&](const std::string& invariant, const std::string& message,
                   double residual) {
    val.errors.push_back({invariant, message, residual, true});
  };

  val.structure = validate_structure(algebra, tol.eps_struct);
  if (!val.structure.passed()) {
    error("lie_axioms",
          "structure constants violate antisymmetry or Jacobi",
          std::max(val.structure.antisymmetry_residual,
                   val.structure.jacobi_residual));
  }

  if (isotropy.dim() > 0 && !isotropy.has_independent_rows(tol.eps_rank)) {
    error("span_rank", "isotropy span rows are linearly dependent",
          isotropy.min_singular_value());
  }

  Mat killing = killing_matrix(algebra);

  if (!complement.has_value()) {
    if (isotropy.dim() == 0) {
      complement = Subspace::full(n, "m");
    } else if (isotropy.dim() == n) {
      complement = Subspace::zero(n, "m");
    } else {
      Eigen::JacobiSVD<Mat> svd(killing);
      const double sv_min = svd.singularValues().minCoeff();
      if (sv_min <= tol.eps_rank) {
        // Without a complement there is nothing to build, forced or not.
        error("complement",
              "no complement supplied and the Killing form is degenerate; "
              "a complement is required",
              sv_min);
        throw ValidationError("model validation failed:\n" + val.describe(), val);
      }
      // B-orthogonal complement of the isotropy.
      complement = kernel_subspace(Mat(isotropy.span() * killing), tol.eps_rank, "m");
    }
  }
  require(complement->ambient_dim() == n, "build_model: complement ambient mismatch");

  const int k = isotropy.dim();
  const int r = complement->dim();
  val.dimensions_match = (k + r == n);
  if (!val.dimensions_match) {
    error("direct_sum", "isotropy and complement dimensions do not add up to dim(g)",
          std::abs(k + r - n));
  }
  if (r > 0 && !complement->has_independent_rows(tol.eps_rank)) {
    error("span_rank", "complement span rows are linearly dependent",
          complement->min_singular_value());
  }

  // Stacked span must have full rank for g = h (+) m.
  Mat stacked(k + r, n);
  if (k > 0) stacked.topRows(k) = isotropy.span();
  if (r > 0) stacked.bottomRows(r) = complement->span();
  if (val.dimensions_match) {
    Eigen::JacobiSVD<Mat> svd(stacked);
    val.span_min_singular = svd.singularValues().minCoeff();
    if (val.span_min_singular <= tol.eps_rank) {
      error("direct_sum", "isotropy and complement do not intersect trivially",
            val.span_min_singular);
    }
  }

  // [h, h] inside h.
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const Vec w = algebra.bracket(Vec(isotropy.span().row(a).transpose()),
                                    Vec(isotropy.span().row(b).transpose()));
      val.isotropy_subalgebra_residual =
          std::max(val.isotropy_subalgebra_residual, isotropy.distance(w));
    }
  }
  if (val.isotropy_subalgebra_residual > tol.eps_rank) {
    error("isotropy_subalgebra", "isotropy is not a subalgebra",
          val.isotropy_subalgebra_residual);
  }

  // [h, m] inside m (reductivity).
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < r; ++b) {
      const Vec w = algebra.bracket(Vec(isotropy.span().row(a).transpose()),
                                    Vec(complement->span().row(b).transpose()));
      val.reductivity_residual = std::max(val.reductivity_residual,
                                          complement->distance(w));
    }
  }
  if (val.reductivity_residual > tol.eps_rank) {
    error("reductivity", "[h, m] does not stay inside m",
          val.reductivity_residual);
  }

  require(metric.rows() == r && metric.cols() == r,
          "build_model: metric must be r x r on m-coordinates");
  val.metric_symmetry_residual = max_abs(Mat(metric - metric.transpose()));
  if (val.metric_symmetry_residual > tol.eps_struct) {
    error("metric_symmetric", "metric matrix is not symmetric",
          val.metric_symmetry_residual);
  }
  Mat metric_sym = 0.5 * (metric + metric.transpose());
  if (r > 0) {
    Eigen::SelfAdjointEigenSolver<Mat> eig(metric_sym);
    val.metric_min_eigenvalue = eig.eigenvalues().minCoeff();
    if (val.metric_min_eigenvalue <= tol.eps_rank) {
      std::ostringstream os;
      os << "metric is not positive definite (eigenvalue "
         << val.metric_min_eigenvalue << ")";
      error("metric_spd", os.str(), val.metric_min_eigenvalue);
    }
  } else {
    val.metric_min_eigenvalue = 0.0;
  }

  // Direct-sum coordinates; pseudo-inverse keeps forced near-miss models usable.
  Mat basis_cols(n, k + r);
  if (k > 0) basis_cols.leftCols(k) = isotropy.span().transpose();
  if (r > 0) basis_cols.rightCols(r) = complement->span().transpose();
  Mat basis_inverse;
  if (val.dimensions_match) {
    basis_inverse = basis_cols.completeOrthogonalDecomposition().pseudoInverse();
  } else {
    basis_inverse = Mat::Zero(k + r, n);
  }

  // ad_H restricted to m must be skew with respect to g.
  const bool metric_usable = val.metric_min_eigenvalue > tol.eps_rank || r == 0;
  for (int a = 0; a < k && val.dimensions_match; ++a) {
    Mat ad_m(r, r);
    for (int b = 0; b < r; ++b) {
      const Vec w = algebra.bracket(Vec(isotropy.span().row(a).transpose()),
                                    Vec(complement->span().row(b).transpose()));
      ad_m.col(b) = (basis_inverse * w).tail(r);
    }
    val.metric_skew_residual =
        std::max(val.metric_skew_residual,
                 max_abs(Mat(metric_sym * ad_m + ad_m.transpose() * metric_sym)));
  }
  if (val.metric_skew_residual > tol.eps_struct) {
    error("metric_invariance", "ad(h) does not act skew-symmetrically on (m, g)",
          val.metric_skew_residual);
  }

  HomogeneousModel model;
  model.name_ = std::move(name);
  model.algebra_ = std::move(algebra);
  model.isotropy_ = std::move(isotropy);
  model.complement_ = std::move(*complement);
  model.metric_ = std::move(metric);
  model.tol_ = tol;
  model.killing_ = std::move(killing);
  model.basis_inverse_ = std::move(basis_inverse);
  if (basis_names.empty()) {
    for (int i = 0; i < n; ++i) basis_names.push_back("e" + std::to_string(i + 1));
  }
  require(static_cast<int>(basis_names.size()) == n,
          "build_model: wrong number of basis names");
  model.basis_names_ = std::move(basis_names);

  // g-orthonormal basis of m from the Cholesky factor of the metric.
  if (r > 0 && metric_usable) {
    Eigen::LLT<Mat> llt(metric_sym);
    if (llt.info() != Eigen::Success) {
      error("metric_spd", "Cholesky factorization of the metric failed",
            val.metric_min_eigenvalue);
      model.onb_m_coords_ = Mat::Identity(r, r);
    } else {
      Mat l = llt.matrixL();
      model.onb_m_coords_ =
          l.transpose().triangularView<Eigen::Upper>().solve(Mat::Identity(r, r));
    }
  } else {
    model.onb_m_coords_ = Mat::Identity(r, r);
  }
  model.onb_m_ambient_ = model.complement_.span().transpose() * model.onb_m_coords_;

  // Effectiveness: the isotropy should contain no nonzero ideal.
  model.validation_ = val;
  if (model.isotropy_.dim() > 0 && val.ok()) {
    const Subspace ideal = max_ideal_in_isotropy(model);
    model.validation_.noneffective_ideal_dim = ideal.dim();
    model.validation_.effective = ideal.dim() == 0;
    if (!model.validation_.effective) {
      std::ostringstream os;
      os << "isotropy contains a " << ideal.dim()
         << "-dimensional ideal of g; the action is not effective";
      model.validation_.warnings.push_back({"effectiveness", os.str(),
                                            static_cast<double>(ideal.dim()),
                                            false});
    }
  }

  if (!model.validation_.ok() && !force) {
    throw ValidationError("model validation failed:\n" + model.validation_.describe(),
                          model.validation_);
  }

  // Cache sanity: the cached basis must be g-orthonormal.
  if (model.validation_.ok() && r > 0) {
    const Mat gram = model.onb_m_coords_.transpose() * metric_sym * model.onb_m_coords_;
    if (max_abs(Mat(gram - Mat::Identity(r, r))) > 1e-8) {
      throw InternalError("cached m-basis failed the g-orthonormality check");
    }
  }
  return model;
}

Vec HomogeneousModel::m_coords(const Vec& x) const {
  require(x.size() == dim(), "m_coords: vector dimension mismatch");
  return (basis_inverse_ * x).tail(dim_m());
}

Vec HomogeneousModel::h_coords(const Vec& x) const {
  require(x.size() == dim(), "h_coords: vector dimension mismatch");
  return (basis_inverse_ * x).head(dim_isotropy());
}

Vec HomogeneousModel::m_part_ambient(const Vec& x) const {
  return complement_.span().transpose() * m_coords(x);
}

Vec HomogeneousModel::h_part_ambient(const Vec& x) const {
  return isotropy_.span().transpose() * h_coords(x);
}

Vec HomogeneousModel::ambient_from_m(const Vec& xm) const {
  require(xm.size() == dim_m(), "ambient_from_m: coordinate dimension mismatch");
  return complement_.span().transpose() * xm;
}

double HomogeneousModel::g_inner(const Vec& xm, const Vec& ym) const {
  require(xm.size() == dim_m() && ym.size() == dim_m(),
          "g_inner: coordinate dimension mismatch");
  return xm.dot(metric_ * ym);
}

Mat restricted_ad(const HomogeneousModel& model, const Vec& u, const Subspace& s) {
  require(u.size() == model.dim(), "restricted_ad: vector dimension mismatch");
  require(s.ambient_dim() == model.dim(), "restricted_ad: subspace ambient mismatch");
  const int d = s.dim();
  Mat a = Mat::Zero(d, d);
  if (d == 0) return a;

  const double eps = model.tolerances().eps_rank;
  bool inside_m = true;
  for (int j = 0; j < d && inside_m; ++j) {
    inside_m = model.complement().contains(Vec(s.onb().col(j)), eps);
  }

  if (inside_m && model.dim_m() > 0) {
    // g-orthogonal projection of the m-part onto s, within m.
    Mat w_coords(model.dim_m(), d);
    for (int j = 0; j < d; ++j) {
      w_coords.col(j) = model.m_coords(Vec(s.onb().col(j)));
    }
    const Mat gram = w_coords.transpose() * model.metric() * w_coords;
    Eigen::LLT<Mat> llt(gram);
    for (int j = 0; j < d; ++j) {
      const Vec w = model.algebra().bracket(u, Vec(s.onb().col(j)));
      const Vec wm = model.m_coords(w);
      a.col(j) = llt.solve(w_coords.transpose() * model.metric() * wm);
    }
  } else {
    for (int j = 0; j < d; ++j) {
      const Vec w = model.algebra().bracket(u, Vec(s.onb().col(j)));
      a.col(j) = s.onb().transpose() * w;
    }
  }
  return a;
}

SplitPair make_split(const HomogeneousModel& model, const Subspace& m1) {
  require(m1.ambient_dim() == model.dim(), "make_split: ambient dimension mismatch");
  const double eps = model.tolerances().eps_rank;
  const int r = model.dim_m();

  for (int i = 0; i < m1.dim(); ++i) {
    const Vec row = m1.span().row(i).transpose();
    if (model.complement().distance(row) > eps * (1.0 + row.norm())) {
      throw InputError("make_split: m1 is not contained in m");
    }
  }

  SplitPair split{m1, Subspace::zero(model.dim(), "m2"), 0.0, 0.0};

  // ad(h)-invariance of m1.
  for (int a = 0; a < model.dim_isotropy(); ++a) {
    const Vec h = model.isotropy().span().row(a).transpose();
    for (int i = 0; i < m1.dim(); ++i) {
      const Vec w = model.algebra().bracket(h, Vec(m1.onb().col(i)));
      split.invariance_residual = std::max(split.invariance_residual, m1.distance(w));
    }
  }
  if (split.invariance_residual > eps) {
    throw InputError("make_split: m1 is not ad(h)-invariant");
  }

  // m2 = g-orthogonal complement of m1 inside m, computed in m-coordinates.
  if (m1.dim() == 0) {
    split.m2 = Subspace(model.dim(), model.complement().span(), "m2");
  } else if (m1.dim() == r) {
    split.m2 = Subspace::zero(model.dim(), "m2");
  } else {
    Mat w1(r, m1.dim());
    for (int i = 0; i < m1.dim(); ++i) {
      w1.col(i) = model.m_coords(Vec(m1.onb().col(i)));
    }
    const Subspace kernel = kernel_subspace(Mat(w1.transpose() * model.metric()), eps);
    Mat rows = kernel.span() * model.complement().span();
    split.m2 = Subspace(model.dim(), rows, "m2");
  }

  for (int i = 0; i < m1.dim(); ++i) {
    const Vec ui = model.m_coords(Vec(m1.onb().col(i)));
    for (int j = 0; j < split.m2.dim(); ++j) {
      const Vec vj = model.m_coords(Vec(split.m2.span().row(j).transpose()));
      split.orthogonality_residual =
          std::max(split.orthogonality_residual, std::abs(model.g_inner(ui, vj)));
    }
  }

  // ad(h)-invariance of m2 (holds automatically for valid models; recorded).
  for (int a = 0; a < model.dim_isotropy(); ++a) {
    const Vec h = model.isotropy().span().row(a).transpose();
    for (int i = 0; i < split.m2.dim(); ++i) {
      const Vec w = model.algebra().bracket(h, Vec(split.m2.span().row(i).transpose()));
      split.invariance_residual = std::max(split.invariance_residual,
                                           split.m2.distance(w));
    }
  }
  return split;
}

Subspace max_ideal_in_isotropy(const HomogeneousModel& model) {
  const int n = model.dim();
  const double eps = model.tolerances().eps_rank;
  Mat q = model.isotropy().onb();
  while (q.cols() > 0) {
    const int d = static_cast<int>(q.cols());
    const Mat p_perp = Mat::Identity(n, n) - q * q.transpose();
    Mat stacked(n * n, d);
    for (int i = 0; i < n; ++i) {
      stacked.middleRows(i * n, n) = p_perp * model.algebra().ad_basis(i) * q;
    }
    const Subspace coeff_kernel = kernel_subspace(stacked, eps);
    if (coeff_kernel.dim() == d) break;
    if (coeff_kernel.dim() == 0) {
      q.resize(n, 0);
      break;
    }
    const Mat next = q * coeff_kernel.span().transpose();
    q = Subspace(n, next.transpose()).onb();
  }
  return Subspace(n, q.transpose(), "ideal_in_isotropy");
}

}  // namespace metriclie
