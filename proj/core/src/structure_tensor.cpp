#include "metriclie/structure_tensor.hpp"

#include <cmath>

namespace metriclie {

StructureTensor::StructureTensor(int dim) : dim_(dim) {
  require(dim > 0, "structure tensor: dimension must be positive");
  c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

void StructureTensor::set_bracket(int i, int j, int k, double value) {
  require(i >= 0 && i < dim_ && j >= 0 && j < dim_ && k >= 0 && k < dim_,
          "structure tensor: bracket index out of range");
  c_[offset(i, j, k)] = value;
  c_[offset(j, i, k)] = -value;
}

Vec StructureTensor::bracket(const Vec& x, const Vec& y) const {
  require(x.size() == dim_ && y.size() == dim_,
          "bracket: vector dimension mismatch");
  Vec out = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y[j] == 0.0) continue;
      const double w = x[i] * y[j];
      for (int k = 0; k < dim_; ++k) out[k] += w * coeff(i, j, k);
    }
  }
  return out;
}

Mat StructureTensor::ad(const Vec& u) const {
  require(u.size() == dim_, "ad: vector dimension mismatch");
  Mat a = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (u[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      for (int k = 0; k < dim_; ++k) a(k, j) += u[i] * coeff(i, j, k);
    }
  }
  return a;
}

Mat StructureTensor::ad_basis(int i) const {
  require(i >= 0 && i < dim_, "ad_basis: index out of range");
  Mat a = Mat::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    for (int k = 0; k < dim_; ++k) a(k, j) = coeff(i, j, k);
  }
  return a;
}

StructureValidation validate_structure(const StructureTensor& t, double eps_struct) {
  const int n = t.dim();
  StructureValidation v;
  v.eps = eps_struct;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        v.antisymmetry_residual = std::max(
            v.antisymmetry_residual, std::abs(t.coeff(i, j, k) + t.coeff(j, i, k)));
      }
    }
  }
  // Cyclic sum over ordered triples; brackets evaluated from the raw tensor.
  std::vector<Vec> basis(n, Vec::Zero(n));
  for (int i = 0; i < n; ++i) basis[i][i] = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        const Vec sum = t.bracket(basis[i], t.bracket(basis[j], basis[l])) +
                        t.bracket(basis[j], t.bracket(basis[l], basis[i])) +
                        t.bracket(basis[l], t.bracket(basis[i], basis[j]));
        v.jacobi_residual = std::max(v.jacobi_residual, sum.norm());
      }
    }
  }
  return v;
}

double killing_form(const StructureTensor& t, const Vec& x, const Vec& y) {
  return (t.ad(x) * t.ad(y)).trace();
}

Mat killing_matrix(const StructureTensor& t) {
  const int n = t.dim();
  std::vector<Mat> ads(n);
  for (int i = 0; i < n; ++i) ads[i] = t.ad_basis(i);
  Mat b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      b(i, j) = b(j, i) = (ads[i] * ads[j]).trace();
    }
  }
  return b;
}

double trace_ad(const StructureTensor& t, const Vec& x) {
  return t.ad(x).trace();
}

Vec trace_vector(const StructureTensor& t) {
  const int n = t.dim();
  Vec tr(n);
  for (int i = 0; i < n; ++i) tr[i] = t.ad_basis(i).trace();
  return tr;
}

Subspace unimodular_kernel(const StructureTensor& t, double eps_rank) {
  const Vec tr = trace_vector(t);
  if (tr.lpNorm<Eigen::Infinity>() <= eps_rank) {
    return Subspace::full(t.dim(), "unimodular_kernel");
  }
  Mat functional(1, t.dim());
  functional.row(0) = tr.transpose();
  return kernel_subspace(functional, eps_rank, "unimodular_kernel");
}

SubspaceTestResult is_ideal(const StructureTensor& t, const Subspace& s,
                            double eps_rank) {
  require(s.ambient_dim() == t.dim(), "is_ideal: ambient dimension mismatch");
  SubspaceTestResult r;
  Vec e = Vec::Zero(t.dim());
  for (int i = 0; i < t.dim(); ++i) {
    e.setZero();
    e[i] = 1.0;
    for (int a = 0; a < s.dim(); ++a) {
      const Vec w = t.bracket(e, Vec(s.span().row(a).transpose()));
      r.residual = std::max(r.residual, s.distance(w));
    }
  }
  r.value = r.residual <= eps_rank;
  return r;
}

SubspaceTestResult is_abelian(const StructureTensor& t, const Subspace& s,
                              double eps_struct) {
  require(s.ambient_dim() == t.dim(), "is_abelian: ambient dimension mismatch");
  SubspaceTestResult r;
  for (int a = 0; a < s.dim(); ++a) {
    for (int b = a + 1; b < s.dim(); ++b) {
      const Vec w = t.bracket(Vec(s.span().row(a).transpose()),
                              Vec(s.span().row(b).transpose()));
      r.residual = std::max(r.residual, w.norm());
    }
  }
  r.value = r.residual <= eps_struct;
  return r;
}

namespace {

// Taylor degree 16 with the matrix scaled below 1/2 in 1-norm keeps the
// series tail under 1e-19, well inside the 1e-13 contract.
constexpr int kTaylorDegree = 16;
constexpr double kScaleThreshold = 0.5;

double one_norm(const Mat& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) best = std::max(best, a.col(j).cwiseAbs().sum());
  return best;
}

}  // namespace

Mat matrix_exponential(const Mat& a) {
  require(a.rows() == a.cols(), "matrix_exponential: matrix must be square");
  const int n = static_cast<int>(a.rows());
  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kScaleThreshold) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaleThreshold)));
    squarings = std::min(squarings, 64);
  }
  const Mat b = a / std::ldexp(1.0, squarings);
  Mat result = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= kTaylorDegree; ++k) {
    term = (term * b) / static_cast<double>(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

Mat ad_exponential(const StructureTensor& t, const Vec& v, double s) {
  require(v.size() == t.dim(), "ad_exponential: vector dimension mismatch");
  return matrix_exponential(Mat(s * t.ad(v)));
}

}  // namespace metriclie
