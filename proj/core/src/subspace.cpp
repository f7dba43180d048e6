#include "metriclie/subspace.hpp"

#include <Eigen/SVD>
#include <utility>

namespace metriclie {

Subspace::Subspace(int ambient_dim, Mat span_rows, std::string label)
    : ambient_(ambient_dim), span_(std::move(span_rows)), label_(std::move(label)) {
  require(ambient_ > 0, "subspace: ambient dimension must be positive");
  if (span_.size() == 0) span_.resize(0, ambient_);
  require(span_.cols() == ambient_,
          "subspace: span rows must have length equal to the ambient dimension");
  const int r = dim();
  if (r == 0) {
    onb_.resize(ambient_, 0);
    min_sv_ = 0.0;
    return;
  }
  Eigen::JacobiSVD<Mat> svd(span_.transpose(), Eigen::ComputeThinU);
  onb_ = svd.matrixU();
  min_sv_ = svd.singularValues()(r - 1);
}

Subspace Subspace::zero(int ambient_dim, std::string label) {
  return Subspace(ambient_dim, Mat(0, ambient_dim), std::move(label));
}

Subspace Subspace::full(int ambient_dim, std::string label) {
  return Subspace(ambient_dim, Mat::Identity(ambient_dim, ambient_dim),
                  std::move(label));
}

Subspace Subspace::of_vector(const Vec& v, std::string label) {
  Mat rows(1, v.size());
  rows.row(0) = v.transpose();
  return Subspace(static_cast<int>(v.size()), rows, std::move(label));
}

double Subspace::distance(const Vec& x) const {
  require(x.size() == ambient_, "subspace: vector has wrong dimension");
  if (dim() == 0) return x.norm();
  return (x - onb_ * (onb_.transpose() * x)).norm();
}

double Subspace::distance(const Subspace& other) const {
  require(other.ambient_dim() == ambient_, "subspace: ambient dimensions differ");
  double worst = 0.0;
  for (int i = 0; i < other.dim(); ++i) {
    worst = std::max(worst, distance(Vec(other.span().row(i).transpose())));
  }
  return worst;
}

Vec Subspace::project(const Vec& x) const {
  require(x.size() == ambient_, "subspace: vector has wrong dimension");
  if (dim() == 0) return Vec::Zero(ambient_);
  return onb_ * (onb_.transpose() * x);
}

Subspace intersection(const Subspace& a, const Subspace& b, double eps_rank,
                      std::string label) {
  require(a.ambient_dim() == b.ambient_dim(),
          "intersection: ambient dimensions differ");
  const int n = a.ambient_dim();
  if (a.dim() == 0 || b.dim() == 0) return Subspace::zero(n, std::move(label));
  // x lies in both spans iff both orthogonal projections fix it.
  Mat stacked(2 * n, n);
  stacked.topRows(n) = Mat::Identity(n, n) - a.onb() * a.onb().transpose();
  stacked.bottomRows(n) = Mat::Identity(n, n) - b.onb() * b.onb().transpose();
  return kernel_subspace(stacked, eps_rank, std::move(label));
}

Subspace kernel_subspace(const Mat& m, double eps_rank, std::string label) {
  const int n = static_cast<int>(m.cols());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = eps_rank * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > cutoff) ++rank;
  }
  const int null_dim = n - rank;
  if (null_dim == 0) return Subspace::zero(n, std::move(label));
  Mat rows = svd.matrixV().rightCols(null_dim).transpose();
  return Subspace(n, rows, std::move(label));
}

}  // namespace metriclie
