#ifndef METRICLIE_SUBSPACE_HPP
#define METRICLIE_SUBSPACE_HPP

#include <string>

#include "metriclie/types.hpp"

namespace metriclie {

/// Subspace of the algebra, spanned by the rows of `span`. Keeps a cached
/// Euclidean-orthonormal basis (columns of onb) for membership tests and
/// projections. A 0-row span is the zero subspace.
class Subspace {
 public:
  Subspace(int ambient_dim, Mat span_rows, std::string label = "");

  static Subspace zero(int ambient_dim, std::string label = "");
  static Subspace full(int ambient_dim, std::string label = "");
  static Subspace of_vector(const Vec& v, std::string label = "");

  int ambient_dim() const { return ambient_; }
  int dim() const { return static_cast<int>(span_.rows()); }
  const Mat& span() const { return span_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  /// n x dim matrix with orthonormal columns spanning the same space.
  const Mat& onb() const { return onb_; }

  /// Smallest singular value of the span rows; rows are independent when
  /// this exceeds eps_rank.
  double min_singular_value() const { return min_sv_; }
  bool has_independent_rows(double eps_rank) const {
    return dim() == 0 || min_sv_ > eps_rank;
  }

  /// Euclidean distance from x to the subspace.
  double distance(const Vec& x) const;
  bool contains(const Vec& x, double eps_rank) const {
    return distance(x) <= eps_rank;
  }

  /// Max distance of the other span's rows from this subspace.
  double distance(const Subspace& other) const;
  bool contains(const Subspace& other, double eps_rank) const {
    return distance(other) <= eps_rank;
  }

  /// Euclidean orthogonal projection onto the subspace.
  Vec project(const Vec& x) const;

 private:
  int ambient_;
  Mat span_;
  std::string label_;
  Mat onb_;
  double min_sv_ = 0.0;
};

/// Intersection of two subspaces of the same ambient space; the result has
/// orthonormal span rows. Directions are kept when both orthogonal
/// projections preserve them to within eps_rank.
Subspace intersection(const Subspace& a, const Subspace& b, double eps_rank,
                      std::string label = "");

/// Kernel of a (possibly rank-deficient) matrix as a subspace of R^cols;
/// singular directions below eps_rank * max(1, sigma_max) are kept.
Subspace kernel_subspace(const Mat& m, double eps_rank, std::string label = "");

}  // namespace metriclie

#endif
