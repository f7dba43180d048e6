#ifndef METRICLIE_STRUCTURE_TENSOR_HPP
#define METRICLIE_STRUCTURE_TENSOR_HPP

#include <vector>

#include "metriclie/subspace.hpp"
#include "metriclie/types.hpp"

namespace metriclie {

/// Finite-dimensional Lie algebra given by its structure constants in a
/// fixed basis: [e_i, e_j] = sum_k c(i,j,k) e_k. Indices are 0-based here;
/// the file format is 1-based.
class StructureTensor {
 public:
  explicit StructureTensor(int dim);

  static StructureTensor zero(int dim) { return StructureTensor(dim); }

  int dim() const { return dim_; }

  double coeff(int i, int j, int k) const { return c_[offset(i, j, k)]; }

  /// Sets c(i,j,k) = value and c(j,i,k) = -value.
  void set_bracket(int i, int j, int k, double value);

  /// Sets c(i,j,k) = value only (raw access, used to build deliberately
  /// broken tensors in validation tests).
  void set_coeff(int i, int j, int k, double value) { c_[offset(i, j, k)] = value; }

  /// [X, Y] evaluated bilinearly from the tensor.
  Vec bracket(const Vec& x, const Vec& y) const;

  /// Matrix of X -> [U, X] in the algebra basis.
  Mat ad(const Vec& u) const;

  /// ad of the i-th basis vector.
  Mat ad_basis(int i) const;

 private:
  int offset(int i, int j, int k) const { return (i * dim_ + j) * dim_ + k; }

  int dim_;
  std::vector<double> c_;
};

/// Residuals of the Lie-algebra axioms. Antisymmetry is the max of
/// |c(i,j,k) + c(j,i,k)|; the Jacobi residual is the max Euclidean norm of
/// the cyclic sum [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] over
/// all ordered triples (repeats included, so asymmetric tensors are caught).
struct StructureValidation {
  double antisymmetry_residual = 0.0;
  double jacobi_residual = 0.0;
  double eps = 0.0;
  bool passed() const {
    return antisymmetry_residual <= eps && jacobi_residual <= eps;
  }
};

StructureValidation validate_structure(const StructureTensor& t, double eps_struct);

/// Killing form B(X,Y) = trace(ad_X ad_Y).
double killing_form(const StructureTensor& t, const Vec& x, const Vec& y);

/// Matrix of the Killing form on the algebra basis.
Mat killing_matrix(const StructureTensor& t);

double trace_ad(const StructureTensor& t, const Vec& x);

/// Covector of basis traces, entry i = trace(ad_{e_i}).
Vec trace_vector(const StructureTensor& t);

/// Kernel of X -> trace(ad_X); the full algebra when it is unimodular,
/// otherwise a codimension-1 ideal.
Subspace unimodular_kernel(const StructureTensor& t, double eps_rank);

struct SubspaceTestResult {
  bool value = false;
  double residual = 0.0;
};

/// True iff [g, s] lies in s; residual is the max distance of a bracket
/// of a basis vector with a spanning vector from s.
SubspaceTestResult is_ideal(const StructureTensor& t, const Subspace& s,
                            double eps_rank);

/// True iff all pairwise brackets of spanning vectors vanish.
SubspaceTestResult is_abelian(const StructureTensor& t, const Subspace& s,
                              double eps_struct);

/// exp(s * ad_V) by scaling-and-squaring with a fixed-degree Taylor series
/// (series tail below 1e-13 at the scaled norm).
Mat ad_exponential(const StructureTensor& t, const Vec& v, double s);

/// Dense matrix exponential used by ad_exponential; exposed for tests.
Mat matrix_exponential(const Mat& a);

}  // namespace metriclie

#endif
