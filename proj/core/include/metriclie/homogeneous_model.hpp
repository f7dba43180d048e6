#ifndef METRICLIE_HOMOGENEOUS_MODEL_HPP
#define METRICLIE_HOMOGENEOUS_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "metriclie/structure_tensor.hpp"
#include "metriclie/subspace.hpp"
#include "metriclie/types.hpp"

namespace metriclie {

struct ValidationIssue {
  std::string invariant;
  std::string message;
  double residual = 0.0;
  bool is_error = true;
};

/// Residuals of every model invariant, collected during build_model.
/// `errors` is empty exactly when the model is valid; warnings (such as a
/// non-effective presentation) never block construction.
struct ModelValidation {
  StructureValidation structure;
  double span_min_singular = 0.0;
  bool dimensions_match = false;
  double isotropy_subalgebra_residual = 0.0;
  double reductivity_residual = 0.0;
  double metric_min_eigenvalue = 0.0;
  double metric_symmetry_residual = 0.0;
  double metric_skew_residual = 0.0;
  bool effective = true;
  int noneffective_ideal_dim = 0;
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;

  bool ok() const { return errors.empty(); }
  std::string describe() const;
};

class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string what, ModelValidation validation)
      : std::runtime_error(std::move(what)), validation(std::move(validation)) {}
  ModelValidation validation;
};

/// Reductive model (algebra, isotropy h, complement m, inner product g on
/// m-coordinates). Immutable after build_model; all derived bases are
/// cached at construction.
class HomogeneousModel {
 public:
  /// Empty placeholder; only build_model produces a usable model.
  HomogeneousModel()
      : algebra_(1), isotropy_(Subspace::zero(1)), complement_(Subspace::zero(1)) {}

  const std::string& name() const { return name_; }
  const StructureTensor& algebra() const { return algebra_; }
  const Subspace& isotropy() const { return isotropy_; }
  const Subspace& complement() const { return complement_; }
  const Mat& metric() const { return metric_; }
  const Tolerances& tolerances() const { return tol_; }
  const ModelValidation& validation() const { return validation_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }

  int dim() const { return algebra_.dim(); }
  int dim_isotropy() const { return isotropy_.dim(); }
  int dim_m() const { return complement_.dim(); }

  /// Direct-sum coordinates: X = h_part + m_part with h_part in h and
  /// m_part in m. m-coordinates are taken with respect to the complement
  /// span rows (the basis the metric is expressed in).
  Vec m_coords(const Vec& x) const;
  Vec h_coords(const Vec& x) const;
  Vec m_part_ambient(const Vec& x) const;
  Vec h_part_ambient(const Vec& x) const;

  /// Ambient vector from m-coordinates.
  Vec ambient_from_m(const Vec& xm) const;

  double g_inner(const Vec& xm, const Vec& ym) const;
  double g_norm_sq(const Vec& xm) const { return g_inner(xm, xm); }

  /// g-orthonormal basis of m: column i of onb_m_coords() holds the
  /// m-coordinates of the i-th basis vector (Cholesky-based, cached).
  const Mat& onb_m_coords() const { return onb_m_coords_; }
  const Mat& onb_m_ambient() const { return onb_m_ambient_; }

  /// Euclidean-orthonormal basis of h (n x dim_h columns).
  const Mat& isotropy_onb() const { return isotropy_.onb(); }

  /// Killing form matrix of the full algebra (cached).
  const Mat& killing() const { return killing_; }

  friend HomogeneousModel build_model(std::string name, StructureTensor algebra,
                                      Subspace isotropy, Mat metric,
                                      std::optional<Subspace> complement,
                                      Tolerances tol, bool force,
                                      std::vector<std::string> basis_names);

 private:
  std::string name_;
  StructureTensor algebra_;
  Subspace isotropy_;
  Subspace complement_;
  Mat metric_;
  Tolerances tol_;
  ModelValidation validation_;
  std::vector<std::string> basis_names_;

  Mat basis_inverse_;    // inverse of [h-rows; m-rows] stacked as columns
  Mat onb_m_coords_;     // r x r, columns are g-orthonormal basis in m-coords
  Mat onb_m_ambient_;    // n x r
  Mat killing_;          // n x n
};

/// Builds and fully validates a model. When `complement` is absent and the
/// Killing form is nondegenerate, m is taken as the B-orthogonal complement
/// of h. Throws ValidationError on invariant violations unless force is
/// set, in which case they are downgraded to warnings.
HomogeneousModel build_model(std::string name, StructureTensor algebra,
                             Subspace isotropy, Mat metric,
                             std::optional<Subspace> complement = std::nullopt,
                             Tolerances tol = Tolerances{}, bool force = false,
                             std::vector<std::string> basis_names = {});

/// Matrix of X -> [U, X]_s in the Euclidean-orthonormalized basis of s.
/// For s inside m the s-part is the g-orthogonal projection (within m) of
/// the m-part of the bracket; otherwise the Euclidean projection onto s.
Mat restricted_ad(const HomogeneousModel& model, const Vec& u, const Subspace& s);

/// Ad(h)-invariant orthogonal split of m.
struct SplitPair {
  Subspace m1;
  Subspace m2;
  double orthogonality_residual = 0.0;
  double invariance_residual = 0.0;
};

/// Completes m1 to a g-orthogonal split of m. m1 must lie inside m and be
/// ad(h)-invariant.
SplitPair make_split(const HomogeneousModel& model, const Subspace& m1);

/// Largest ideal of the algebra contained in the isotropy (dimension 0 for
/// effective presentations).
Subspace max_ideal_in_isotropy(const HomogeneousModel& model);

}  // namespace metriclie

#endif
