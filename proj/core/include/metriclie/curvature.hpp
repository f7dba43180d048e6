#ifndef METRICLIE_CURVATURE_HPP
#define METRICLIE_CURVATURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "metriclie/homogeneous_model.hpp"

namespace metriclie {

/// Ricci curvature of one direction, with the four summands reported
/// separately: -1/2 B(X,X), -1/2 sum_i |[X,X_i]_m|^2,
/// +1/4 sum_{i,j} ([X_i,X_j]_m, X)^2 and -([Z,X]_m, X), over a
/// g-orthonormal basis (X_i) of m.
struct RicciResult {
  double value = 0.0;
  double killing_term = 0.0;
  double bracket_term = 0.0;
  double double_sum_term = 0.0;
  double z_term = 0.0;
};

/// m-coordinates of the vector Z with g(Z, X) = trace(ad_X) for all X in m;
/// zero exactly when those traces vanish.
Vec z_vector(const HomogeneousModel& model);

/// Ricci curvature Ric(X,X) for X given in m-coordinates.
RicciResult ricci(const HomogeneousModel& model, const Vec& xm);

/// Symmetric matrix R with x^T R x = ricci(model, x).value, obtained by
/// polarization on the m-coordinate basis.
Mat ricci_matrix(const HomogeneousModel& model);

/// Preprocessed data for the Ric*/Ric comparison: the split m = m1 (+) m2
/// induced by a subalgebra k with h inside k, and an auxiliary model on k
/// whose curvature gives the left-hand side by an independent code path.
struct RicStarContext {
  bool ok = false;
  std::vector<std::string> failures;
  Subspace m1;
  Subspace m2;
  std::optional<HomogeneousModel> aux;
  Mat m1_coords;       // r x d1, columns = m1 basis in m-coordinates
  Mat m2_onb_coords;   // r x d2, g-orthonormal basis of m2 in m-coordinates
  double k_skew_residual = 0.0;  // skewness evidence for ad(k) on (m, g)
};

RicStarContext make_ric_star_context(const HomogeneousModel& model,
                                     const Subspace& k);

struct RicStarEvaluation {
  Vec x;  // coefficients over the m1 basis
  double left = 0.0;
  double right = 0.0;
  double difference = 0.0;
};

/// left = Ric*(X,X) on the auxiliary model; right = Ric(X,X) minus the
/// m2 double-bracket correction, both evaluated independently.
RicStarEvaluation ric_star_evaluate(const HomogeneousModel& model,
                                    const RicStarContext& ctx, const Vec& x_m1);

/// Convenience wrapper building the context for a single direction.
/// Throws InputError when the preconditions on k fail.
RicStarEvaluation ric_star_identity(const HomogeneousModel& model,
                                    const Subspace& k, const Vec& x_m1);

}  // namespace metriclie

#endif
