#ifndef METRICLIE_CATALOG_HPP
#define METRICLIE_CATALOG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metriclie/homogeneous_model.hpp"

namespace metriclie {

/// Named auxiliary subspace carried by a model document or catalog entry.
struct NamedSubspace {
  std::string name;
  bool is_ideal = false;
  Subspace space;
};

/// Expected analysis outcomes for a catalog model; every expectation is
/// checkable by exactly one operation and the regression suite asserts all
/// of them.
struct Expectations {
  Verdict go_verdict = Verdict::pass;
  std::optional<Vec> go_witness_direction;  // m-coordinates
  std::optional<double> go_witness_value;
  double unimodular_defect = 0.0;
  bool naturally_reductive = false;
  bool symmetric_pair = false;
  std::optional<Mat> ricci;
  bool killing_nondegenerate = false;
  bool killing_zero = false;
  bool constant_length_ideal = false;  // ideal "a" passes the theorem check
  std::optional<double> min_profile_spread;  // sensitivity control
  std::optional<Vec> spread_field;  // ambient field for the spread bound
};

struct CatalogEntry {
  std::string name;
  HomogeneousModel model;
  std::vector<NamedSubspace> subspaces;
  Expectations expected;
  std::string provenance_notes;

  const NamedSubspace* find_subspace(const std::string& name) const;
};

/// The built-in oracle models: abelian tori, bi-invariant and squashed
/// so(3), the round 2-sphere, the flat plane with rotational isotropy, the
/// non-unimodular affine line, the Heisenberg group, and two products.
std::vector<CatalogEntry> catalog_entries();

/// Cartan condition [m, m] inside h; residual is the largest m-part norm
/// of a bracket of complement span rows.
SubspaceTestResult symmetric_pair_check(const HomogeneousModel& model);

/// Direct-sum algebra with block-diagonal metric and summed isotropy.
HomogeneousModel product_model(const HomogeneousModel& a, const HomogeneousModel& b);

/// Product entry with conjunction expectations derived from the factors.
CatalogEntry product_entry(const CatalogEntry& a, const CatalogEntry& b,
                           std::string name = "");

}  // namespace metriclie

#endif
