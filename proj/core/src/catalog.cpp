#include "metriclie/catalog.hpp"

#include <cmath>

namespace metriclie {

namespace {

StructureTensor so3_tensor() {
  StructureTensor t(3);
  t.set_bracket(0, 1, 2, 1.0);
  t.set_bracket(1, 2, 0, 1.0);
  t.set_bracket(2, 0, 1, 1.0);
  return t;
}

Mat single_row(std::initializer_list<double> values) {
  Mat m(1, static_cast<Eigen::Index>(values.size()));
  int j = 0;
  for (double v : values) m(0, j++) = v;
  return m;
}

CatalogEntry abelian_entry(int n) {
  CatalogEntry entry;
  entry.name = "abelian" + std::to_string(n);
  entry.model = build_model(entry.name, StructureTensor::zero(n),
                            Subspace::zero(n, "h"), Mat::Identity(n, n),
                            Subspace::full(n, "m"));
  entry.subspaces.push_back(
      {"a", true, Subspace::full(n, "a")});
  Mat k_rows = Mat::Zero(1, n);
  k_rows(0, 0) = 1.0;
  entry.subspaces.push_back({"k", false, Subspace(n, k_rows, "k")});

  entry.expected.go_verdict = Verdict::pass;
  entry.expected.naturally_reductive = true;
  entry.expected.symmetric_pair = true;
  entry.expected.ricci = Mat::Zero(n, n);
  entry.expected.killing_zero = true;
  entry.expected.constant_length_ideal = true;
  entry.provenance_notes =
      "All brackets vanish: Ricci terms are identically zero, every "
      "direction is geodesic with H_X = 0, Ad is trivial so every field has "
      "constant length.";
  return entry;
}

}  // namespace

const NamedSubspace* CatalogEntry::find_subspace(const std::string& name) const {
  for (const auto& s : subspaces) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

SubspaceTestResult symmetric_pair_check(const HomogeneousModel& model) {
  SubspaceTestResult res;
  const int r = model.dim_m();
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      const Vec w = model.algebra().bracket(
          Vec(model.complement().span().row(i).transpose()),
          Vec(model.complement().span().row(j).transpose()));
      res.residual = std::max(res.residual, model.m_part_ambient(w).norm());
    }
  }
  res.value = res.residual <= model.tolerances().eps_struct;
  return res;
}

HomogeneousModel product_model(const HomogeneousModel& a, const HomogeneousModel& b) {
  const int na = a.dim();
  const int nb = b.dim();
  const int n = na + nb;
  StructureTensor tensor(n);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < na; ++j) {
      for (int k = 0; k < na; ++k) {
        if (a.algebra().coeff(i, j, k) != 0.0) {
          tensor.set_coeff(i, j, k, a.algebra().coeff(i, j, k));
        }
      }
    }
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      for (int k = 0; k < nb; ++k) {
        if (b.algebra().coeff(i, j, k) != 0.0) {
          tensor.set_coeff(na + i, na + j, na + k, b.algebra().coeff(i, j, k));
        }
      }
    }
  }

  const int ka = a.dim_isotropy();
  const int kb = b.dim_isotropy();
  Mat iso = Mat::Zero(ka + kb, n);
  iso.block(0, 0, ka, na) = a.isotropy().span();
  iso.block(ka, na, kb, nb) = b.isotropy().span();

  const int ra = a.dim_m();
  const int rb = b.dim_m();
  Mat comp = Mat::Zero(ra + rb, n);
  comp.block(0, 0, ra, na) = a.complement().span();
  comp.block(ra, na, rb, nb) = b.complement().span();

  Mat metric = Mat::Zero(ra + rb, ra + rb);
  metric.topLeftCorner(ra, ra) = a.metric();
  metric.bottomRightCorner(rb, rb) = b.metric();

  std::vector<std::string> names;
  for (const auto& s : a.basis_names()) names.push_back("a." + s);
  for (const auto& s : b.basis_names()) names.push_back("b." + s);

  return build_model(a.name() + "_x_" + b.name(), tensor,
                     Subspace(n, iso, "h"), metric, Subspace(n, comp, "m"),
                     a.tolerances(), false, names);
}

CatalogEntry product_entry(const CatalogEntry& a, const CatalogEntry& b,
                           std::string name) {
  CatalogEntry entry;
  entry.model = product_model(a.model, b.model);
  entry.name = name.empty() ? entry.model.name() : std::move(name);

  entry.expected.go_verdict = (a.expected.go_verdict == Verdict::pass &&
                               b.expected.go_verdict == Verdict::pass)
                                  ? Verdict::pass
                                  : Verdict::fail;
  entry.expected.unimodular_defect =
      std::max(a.expected.unimodular_defect, b.expected.unimodular_defect);
  entry.expected.naturally_reductive =
      a.expected.naturally_reductive && b.expected.naturally_reductive;
  entry.expected.symmetric_pair =
      a.expected.symmetric_pair && b.expected.symmetric_pair;
  if (a.expected.ricci && b.expected.ricci) {
    const int ra = a.model.dim_m();
    const int rb = b.model.dim_m();
    Mat ric = Mat::Zero(ra + rb, ra + rb);
    ric.topLeftCorner(ra, ra) = *a.expected.ricci;
    ric.bottomRightCorner(rb, rb) = *b.expected.ricci;
    entry.expected.ricci = ric;
  }
  // A factor witness lifts to the product by zero padding.
  const CatalogEntry* failing = nullptr;
  bool failing_is_a = true;
  if (a.expected.go_verdict == Verdict::fail) {
    failing = &a;
  } else if (b.expected.go_verdict == Verdict::fail) {
    failing = &b;
    failing_is_a = false;
  }
  if (failing != nullptr && failing->expected.go_witness_direction) {
    Vec witness = Vec::Zero(entry.model.dim_m());
    const Vec& w = *failing->expected.go_witness_direction;
    if (failing_is_a) {
      witness.head(w.size()) = w;
    } else {
      witness.tail(w.size()) = w;
    }
    entry.expected.go_witness_direction = witness;
    entry.expected.go_witness_value = failing->expected.go_witness_value;
  }
  entry.provenance_notes =
      "Product of '" + a.name + "' and '" + b.name +
      "': block-diagonal brackets and metric, so every analysis decomposes "
      "blockwise and the geodesic-orbit verdict is the conjunction of the "
      "factor verdicts.";
  return entry;
}

std::vector<CatalogEntry> catalog_entries() {
  std::vector<CatalogEntry> entries;

  for (int n = 1; n <= 3; ++n) entries.push_back(abelian_entry(n));

  {
    CatalogEntry e;
    e.name = "so3_biinvariant";
    e.model = build_model(e.name, so3_tensor(), Subspace::zero(3, "h"),
                          Mat::Identity(3, 3), Subspace::full(3, "m"));
    e.subspaces.push_back({"k", false, Subspace(3, single_row({0, 0, 1}), "k")});
    e.subspaces.push_back({"m1", false, Subspace(3, single_row({0, 0, 1}), "m1")});
    e.expected.go_verdict = Verdict::pass;
    e.expected.naturally_reductive = true;
    e.expected.symmetric_pair = false;
    e.expected.ricci = Mat(0.5 * Mat::Identity(3, 3));
    e.expected.killing_nondegenerate = true;
    e.provenance_notes =
        "Bi-invariant metric on so(3): ([X,Y],Z) is totally antisymmetric, "
        "Killing form is -2I, and Ric = -B/4 = I/2 by direct evaluation of "
        "the curvature terms.";
    entries.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.name = "so3_squashed";
    Mat g = Mat::Identity(3, 3);
    g(2, 2) = 2.0;
    e.model = build_model(e.name, so3_tensor(), Subspace::zero(3, "h"), g,
                          Subspace::full(3, "m"));
    e.expected.go_verdict = Verdict::fail;
    Vec witness(3);
    witness << 1, 0, 1;
    e.expected.go_witness_direction = witness;
    e.expected.go_witness_value = 1.0;
    e.expected.naturally_reductive = false;
    e.expected.symmetric_pair = false;
    e.expected.killing_nondegenerate = true;
    Vec spread_field = Vec::Zero(3);
    spread_field[0] = 1.0;
    e.expected.spread_field = spread_field;
    e.expected.min_profile_spread = 0.9;
    e.provenance_notes =
        "Left-invariant diag(1,1,2) metric on so(3): for X = e1+e3 the "
        "probe Y = e2 gives ([X,Y],X)_g = g(e3-e1, e1+e3) = 1, so X is not "
        "geodesic; rotating e1 toward e3 changes g(X,X) from 1 to 2.";
    entries.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.name = "sphere_s2";
    Mat comp(2, 3);
    comp << 0, 1, 0, 0, 0, 1;
    e.model = build_model(e.name, so3_tensor(),
                          Subspace(3, single_row({1, 0, 0}), "h"),
                          Mat::Identity(2, 2), Subspace(3, comp, "m"));
    e.subspaces.push_back({"k", false, Subspace::full(3, "k")});
    e.subspaces.push_back({"m1", false, Subspace(3, comp, "m1")});
    e.expected.go_verdict = Verdict::pass;
    e.expected.naturally_reductive = true;
    e.expected.symmetric_pair = true;
    e.expected.ricci = Mat(Mat::Identity(2, 2));
    e.expected.killing_nondegenerate = true;
    e.provenance_notes =
        "Round 2-sphere as so(3) with isotropy span{e1}: [m,m] lies in h, "
        "Ric(e2,e2) = -B(e2,e2)/2 = 1 with all other curvature terms zero.";
    entries.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.name = "e2_plane";
    StructureTensor t(3);  // basis (r, e1, e2)
    t.set_bracket(0, 1, 2, 1.0);
    t.set_bracket(0, 2, 1, -1.0);
    Mat comp(2, 3);
    comp << 0, 1, 0, 0, 0, 1;
    e.model = build_model(e.name, t, Subspace(3, single_row({1, 0, 0}), "h"),
                          Mat::Identity(2, 2), Subspace(3, comp, "m"),
                          Tolerances{}, false, {"r", "e1", "e2"});
    e.subspaces.push_back({"a", true, Subspace(3, comp, "a")});
    e.subspaces.push_back({"k", false, Subspace(3, single_row({1, 0, 0}), "k")});
    e.subspaces.push_back({"m1", false, Subspace::zero(3, "m1")});
    e.expected.go_verdict = Verdict::pass;
    e.expected.naturally_reductive = true;
    e.expected.symmetric_pair = true;
    e.expected.ricci = Mat(Mat::Zero(2, 2));
    e.expected.constant_length_ideal = true;
    e.provenance_notes =
        "Euclidean plane under the full motion group: the translations form "
        "an abelian ideal rotated isometrically by Ad(exp(t ad_r)), so both "
        "translation fields keep squared length 1 on every orbit sample; "
        "curvature vanishes term by term.";
    entries.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.name = "aff_line";
    StructureTensor t(2);
    t.set_bracket(0, 1, 1, 1.0);
    e.model = build_model(e.name, t, Subspace::zero(2, "h"),
                          Mat::Identity(2, 2), Subspace::full(2, "m"));
    e.expected.go_verdict = Verdict::fail;
    Vec witness(2);
    witness << 0, 1;
    e.expected.go_witness_direction = witness;
    e.expected.go_witness_value = 1.0;
    e.expected.unimodular_defect = 1.0;
    e.expected.naturally_reductive = false;
    e.expected.symmetric_pair = false;
    e.expected.ricci = Mat(-Mat::Identity(2, 2));
    e.provenance_notes =
        "Affine line group [e1,e2] = e2: trace ad_{e1} = 1 (non-unimodular), "
        "probe X = e2 gives ([e2,e1],e2) = -1 with no isotropy to absorb it, "
        "and the curvature evaluates to Ric = -I (hyperbolic plane).";
    entries.push_back(std::move(e));
  }

  {
    CatalogEntry e;
    e.name = "heisenberg3";
    StructureTensor t(3);
    t.set_bracket(0, 1, 2, 1.0);
    e.model = build_model(e.name, t, Subspace::zero(3, "h"),
                          Mat::Identity(3, 3), Subspace::full(3, "m"));
    e.subspaces.push_back({"k", false, Subspace(3, single_row({0, 0, 1}), "k")});
    e.subspaces.push_back({"a", true, Subspace(3, single_row({0, 0, 1}), "a")});
    e.expected.go_verdict = Verdict::fail;
    Vec witness(3);
    witness << 1, 0, 1;
    e.expected.go_witness_direction = witness;
    e.expected.go_witness_value = 1.0;
    e.expected.naturally_reductive = false;
    e.expected.symmetric_pair = false;
    Mat ric = Mat::Zero(3, 3);
    ric(0, 0) = -0.5;
    ric(1, 1) = -0.5;
    ric(2, 2) = 0.5;
    e.expected.ricci = ric;
    e.expected.killing_zero = true;
    e.provenance_notes =
        "Heisenberg group with the flat-coordinates metric: relative to the "
        "3-dimensional algebra itself, X = e1+e3 fails the geodesic test "
        "with witness Y = e2; Ric = diag(-1/2,-1/2,1/2) from the single "
        "bracket [e1,e2] = e3. The center is an abelian ideal, but the "
        "constant-length check is gated on a passing survey.";
    entries.push_back(std::move(e));
  }

  {
    CatalogEntry product = product_entry(entries[0], entries[5], "line_x_sphere");
    // entries[0] = abelian1, entries[5] = sphere_s2.
    Mat m1_rows = Mat::Zero(1, product.model.dim());
    m1_rows(0, 0) = 1.0;
    product.subspaces.push_back({"m1", false, Subspace(product.model.dim(), m1_rows, "m1")});
    entries.push_back(std::move(product));
  }
  entries.push_back(product_entry(entries[4], entries[0], "squashed_x_line"));

  return entries;
}

}  // namespace metriclie
