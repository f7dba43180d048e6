#include <doctest.h>

#include "metriclie/homogeneous_model.hpp"
#include "test_helpers.hpp"

using namespace metriclie;
using namespace metriclie::testing;

namespace {

HomogeneousModel sphere_model() {
  Mat comp(2, 3);
  comp << 0, 1, 0, 0, 0, 1;
  return build_model("sphere", so3(), Subspace::of_vector(basis_vec(3, 0), "h"),
                     Mat::Identity(2, 2), Subspace(3, comp, "m"));
}

}  // namespace

TEST_CASE("sphere model builds with zero residuals") {
  const HomogeneousModel m = sphere_model();
  CHECK(m.validation().ok());
  CHECK(m.validation().metric_skew_residual == 0.0);
  CHECK(m.validation().reductivity_residual == 0.0);
  CHECK(m.validation().isotropy_subalgebra_residual == 0.0);
  CHECK(m.validation().effective);
  CHECK(m.dim_isotropy() == 1);
  CHECK(m.dim_m() == 2);
}

TEST_CASE("trivial isotropy skips every isotropy condition") {
  const HomogeneousModel m =
      build_model("biinv", so3(), Subspace::zero(3, "h"), Mat::Identity(3, 3),
                  Subspace::full(3, "m"));
  CHECK(m.validation().ok());
  CHECK(m.dim_m() == 3);
}

TEST_CASE("non-invariant metric is rejected with the derived residual") {
  Mat comp(2, 3);
  comp << 0, 1, 0, 0, 0, 1;
  Mat g(2, 2);
  g << 1, 0, 0, 2;
  try {
    build_model("bad", so3(), Subspace::of_vector(basis_vec(3, 0), "h"), g,
                Subspace(3, comp, "m"));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.validation.metric_skew_residual == doctest::Approx(1.0));
    bool found = false;
    for (const auto& issue : e.validation.errors) {
      if (issue.invariant == "metric_invariance") found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("omitted complement falls back to the Killing-orthogonal one") {
  const HomogeneousModel m =
      build_model("sphere_auto", so3(), Subspace::of_vector(basis_vec(3, 0), "h"),
                  Mat::Identity(2, 2));
  CHECK(m.validation().ok());
  REQUIRE(m.dim_m() == 2);
  // B = -2I, so the complement of span{e1} is exactly span{e2, e3}.
  CHECK(m.complement().distance(basis_vec(3, 1)) <= 1e-12);
  CHECK(m.complement().distance(basis_vec(3, 2)) <= 1e-12);
  for (int i = 0; i < m.dim_isotropy(); ++i) {
    for (int j = 0; j < m.dim_m(); ++j) {
      CHECK(std::abs(killing_form(m.algebra(),
                                  Vec(m.isotropy().span().row(i).transpose()),
                                  Vec(m.complement().span().row(j).transpose()))) <=
            1e-9);
    }
  }
}

TEST_CASE("coordinate accessors reject wrong dimensions") {
  const HomogeneousModel m = sphere_model();
  CHECK_THROWS_AS(m.m_coords(Vec::Zero(2)), InputError);
  CHECK_THROWS_AS(m.ambient_from_m(Vec::Zero(3)), InputError);
  CHECK_THROWS_AS(m.g_inner(Vec::Zero(2), Vec::Zero(3)), InputError);
}

TEST_CASE("degenerate Killing form demands an explicit complement") {
  // Heisenberg with the center as isotropy: B vanishes identically.
  try {
    build_model("heis_bad", heisenberg(), Subspace::of_vector(basis_vec(3, 2), "h"),
                Mat::Identity(2, 2));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    bool found = false;
    for (const auto& issue : e.validation.errors) {
      if (issue.invariant == "complement") found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("non-subalgebra isotropy is rejected") {
  Mat iso(2, 3);
  iso << 1, 0, 0, 0, 1, 0;
  CHECK_THROWS_AS(build_model("bad", so3(), Subspace(3, iso, "h"),
                              Mat::Identity(1, 1)),
                  ValidationError);
}

TEST_CASE("non-reductive complement is rejected") {
  Mat comp(2, 3);
  comp << 1, 1, 0, 0, 0, 1;  // [e1, e3] = -e2 leaves this span
  CHECK_THROWS_AS(build_model("bad", so3(), Subspace::of_vector(basis_vec(3, 0), "h"),
                              Mat::Identity(2, 2), Subspace(3, comp, "m")),
                  ValidationError);
}

TEST_CASE("indefinite metric is rejected naming the eigenvalue") {
  Mat g(2, 2);
  g << -1, 0, 0, 1;
  try {
    build_model("bad", StructureTensor::zero(2), Subspace::zero(2, "h"), g,
                Subspace::full(2, "m"));
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.validation.metric_min_eigenvalue == doctest::Approx(-1.0));
    CHECK(std::string(e.what()).find("positive definite") != std::string::npos);
  }
}

TEST_CASE("force downgrades rejection and keeps the issue list") {
  Mat g(2, 2);
  g << -1, 0, 0, 1;
  const HomogeneousModel m =
      build_model("forced", StructureTensor::zero(2), Subspace::zero(2, "h"), g,
                  Subspace::full(2, "m"), Tolerances{}, true);
  CHECK(!m.validation().ok());
  CHECK(m.validation().errors.size() == 1);
}

TEST_CASE("direct-sum projections on the sphere") {
  const HomogeneousModel m = sphere_model();
  CHECK(m.m_coords(basis_vec(3, 0)).norm() == doctest::Approx(0.0));
  CHECK((m.m_coords(basis_vec(3, 1)) - basis_vec(2, 0)).norm() <= 1e-12);
  Vec x(3);
  x << 1, 1, 0;  // e1 + e2: isotropy part e1, m part e2
  CHECK((m.m_coords(x) - basis_vec(2, 0)).norm() <= 1e-12);
  CHECK((m.h_part_ambient(x) - basis_vec(3, 0)).norm() <= 1e-12);
}

TEST_CASE("projections reassemble and are idempotent") {
  Mat comp(3, 3);
  comp << 1, 1, 0, 0, 1, 0, 0, 0, 1;  // non-orthogonal complement coordinates
  Mat g(3, 3);
  g << 2, 1, 0, 1, 2, 0, 0, 0, 1;
  const HomogeneousModel m =
      build_model("skewed", StructureTensor::zero(3), Subspace::zero(3, "h"), g,
                  Subspace(3, comp, "m"));
  SeededRng rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec x = rng.gaussian_vector(3);
    CHECK((m.h_part_ambient(x) + m.m_part_ambient(x) - x).norm() <= 1e-12);
    const Vec once = m.m_part_ambient(x);
    CHECK((m.m_part_ambient(once) - once).norm() <= 1e-12);
  }
}

TEST_CASE("cached basis is g-orthonormal") {
  const HomogeneousModel m = entry_by_name("so3_squashed").model;
  const Mat gram =
      m.onb_m_coords().transpose() * m.metric() * m.onb_m_coords();
  CHECK(max_abs(Mat(gram - Mat::Identity(3, 3))) <= 1e-12);
}

TEST_CASE("restricted_ad examples") {
  const HomogeneousModel sphere = sphere_model();
  // [e2, m] lands in the isotropy, so the restriction vanishes.
  CHECK(max_abs(restricted_ad(sphere, basis_vec(3, 1), sphere.complement())) <= 1e-12);
  CHECK(max_abs(restricted_ad(sphere, Vec::Zero(3), sphere.complement())) == 0.0);

  const HomogeneousModel biinv = entry_by_name("so3_biinvariant").model;
  const Mat full = restricted_ad(biinv, basis_vec(3, 0), Subspace::full(3));
  CHECK(max_abs(Mat(full - biinv.algebra().ad(basis_vec(3, 0)))) <= 1e-12);
}

TEST_CASE("make_split edge cases") {
  const HomogeneousModel sphere = sphere_model();
  const SplitPair all = make_split(sphere, sphere.complement());
  CHECK(all.m2.dim() == 0);

  const SplitPair none = make_split(sphere, Subspace::zero(3, "m1"));
  CHECK(none.m2.dim() == 2);
}

TEST_CASE("make_split under a diagonal metric") {
  const HomogeneousModel m = entry_by_name("so3_squashed").model;
  const SplitPair split = make_split(m, Subspace::of_vector(basis_vec(3, 2), "m1"));
  REQUIRE(split.m2.dim() == 2);
  CHECK(split.m2.distance(basis_vec(3, 0)) <= 1e-12);
  CHECK(split.m2.distance(basis_vec(3, 1)) <= 1e-12);
  CHECK(split.orthogonality_residual <= 1e-12);
}

TEST_CASE("make_split rejects bad inputs") {
  const HomogeneousModel sphere = sphere_model();
  CHECK_THROWS_AS(make_split(sphere, Subspace::of_vector(basis_vec(3, 0), "m1")),
                  InputError);  // e1 is isotropy, not inside m

  const HomogeneousModel plane = entry_by_name("e2_plane").model;
  CHECK_THROWS_AS(make_split(plane, Subspace::of_vector(basis_vec(3, 1), "m1")),
                  InputError);  // [r, e1] = e2 leaves span{e1}
}

TEST_CASE("non-effective presentation is a warning, not an error") {
  // so(3) + R with the central line as isotropy.
  StructureTensor t(4);
  t.set_bracket(0, 1, 2, 1.0);
  t.set_bracket(1, 2, 0, 1.0);
  t.set_bracket(2, 0, 1, 1.0);
  Mat comp(3, 4);
  comp << 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0;
  const HomogeneousModel m =
      build_model("noneffective", t, Subspace::of_vector(basis_vec(4, 3), "h"),
                  Mat::Identity(3, 3), Subspace(4, comp, "m"));
  CHECK(m.validation().ok());
  CHECK(!m.validation().effective);
  CHECK(m.validation().noneffective_ideal_dim == 1);
  CHECK(m.validation().warnings.size() == 1);
}

TEST_CASE("max_ideal_in_isotropy is trivial for effective models") {
  CHECK(max_ideal_in_isotropy(sphere_model()).dim() == 0);
  CHECK(max_ideal_in_isotropy(entry_by_name("e2_plane").model).dim() == 0);
}
