#include <benchmark/benchmark.h>

#include "metriclie/curvature.hpp"
#include "metriclie/geodesic_orbit.hpp"
#include "metriclie/killing_length.hpp"
#include "metriclie/model_io.hpp"
#include "metriclie/report.hpp"

namespace {

using namespace metriclie;

const CatalogEntry& entry(const std::string& name) {
  static const std::vector<CatalogEntry> entries = catalog_entries();
  for (const auto& e : entries) {
    if (e.name == name) return e;
  }
  throw std::runtime_error("missing entry");
}

void BM_Bracket(benchmark::State& state) {
  const HomogeneousModel& m = entry("so3_biinvariant").model;
  SeededRng rng(1);
  const Vec x = rng.gaussian_vector(3);
  const Vec y = rng.gaussian_vector(3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.algebra().bracket(x, y));
  }
}
BENCHMARK(BM_Bracket);

void BM_AdExponential(benchmark::State& state) {
  const HomogeneousModel& m = entry("line_x_sphere").model;
  SeededRng rng(2);
  const Vec v = rng.unit_vector(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ad_exponential(m.algebra(), v, 1.3));
  }
}
BENCHMARK(BM_AdExponential);

void BM_RicciMatrix(benchmark::State& state) {
  const HomogeneousModel& m = entry("line_x_sphere").model;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ricci_matrix(m));
  }
}
BENCHMARK(BM_RicciMatrix);

void BM_GoCertificate(benchmark::State& state) {
  const HomogeneousModel& m = entry("sphere_s2").model;
  SeededRng rng(3);
  const Vec x = rng.unit_vector(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(go_certificate(m, x));
  }
}
BENCHMARK(BM_GoCertificate);

void BM_GoSurvey(benchmark::State& state) {
  const HomogeneousModel& m = entry("so3_squashed").model;
  ProbePlan plan;
  plan.random_count = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(go_survey(m, plan));
  }
}
BENCHMARK(BM_GoSurvey)->Arg(50)->Arg(200);

void BM_LengthProfile(benchmark::State& state) {
  const HomogeneousModel& m = entry("e2_plane").model;
  OrbitPlan plan;
  plan.random_words = 20;
  Vec x = Vec::Zero(3);
  x[1] = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(length_profile(m, x, plan));
  }
}
BENCHMARK(BM_LengthProfile);

void BM_ParseModel(benchmark::State& state) {
  const std::string text = emit_model_document(document_from_entry(entry("sphere_s2")));
  for (auto _ : state) {
    benchmark::DoNotOptimize(parse_model_document(text));
  }
}
BENCHMARK(BM_ParseModel);

void BM_FullAnalysis(benchmark::State& state) {
  const ModelDocument doc = document_from_entry(entry("sphere_s2"));
  AnalysisOptions options;
  options.probe_random_count = 50;
  options.orbit_random_words = 10;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_analysis(doc, options));
  }
}
BENCHMARK(BM_FullAnalysis);

}  // namespace

BENCHMARK_MAIN();
