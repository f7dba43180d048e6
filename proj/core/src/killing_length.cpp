#include "metriclie/killing_length.hpp"

#include <cmath>
#include <sstream>

#include "metriclie/curvature.hpp"

namespace metriclie {

std::string OrbitPlan::describe() const {
  std::ostringstream os;
  os << "orbit words: length<=" << max_word_length << " over exp(t*ad[e_i]), t in {";
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (i > 0) os << ", ";
    os << t_values[i];
  }
  os << "}, plus " << random_words << " random words (seed " << seed << ")";
  return os.str();
}

double length_at_origin(const HomogeneousModel& model, const Vec& x) {
  require(x.size() == model.dim(), "length_at_origin: vector dimension mismatch");
  return std::sqrt(std::max(0.0, model.g_norm_sq(model.m_coords(x))));
}

double critical_point_residual(const HomogeneousModel& model, const Vec& x) {
  require(x.size() == model.dim(), "critical_point_residual: dimension mismatch");
  const Vec xm = model.m_coords(x);
  double worst = 0.0;
  Vec e = Vec::Zero(model.dim());
  for (int i = 0; i < model.dim(); ++i) {
    e.setZero();
    e[i] = 1.0;
    const Vec wm = model.m_coords(model.algebra().bracket(e, x));
    worst = std::max(worst, std::abs(model.g_inner(wm, xm)));
  }
  return worst;
}

namespace {

struct WordFactor {
  int generator;
  double t;
};

std::string word_label(const std::vector<WordFactor>& word,
                       const std::vector<std::string>& names) {
  if (word.empty()) return "id";
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) os << "*";
    os << "exp(" << word[i].t << "*ad[" << names[word[i].generator] << "])";
  }
  return os.str();
}

}  // namespace

LengthProfile length_profile(const HomogeneousModel& model, const Vec& x,
                             const OrbitPlan& plan) {
  require(x.size() == model.dim(), "length_profile: vector dimension mismatch");
  const int n = model.dim();
  LengthProfile profile;
  profile.field = x;

  std::vector<std::vector<WordFactor>> words;
  words.push_back({});  // identity
  if (plan.max_word_length >= 1) {
    for (int i = 0; i < n; ++i) {
      for (double t : plan.t_values) words.push_back({{i, t}});
    }
  }
  if (plan.max_word_length >= 2) {
    for (int i = 0; i < n; ++i) {
      for (double t : plan.t_values) {
        for (int j = 0; j < n; ++j) {
          for (double s : plan.t_values) {
            words.push_back({{i, t}, {j, s}});
          }
        }
      }
    }
  }
  SeededRng rng(plan.seed);
  for (int w = 0; w < plan.random_words; ++w) {
    std::vector<WordFactor> word;
    const int len = std::max(1, plan.max_word_length);
    for (int p = 0; p < len; ++p) {
      word.push_back({rng.index(n), rng.uniform(-1.5, 1.5)});
    }
    words.push_back(std::move(word));
  }

  // Cache the generator exponentials appearing in deterministic words.
  std::vector<std::vector<Mat>> cached(n);
  for (int i = 0; i < n; ++i) {
    for (double t : plan.t_values) {
      Vec v = Vec::Zero(n);
      v[i] = 1.0;
      cached[i].push_back(ad_exponential(model.algebra(), v, -t));
    }
  }
  auto inverse_factor = [&](const WordFactor& f) -> Mat {
    for (std::size_t k = 0; k < plan.t_values.size(); ++k) {
      if (plan.t_values[k] == f.t) return cached[f.generator][k];
    }
    Vec v = Vec::Zero(n);
    v[f.generator] = 1.0;
    return ad_exponential(model.algebra(), v, -f.t);
  };

  double min_value = 0.0;
  double max_value = 0.0;
  bool first = true;
  for (const auto& word : words) {
    // The field at a.o has the same length as Ad_{a^{-1}} X at the origin;
    // for a = E_1 * ... * E_k the inverse factors apply left to right.
    Vec transported = x;
    for (const auto& factor : word) {
      transported = inverse_factor(factor) * transported;
    }
    OrbitSample sample;
    sample.word = word_label(word, model.basis_names());
    sample.value = model.g_norm_sq(model.m_coords(transported));
    sample.residual = critical_point_residual(model, transported);
    profile.max_residual = std::max(profile.max_residual, sample.residual);
    if (first) {
      min_value = max_value = sample.value;
      first = false;
    } else {
      min_value = std::min(min_value, sample.value);
      max_value = std::max(max_value, sample.value);
    }
    profile.samples.push_back(std::move(sample));
  }
  profile.spread = max_value - min_value;

  const double eps = model.tolerances().eps_len;
  const double spread_tol = eps * (1.0 + max_value);
  const bool spread_ok = profile.spread <= spread_tol;
  const bool resid_ok = profile.max_residual <= eps;
  if (spread_ok && resid_ok) {
    profile.verdict = Verdict::pass;
  } else if (profile.spread > 100.0 * spread_tol || profile.max_residual > 100.0 * eps) {
    profile.verdict = Verdict::fail;
  } else {
    profile.verdict = Verdict::indeterminate;
  }
  return profile;
}

TheoremReport verify_abelian_ideal_theorem(const HomogeneousModel& model,
                                           const Subspace& ideal,
                                           const OrbitPlan& plan,
                                           Verdict survey_verdict) {
  TheoremReport report;
  const auto ideal_check = is_ideal(model.algebra(), ideal, model.tolerances().eps_rank);
  if (!ideal_check.value) {
    std::ostringstream os;
    os << "subspace is not an ideal (residual " << ideal_check.residual << ")";
    report.precondition_failures.push_back(os.str());
  }
  const auto abelian_check =
      is_abelian(model.algebra(), ideal, model.tolerances().eps_struct);
  if (!abelian_check.value) {
    std::ostringstream os;
    os << "subspace is not abelian (residual " << abelian_check.residual << ")";
    report.precondition_failures.push_back(os.str());
  }
  if (survey_verdict != Verdict::pass) {
    report.precondition_failures.push_back(
        "geodesic-orbit survey did not pass for this model");
  }
  report.preconditions_ok = report.precondition_failures.empty();
  if (!report.preconditions_ok) return report;

  std::vector<std::pair<std::string, Vec>> fields;
  for (int i = 0; i < ideal.dim(); ++i) {
    fields.emplace_back("span[" + std::to_string(i) + "]",
                        Vec(ideal.span().row(i).transpose()));
  }
  SeededRng rng(plan.seed);
  for (int t = 0; t < plan.random_fields && ideal.dim() > 0; ++t) {
    const Vec coeff = rng.unit_vector(ideal.dim());
    fields.emplace_back("random[" + std::to_string(t) + "]",
                        Vec(ideal.span().transpose() * coeff));
  }

  report.pass = true;
  for (auto& [label, field] : fields) {
    TheoremReport::Entry entry{label, length_profile(model, field, plan)};
    report.max_spread = std::max(report.max_spread, entry.profile.spread);
    report.max_residual = std::max(report.max_residual, entry.profile.max_residual);
    if (entry.profile.verdict != Verdict::pass) report.pass = false;
    report.profiles.push_back(std::move(entry));
  }
  report.contradiction = !report.pass;
  return report;
}

ParallelReport parallel_candidate_report(const HomogeneousModel& model,
                                         const Subspace& ideal,
                                         const OrbitPlan& plan,
                                         Verdict survey_verdict) {
  ParallelReport report;
  TheoremReport theorem =
      verify_abelian_ideal_theorem(model, ideal, plan, survey_verdict);
  report.preconditions_ok = theorem.preconditions_ok;
  report.precondition_failures = theorem.precondition_failures;
  if (!report.preconditions_ok) return report;

  const double eps = model.tolerances().eps_len;
  for (const auto& entry : theorem.profiles) {
    ParallelCandidate cand;
    cand.label = entry.label;
    cand.field = entry.profile.field;
    cand.length_verdict = entry.profile.verdict;
    cand.ricci_value = ricci(model, model.m_coords(cand.field)).value;
    const double origin_sq = model.g_norm_sq(model.m_coords(cand.field));
    cand.candidate = cand.length_verdict == Verdict::pass &&
                     std::abs(cand.ricci_value) <= eps * (1.0 + origin_sq);
    report.candidates.push_back(std::move(cand));
  }
  return report;
}

}  // namespace metriclie
