#ifndef METRICLIE_TYPES_HPP
#define METRICLIE_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace metriclie {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Numerical thresholds used by every validation and rank decision.
/// eps_struct guards algebraic axiom residuals, eps_rank guards
/// rank/feasibility decisions, eps_len guards length-constancy verdicts.
struct Tolerances {
  double eps_struct = 1e-10;
  double eps_rank = 1e-9;
  double eps_len = 1e-8;
};

enum class Verdict { pass, fail, indeterminate };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "indeterminate";
  }
}

/// Raised on malformed caller input (dimension mismatches and the like).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails; maps to CLI exit 3.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Deterministic random source. mt19937_64 is bit-exact across platforms;
/// doubles and gaussians are derived from it explicitly so that seeded
/// probe/orbit plans reproduce everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return state_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(state_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Index in [0, n).
  int index(int n) {
    return static_cast<int>(state_() % static_cast<std::uint64_t>(n));
  }

  /// Standard normal via Box-Muller.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = 0.0;
    do {
      u = uniform();
    } while (u <= 0.0);
    const double v = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 2.0 * M_PI * v;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  Vec gaussian_vector(int n) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = gaussian();
    return x;
  }

  /// Euclidean unit vector, uniform on the sphere.
  Vec unit_vector(int n) {
    Vec x = gaussian_vector(n);
    double norm = x.norm();
    while (norm < 1e-12) {
      x = gaussian_vector(n);
      norm = x.norm();
    }
    return x / norm;
  }

 private:
  std::mt19937_64 state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

}  // namespace metriclie

#endif
