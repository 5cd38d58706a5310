#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "svfie/basis.hpp"

namespace svfie {

/// Hypothesis constants of the mean-square error bound: Lipschitz constants
/// (C for f; L, L1, L2 for the kernels), kernel sup-bounds and a bound on the
/// exact solution.
struct RegularityConstants {
  double C = 0.0;
  double L = 0.0;
  double L1 = 0.0;
  double L2 = 0.0;
  double rho = 0.0;
  double rho1 = 0.0;
  double rho2 = 0.0;
  double sigma = 0.0;

  /// Throws std::invalid_argument on any negative or non-finite constant.
  void validate() const;
};

/// Additive per-path perturbation of f, evaluated as noise(t, B(t)).
using NoiseFn = std::function<double(double t, double b)>;

/// One instance of
///   x(t) = f(t) + int_alpha^beta k(s,t) x(s) ds + int_0^t k1(s,t) x(s) ds
///               + int_0^t k2(s,t) x(s) dB(s)
/// on [0,1). Kernels take (s, t).
struct SvfieProblem {
  std::string name;
  ScalarFn1 f;
  ScalarFn2 k;
  ScalarFn2 k1;
  ScalarFn2 k2;
  double alpha = 0.0;
  double beta = 1.0;
  NoiseFn noise_term;                 // empty when absent
  ScalarFn1 exact_deterministic;      // empty when absent
  std::optional<RegularityConstants> regularity;

  bool has_noise() const noexcept { return static_cast<bool>(noise_term); }
  bool has_exact() const noexcept { return static_cast<bool>(exact_deterministic); }

  /// Checks that all callables are set and 0 <= alpha < beta <= 1.
  void validate() const;
};

class ProblemRegistry {
 public:
  /// Registry preloaded with example1, example1_det, example2, example2_det
  /// and const_fredholm.
  static const ProblemRegistry& builtin();

  /// Adds or replaces a problem by name.
  void add(SvfieProblem problem);

  bool contains(std::string_view name) const;

  /// Throws std::out_of_range for an unknown name.
  const SvfieProblem& get(std::string_view name) const;

  std::vector<std::string> names() const;

 private:
  std::map<std::string, SvfieProblem, std::less<>> problems_;
};

/// Shorthand for ProblemRegistry::builtin().get(name).
const SvfieProblem& registry_get(std::string_view name);

/// Max over n_check probe points of
///   |x(t) - f(t) - int_alpha^beta k x ds - int_0^t k1 x ds|
/// for a candidate x, ignoring the stochastic terms. Integrals use composite
/// Gauss-Legendre at the given order.
double deterministic_residual(const SvfieProblem& problem, const ScalarFn1& candidate,
                              std::size_t n_check = 64, int quad_order = 20);

}  // namespace svfie
