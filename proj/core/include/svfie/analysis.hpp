#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "svfie/problems.hpp"
#include "svfie/solver.hpp"
#include "svfie/stochastic.hpp"

namespace svfie {

/// Probe times used throughout reporting.
inline constexpr std::array<double, 5> kDefaultProbes{0.1, 0.3, 0.5, 0.7, 0.9};

struct ErrorReport {
  Resolution res;
  double l2_error = 0.0;
  double max_error = 0.0;
  std::vector<std::pair<double, double>> probe_errors;
};

/// Discrete L2 and max error of approx against exact on n_quad uniform
/// midpoints of [0,1), plus pointwise errors at the probes.
ErrorReport l2_error(const ScalarFn1& approx, const ScalarFn1& exact, Resolution res,
                     std::size_t n_quad = 4096,
                     std::span<const double> probes = kDefaultProbes);

ErrorReport l2_error(const SolveResult& approx, const ScalarFn1& exact,
                     std::size_t n_quad = 4096,
                     std::span<const double> probes = kDefaultProbes);

struct ConvergencePoint {
  std::size_t m;
  double error;
};

/// Negated least-squares slope of log2(error) against log2(m), so an O(h)
/// error sequence reports about 1. Needs at least three points with m
/// doubling at each step (std::invalid_argument otherwise). Returns +inf
/// when any error is exactly zero (rate saturated).
double convergence_rate(std::span<const ConvergencePoint> points);

struct McSummary {
  std::size_t n_paths = 0;
  std::size_t m = 0;
  std::uint64_t master_seed = 0;
  std::vector<double> probes;
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<double> std_error;
};

/// Solves the problem once per path seed derived from plan, and reports
/// mean, sample std and standard error at each probe. Paths are solved on up
/// to `threads` workers (0 picks hardware concurrency) and reduced in index
/// order, so the result is a pure function of the inputs. A failing path is
/// reported as PathSolveError carrying the lowest failing index.
McSummary monte_carlo(const SvfieProblem& problem, Resolution res, std::size_t n_paths,
                      const SeedPlan& plan, std::span<const double> probes = kDefaultProbes,
                      Method method = Method::Walsh, unsigned threads = 0);

/// Index-ordered reduction used by monte_carlo. samples[p][q] is the value of
/// path p at probe q.
McSummary summarize_paths(const std::vector<std::vector<double>>& samples,
                          std::span<const double> probes, std::size_t m,
                          std::uint64_t master_seed);

struct GronwallBound {
  double R1 = 0.0;
  double R2 = 0.0;
  double bound = 0.0;
};

/// E|x - x_m|^2 <= R1 exp(R2) with
///   R1 = 7 (C^2 h^2 + 2 (beta - alpha)(sqrt2 L h sigma)^2
///           + 2 (sqrt2 L1 h sigma)^2 + 2 (sqrt2 L2 h sigma)^2)
///   R2 = 7 (2 (rho + sqrt2 L h)^2 + 2 (rho1 + sqrt2 L1 h)^2
///           + 2 (rho2 + sqrt2 L2 h)^2)
GronwallBound gronwall_bound(const RegularityConstants& rc, double alpha, double beta, double h);

}  // namespace svfie
