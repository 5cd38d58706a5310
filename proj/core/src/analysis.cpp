#include "svfie/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "svfie/error.hpp"

namespace svfie {

ErrorReport l2_error(const ScalarFn1& approx, const ScalarFn1& exact, Resolution res,
                     std::size_t n_quad, std::span<const double> probes) {
  if (n_quad == 0) throw std::invalid_argument("l2_error: n_quad must be positive");
  ErrorReport report{res, 0.0, 0.0, {}};
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < n_quad; ++k) {
    const double t = (static_cast<double>(k) + 0.5) / static_cast<double>(n_quad);
    const double e = std::abs(approx(t) - exact(t));
    sum_sq += e * e;
    report.max_error = std::max(report.max_error, e);
  }
  report.l2_error = std::sqrt(sum_sq / static_cast<double>(n_quad));
  report.probe_errors.reserve(probes.size());
  for (double t : probes) report.probe_errors.emplace_back(t, std::abs(approx(t) - exact(t)));
  return report;
}

ErrorReport l2_error(const SolveResult& approx, const ScalarFn1& exact, std::size_t n_quad,
                     std::span<const double> probes) {
  return l2_error([&](double t) { return reconstruct_solution(approx, t); }, exact, approx.res,
                  n_quad, probes);
}

double convergence_rate(std::span<const ConvergencePoint> points) {
  if (points.size() < 3) throw std::invalid_argument("convergence_rate: need at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].error >= 0.0) || !std::isfinite(points[i].error)) {
      throw std::invalid_argument("convergence_rate: errors must be finite and non-negative");
    }
    if (i > 0 && points[i].m != 2 * points[i - 1].m) {
      throw std::invalid_argument("convergence_rate: m must double at each step");
    }
  }
  if (std::any_of(points.begin(), points.end(), [](const auto& p) { return p.error == 0.0; })) {
    return std::numeric_limits<double>::infinity();
  }

  const auto n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& p : points) {
    sx += std::log2(static_cast<double>(p.m));
    sy += std::log2(p.error);
  }
  const double mx = sx / n, my = sy / n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : points) {
    const double dx = std::log2(static_cast<double>(p.m)) - mx;
    sxy += dx * (std::log2(p.error) - my);
    sxx += dx * dx;
  }
  return -sxy / sxx;
}

McSummary summarize_paths(const std::vector<std::vector<double>>& samples,
                          std::span<const double> probes, std::size_t m,
                          std::uint64_t master_seed) {
  const std::size_t np = probes.size();
  McSummary s;
  s.n_paths = samples.size();
  s.m = m;
  s.master_seed = master_seed;
  s.probes.assign(probes.begin(), probes.end());
  s.mean.assign(np, 0.0);
  s.stddev.assign(np, 0.0);
  s.std_error.assign(np, 0.0);

  // Welford, in path-index order.
  std::vector<double> m2(np, 0.0);
  for (std::size_t p = 0; p < samples.size(); ++p) {
    if (samples[p].size() != np) throw std::invalid_argument("summarize_paths: ragged samples");
    const double count = static_cast<double>(p + 1);
    for (std::size_t q = 0; q < np; ++q) {
      const double delta = samples[p][q] - s.mean[q];
      s.mean[q] += delta / count;
      m2[q] += delta * (samples[p][q] - s.mean[q]);
    }
  }
  if (s.n_paths > 1) {
    const double n = static_cast<double>(s.n_paths);
    for (std::size_t q = 0; q < np; ++q) {
      s.stddev[q] = std::sqrt(m2[q] / (n - 1.0));
      s.std_error[q] = s.stddev[q] / std::sqrt(n);
    }
  }
  return s;
}

McSummary monte_carlo(const SvfieProblem& problem, Resolution res, std::size_t n_paths,
                      const SeedPlan& plan, std::span<const double> probes, Method method,
                      unsigned threads) {
  if (n_paths == 0) throw std::invalid_argument("monte_carlo: n_paths must be at least 1");
  for (double t : probes) require_unit_interval(t, "monte_carlo probe");

  const Discretization disc = discretize(problem, res);
  std::vector<std::vector<double>> samples(n_paths);
  std::vector<std::exception_ptr> failures(n_paths);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t p = next.fetch_add(1); p < n_paths; p = next.fetch_add(1)) {
      try {
        const BrownianPath path = brownian_path(derive_seed(plan, p), res);
        const SolveResult r = solve_path(disc, path, method);
        std::vector<double> row;
        row.reserve(probes.size());
        for (double t : probes) row.push_back(reconstruct_solution(r, t));
        samples[p] = std::move(row);
      } catch (...) {
        failures[p] = std::current_exception();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_paths));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
  }

  for (std::size_t p = 0; p < n_paths; ++p) {
    if (!failures[p]) continue;
    try {
      std::rethrow_exception(failures[p]);
    } catch (const std::exception& e) {
      throw PathSolveError(p, e.what());
    }
  }
  return summarize_paths(samples, probes, res.m(), plan.master_seed);
}

GronwallBound gronwall_bound(const RegularityConstants& rc, double alpha, double beta, double h) {
  rc.validate();
  if (!(h > 0.0 && h <= 1.0)) throw std::invalid_argument("gronwall_bound: h must be in (0, 1]");
  if (!(alpha >= 0.0 && alpha < beta)) {
    throw std::invalid_argument("gronwall_bound: need 0 <= alpha < beta");
  }
  constexpr double r2 = std::numbers::sqrt2;
  const auto sq = [](double x) { return x * x; };

  GronwallBound b;
  b.R1 = 7.0 * (sq(rc.C) * sq(h) + 2.0 * (beta - alpha) * sq(r2 * rc.L * h * rc.sigma) +
                2.0 * sq(r2 * rc.L1 * h * rc.sigma) + 2.0 * sq(r2 * rc.L2 * h * rc.sigma));
  b.R2 = 7.0 * (2.0 * sq(rc.rho + r2 * rc.L * h) + 2.0 * sq(rc.rho1 + r2 * rc.L1 * h) +
                2.0 * sq(rc.rho2 + r2 * rc.L2 * h));
  b.bound = b.R1 * std::exp(b.R2);
  return b;
}

}  // namespace svfie
