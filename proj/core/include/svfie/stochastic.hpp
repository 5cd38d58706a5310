#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "svfie/resolution.hpp"

namespace svfie {

/// Sample of B(t) on the half-step grid t_j = j h / 2, j = 0..2m.
///
/// The half-step grid is what the stochastic operational matrix needs: B at
/// every cell endpoint and every cell midpoint.
class BrownianPath {
 public:
  /// Path with B == 0 everywhere.
  static BrownianPath zero(Resolution res);

  /// Wraps caller-supplied samples; requires 2m+1 values with values[0] == 0.
  static BrownianPath from_values(Resolution res, std::vector<double> values,
                                  std::optional<std::uint64_t> id = std::nullopt);

  const Resolution& resolution() const noexcept { return res_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  const std::vector<double>& values() const noexcept { return values_; }

  /// B(j h / 2).
  double at_half_step(std::size_t j) const { return values_.at(j); }
  double at_cell_start(std::size_t i) const { return values_.at(2 * i); }
  double at_midpoint(std::size_t i) const { return values_.at(2 * i + 1); }

  /// B(t) for t on the half-step grid; throws std::invalid_argument otherwise.
  double at(double t) const;

  /// Grid index of t, or throws std::invalid_argument when t is off-grid.
  std::size_t grid_index(double t) const;

 private:
  friend BrownianPath brownian_path(std::uint64_t seed, Resolution res);

  BrownianPath(Resolution res, std::optional<std::uint64_t> seed, std::vector<double> values);

  Resolution res_;
  std::optional<std::uint64_t> seed_;
  std::vector<double> values_;
};

/// Seeded path with independent N(0, h/2) increments. Bit-identical for a
/// fixed (seed, m) within one build.
BrownianPath brownian_path(std::uint64_t seed, Resolution res);

/// Derives per-path seeds from a master seed.
///
/// The rule is splitmix64 applied to master + (index + 1) * gamma with gamma
/// odd. Both maps are bijections on 64-bit words, so distinct indices under
/// one master always give distinct seeds.
struct SeedPlan {
  std::uint64_t master_seed = 0;
};

std::uint64_t derive_seed(const SeedPlan& plan, std::uint64_t path_index);

/// Returns false if any two indices in [0, count) share a derived seed.
bool seeds_distinct(const SeedPlan& plan, std::uint64_t count);

/// Left-point Ito sum of a cell-constant integrand up to t on the half-step
/// grid: sum over half-cells [s, s'] of f(s) (B(s') - B(s)). step_values holds
/// one value per cell of width h. t must lie on the half-step grid.
double ito_oracle(std::span<const double> step_values, const BrownianPath& path, double t);

}  // namespace svfie
