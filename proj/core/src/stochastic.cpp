#include "svfie/stochastic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace svfie {

BrownianPath::BrownianPath(Resolution res, std::optional<std::uint64_t> seed,
                           std::vector<double> values)
    : res_(res), seed_(seed), values_(std::move(values)) {}

BrownianPath BrownianPath::zero(Resolution res) {
  return BrownianPath(res, std::nullopt, std::vector<double>(2 * res.m() + 1, 0.0));
}

BrownianPath BrownianPath::from_values(Resolution res, std::vector<double> values,
                                       std::optional<std::uint64_t> id) {
  if (values.size() != 2 * res.m() + 1) {
    throw std::invalid_argument("BrownianPath: expected 2m+1 samples on the half-step grid");
  }
  if (values.front() != 0.0) throw std::invalid_argument("BrownianPath: B(0) must be 0");
  return BrownianPath(res, id, std::move(values));
}

std::size_t BrownianPath::grid_index(double t) const {
  const double scaled = t * 2.0 * static_cast<double>(res_.m());
  const double j = std::round(scaled);
  if (!(t >= 0.0 && t <= 1.0) || std::abs(scaled - j) > 1e-9) {
    throw std::invalid_argument("t = " + std::to_string(t) + " is not on the half-step grid");
  }
  return static_cast<std::size_t>(j);
}

double BrownianPath::at(double t) const { return values_[grid_index(t)]; }

BrownianPath brownian_path(std::uint64_t seed, Resolution res) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> increment(0.0, std::sqrt(0.5 * res.h()));
  std::vector<double> values(2 * res.m() + 1);
  values[0] = 0.0;
  for (std::size_t j = 1; j < values.size(); ++j) values[j] = values[j - 1] + increment(gen);
  return BrownianPath(res, seed, std::move(values));
}

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t derive_seed(const SeedPlan& plan, std::uint64_t path_index) {
  return splitmix64(plan.master_seed + (path_index + 1) * kGamma);
}

bool seeds_distinct(const SeedPlan& plan, std::uint64_t count) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(count));
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!seen.insert(derive_seed(plan, i)).second) return false;
  }
  return true;
}

double ito_oracle(std::span<const double> step_values, const BrownianPath& path, double t) {
  const std::size_t m = path.resolution().m();
  if (step_values.size() != m) {
    throw std::invalid_argument("ito_oracle: need one integrand value per cell");
  }
  const std::size_t end = path.grid_index(t);
  double acc = 0.0;
  for (std::size_t j = 0; j < end; ++j) {
    // Left endpoint j h/2 lies in cell j/2.
    acc += step_values[j / 2] * (path.at_half_step(j + 1) - path.at_half_step(j));
  }
  return acc;
}

}  // namespace svfie
