#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "svfie/basis.hpp"
#include "svfie/operational.hpp"
#include "svfie/problems.hpp"
#include "svfie/stochastic.hpp"

namespace svfie {

enum class Method { Walsh, BlockPulse };

const char* to_string(Method method) noexcept;

/// Path-independent part of a problem at one resolution: cell integrals of f
/// and of the three kernels, plus P. Building this once lets many Brownian
/// paths share the quadrature work.
///
/// The Fredholm kernel is already restricted to the cells inside
/// [alpha, beta] (rows for s-cells outside are zero).
struct Discretization {
  Resolution res;
  CoeffVector F;
  CoeffMatrix K;
  CoeffMatrix K1;
  CoeffMatrix K2;
  IntegrationMatrix P;
  NoiseFn noise_term;
};

/// Throws std::invalid_argument when alpha or beta is not a multiple of h.
Discretization discretize(const SvfieProblem& problem, Resolution res,
                          const GaussLegendre& quad = GaussLegendre{});

/// Linear system A X = rhs for one (problem, resolution, path).
struct AssembledSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd rhs;
  Resolution res;
  Method method;
  std::optional<std::uint64_t> path_id;
};

/// Right-hand side for one path: cell integrals of f plus h * noise at each
/// cell midpoint.
CoeffVector forcing(const Discretization& disc, const BrownianPath& path);

/// Walsh-side system. With X the cell integrals of x_m,
///   A = I - m K^T - m^2 (K1 o P)^T - m^2 (K2 o P_S)^T
/// where o is the entrywise product. This is the closed form of
/// (I - m K^T) X - m diag(H1) - m diag(H2) with H1 = m K1^T diag(X) P and
/// H2 = m K2^T diag(X) P_S.
AssembledSystem assemble(const Discretization& disc, const BrownianPath& path);

AssembledSystem assemble(const SvfieProblem& problem, Resolution res, const BrownianPath& path,
                         const GaussLegendre& quad = GaussLegendre{});

/// Block-pulse comparator, assembled in mean-value coefficients:
///   A_b = I - h K_b^T - (K1_b o P)^T - (K2_b o P_S)^T,  rhs = m F
/// with K_b = m^2 K.
AssembledSystem assemble_bpf(const Discretization& disc, const BrownianPath& path);

struct SolveResult {
  Resolution res;
  Method method;
  Eigen::VectorXd X;
  double relative_residual = 0.0;
  double condition_estimate = 0.0;  // 1 / rcond of the LU factorization
  bool ill_conditioned = false;     // condition_estimate > kIllConditioned

  static constexpr double kIllConditioned = 1e12;
  static constexpr double kResidualTolerance = 1e-10;

  double operator()(double t) const;
};

/// Dense LU with partial pivoting. Throws SingularSystemError if the
/// factorization breaks down or the relative residual exceeds 1e-10.
SolveResult solve(const AssembledSystem& system);

SolveResult solve_bpf(const SvfieProblem& problem, Resolution res, const BrownianPath& path,
                      const GaussLegendre& quad = GaussLegendre{});

/// Solves with the given method on a precomputed discretization.
SolveResult solve_path(const Discretization& disc, const BrownianPath& path,
                       Method method = Method::Walsh);

/// m X[floor(m t)] for the Walsh method, X[floor(m t)] for block pulses.
double reconstruct_solution(const SolveResult& result, double t);

/// Walsh-series coefficients of x_m (T_W X, or T_W X / m for block pulses).
Eigen::VectorXd walsh_coefficients(const SolveResult& result);

}  // namespace svfie
