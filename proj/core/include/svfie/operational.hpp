#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "svfie/basis.hpp"
#include "svfie/resolution.hpp"
#include "svfie/stochastic.hpp"

namespace svfie {

/// BPF integration matrix: int_0^t Phi = P Phi(t). Diagonal h/2, strict upper
/// triangle h, zero below.
struct IntegrationMatrix {
  Resolution res;
  Eigen::MatrixXd P;
};

/// Per-path BPF Ito matrix: int_0^t Phi dB = P_S Phi(t).
///
/// Row i is the integrand cell. P_S(i,i) = B(midpoint_i) - B(ih) and
/// P_S(i,j) = B((i+1)h) - B(ih) for j > i.
struct StochasticMatrix {
  Resolution res;
  std::optional<std::uint64_t> path_id;
  Eigen::MatrixXd PS;
};

IntegrationMatrix integration_matrix(Resolution res);

StochasticMatrix stochastic_matrix(const BrownianPath& path);

/// Same as above, but rejects a path sampled at a different resolution.
StochasticMatrix stochastic_matrix(const BrownianPath& path, Resolution res);

/// (1/m) T_W M T_W. Maps P to Lambda and P_S to Lambda_S.
Eigen::MatrixXd walsh_conjugate(const WalshMatrix& tw, const Eigen::MatrixXd& M);

}  // namespace svfie
