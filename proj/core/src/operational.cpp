#include "svfie/operational.hpp"

#include <stdexcept>
#include <string>

namespace svfie {

IntegrationMatrix integration_matrix(Resolution res) {
  const auto m = static_cast<Eigen::Index>(res.m());
  const double h = res.h();
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    P(i, i) = 0.5 * h;
    for (Eigen::Index j = i + 1; j < m; ++j) P(i, j) = h;
  }
  return {res, std::move(P)};
}

StochasticMatrix stochastic_matrix(const BrownianPath& path) {
  const Resolution res = path.resolution();
  const std::size_t m = res.m();
  Eigen::MatrixXd PS = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m),
                                             static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const double start = path.at_cell_start(i);
    PS(r, r) = path.at_midpoint(i) - start;
    const double full = path.at_cell_start(i + 1) - start;
    for (Eigen::Index c = r + 1; c < static_cast<Eigen::Index>(m); ++c) PS(r, c) = full;
  }
  return {res, path.seed(), std::move(PS)};
}

StochasticMatrix stochastic_matrix(const BrownianPath& path, Resolution res) {
  if (!(path.resolution() == res)) {
    throw std::invalid_argument("stochastic_matrix: path sampled at m = " +
                                std::to_string(path.resolution().m()) + ", expected m = " +
                                std::to_string(res.m()));
  }
  return stochastic_matrix(path);
}

Eigen::MatrixXd walsh_conjugate(const WalshMatrix& tw, const Eigen::MatrixXd& M) {
  const auto m = static_cast<Eigen::Index>(tw.size());
  if (M.rows() != m || M.cols() != m) {
    throw std::invalid_argument("walsh_conjugate: dimension mismatch");
  }
  const Eigen::MatrixXd T = tw.as_real();
  return (T * M * T) / static_cast<double>(m);
}

}  // namespace svfie
