#include "svfie/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "svfie/error.hpp"

namespace svfie {

const char* to_string(Method method) noexcept {
  return method == Method::Walsh ? "wfm" : "bpf";
}

namespace {

// Index of the grid line at x = c h, or throws when x is off the cell grid.
Eigen::Index cell_boundary(double x, Resolution res, const char* which) {
  const double scaled = x * static_cast<double>(res.m());
  const double j = std::round(scaled);
  if (std::abs(scaled - j) > 1e-9) {
    throw std::invalid_argument(std::string("Fredholm limit ") + which + " = " +
                                std::to_string(x) + " is not a multiple of h = 1/" +
                                std::to_string(res.m()));
  }
  return static_cast<Eigen::Index>(j);
}

void require_matching(const Discretization& disc, const BrownianPath& path) {
  if (!(path.resolution() == disc.res)) {
    throw std::invalid_argument("Brownian path resolution m = " +
                                std::to_string(path.resolution().m()) +
                                " does not match system resolution m = " +
                                std::to_string(disc.res.m()));
  }
}

}  // namespace

Discretization discretize(const SvfieProblem& problem, Resolution res, const GaussLegendre& quad) {
  problem.validate();
  const Eigen::Index lo = cell_boundary(problem.alpha, res, "alpha");
  const Eigen::Index hi = cell_boundary(problem.beta, res, "beta");

  CoeffMatrix K = cell_integrals_2d(problem.k, res, quad);
  // Rows are s-cells; drop those outside [alpha, beta).
  const auto m = static_cast<Eigen::Index>(res.m());
  for (Eigen::Index i = 0; i < m; ++i) {
    if (i < lo || i >= hi) K.values.row(i).setZero();
  }

  return Discretization{res,
                        cell_integrals_1d(problem.f, res, quad),
                        std::move(K),
                        cell_integrals_2d(problem.k1, res, quad),
                        cell_integrals_2d(problem.k2, res, quad),
                        integration_matrix(res),
                        problem.noise_term};
}

CoeffVector forcing(const Discretization& disc, const BrownianPath& path) {
  require_matching(disc, path);
  CoeffVector F = disc.F;
  if (disc.noise_term) {
    const double h = disc.res.h();
    for (std::size_t j = 0; j < disc.res.m(); ++j) {
      F.values[static_cast<Eigen::Index>(j)] +=
          h * disc.noise_term(disc.res.midpoint(j), path.at_midpoint(j));
    }
  }
  return F;
}

AssembledSystem assemble(const Discretization& disc, const BrownianPath& path) {
  require_matching(disc, path);
  const StochasticMatrix PS = stochastic_matrix(path, disc.res);
  const auto m = static_cast<Eigen::Index>(disc.res.m());
  const double md = static_cast<double>(m);

  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  A.noalias() -= md * disc.K.values.transpose();
  A.noalias() -= (md * md) * disc.K1.values.cwiseProduct(disc.P.P).transpose();
  A.noalias() -= (md * md) * disc.K2.values.cwiseProduct(PS.PS).transpose();

  return AssembledSystem{std::move(A), forcing(disc, path).values, disc.res, Method::Walsh,
                         path.seed()};
}

AssembledSystem assemble(const SvfieProblem& problem, Resolution res, const BrownianPath& path,
                         const GaussLegendre& quad) {
  return assemble(discretize(problem, res, quad), path);
}

AssembledSystem assemble_bpf(const Discretization& disc, const BrownianPath& path) {
  require_matching(disc, path);
  const StochasticMatrix PS = stochastic_matrix(path, disc.res);
  const auto m = static_cast<Eigen::Index>(disc.res.m());
  const double md = static_cast<double>(m);
  const double h = disc.res.h();

  // Mean-value (block pulse) coefficients.
  const Eigen::MatrixXd Kb = (md * md) * disc.K.values;
  const Eigen::MatrixXd K1b = (md * md) * disc.K1.values;
  const Eigen::MatrixXd K2b = (md * md) * disc.K2.values;
  const Eigen::VectorXd Fb = md * forcing(disc, path).values;

  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(m, m);
  A.noalias() -= h * Kb.transpose();
  A.noalias() -= K1b.cwiseProduct(disc.P.P).transpose();
  A.noalias() -= K2b.cwiseProduct(PS.PS).transpose();

  return AssembledSystem{std::move(A), Fb, disc.res, Method::BlockPulse, path.seed()};
}

SolveResult solve(const AssembledSystem& system) {
  const Eigen::Index n = system.A.rows();
  if (system.A.cols() != n || system.rhs.size() != n) {
    throw std::invalid_argument("solve: system is not square or rhs has wrong length");
  }
  if (!system.A.allFinite() || !system.rhs.allFinite()) {
    throw std::invalid_argument("solve: system has non-finite entries");
  }

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(system.A);
  const double rcond = lu.rcond();
  if (!(rcond > std::numeric_limits<double>::epsilon())) {
    throw SingularSystemError("system matrix is singular to working precision (rcond = " +
                              std::to_string(rcond) + ")");
  }
  Eigen::VectorXd X = lu.solve(system.rhs);
  if (!X.allFinite()) throw SingularSystemError("factorization produced non-finite solution");

  const double scale = system.A.lpNorm<Eigen::Infinity>() * X.lpNorm<Eigen::Infinity>() +
                       system.rhs.lpNorm<Eigen::Infinity>();
  const double residual = (system.A * X - system.rhs).lpNorm<Eigen::Infinity>();
  const double relative = scale > 0.0 ? residual / scale : residual;
  if (relative > SolveResult::kResidualTolerance) {
    throw SingularSystemError("relative residual " + std::to_string(relative) +
                              " exceeds tolerance");
  }

  SolveResult out{system.res, system.method, std::move(X), relative, 1.0 / rcond, false};
  out.ill_conditioned = out.condition_estimate > SolveResult::kIllConditioned;
  return out;
}

SolveResult solve_path(const Discretization& disc, const BrownianPath& path, Method method) {
  return solve(method == Method::Walsh ? assemble(disc, path) : assemble_bpf(disc, path));
}

SolveResult solve_bpf(const SvfieProblem& problem, Resolution res, const BrownianPath& path,
                      const GaussLegendre& quad) {
  return solve(assemble_bpf(discretize(problem, res, quad), path));
}

double reconstruct_solution(const SolveResult& result, double t) {
  const auto j = static_cast<Eigen::Index>(result.res.cell_of(t));
  const double scale = result.method == Method::Walsh ? static_cast<double>(result.res.m()) : 1.0;
  return scale * result.X[j];
}

double SolveResult::operator()(double t) const { return reconstruct_solution(*this, t); }

Eigen::VectorXd walsh_coefficients(const SolveResult& result) {
  const Eigen::VectorXd c = walsh_matrix(result.res).as_real() * result.X;
  return result.method == Method::Walsh ? c : Eigen::VectorXd(c / static_cast<double>(result.res.m()));
}

}  // namespace svfie
