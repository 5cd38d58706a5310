#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "svfie/quadrature.hpp"
#include "svfie/resolution.hpp"

namespace svfie {

using ScalarFn1 = std::function<double(double)>;
using ScalarFn2 = std::function<double(double, double)>;

/// r_i(t) = (-1)^floor(2^i t), with r_0 = 1. Right-continuous at dyadic
/// breakpoints, so it never returns 0.
int rademacher(unsigned i, double t);

/// Paley-ordered Walsh function: product of r_{p+1}(t) over set bits p of n.
int walsh_eval(std::uint64_t n, double t);

/// T_W for a dyadic resolution: entries(i, j) = w_i at the midpoint of cell j.
///
/// Entries are kept as integers so that symmetry and T_W T_W = m I can be
/// checked exactly.
class WalshMatrix {
 public:
  using Entries = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

  WalshMatrix(Resolution res, Entries entries);

  const Resolution& resolution() const noexcept { return res_; }
  std::size_t size() const noexcept { return res_.m(); }
  const Entries& entries() const noexcept { return entries_; }
  int operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  Eigen::MatrixXd as_real() const { return entries_.cast<double>(); }

 private:
  Resolution res_;
  Entries entries_;
};

WalshMatrix walsh_matrix(Resolution res);

/// values[i] = integral of f over cell i (not the cell mean).
struct CoeffVector {
  CoeffVector(Resolution r, Eigen::VectorXd v);

  Resolution res;
  Eigen::VectorXd values;
};

/// values(i, j) = double integral of k over s in cell i, t in cell j.
struct CoeffMatrix {
  CoeffMatrix(Resolution r, Eigen::MatrixXd v);

  Resolution res;
  Eigen::MatrixXd values;
};

CoeffVector cell_integrals_1d(const ScalarFn1& f, Resolution res,
                              const GaussLegendre& quad = GaussLegendre{});

CoeffMatrix cell_integrals_2d(const ScalarFn2& k, Resolution res,
                              const GaussLegendre& quad = GaussLegendre{});

/// Staircase value m * values[floor(m t)], which equals F^T T_W W(t).
double reconstruct(const CoeffVector& coeffs, double t);

/// Walsh-series coefficients c = T_W F, so that f_m(t) = sum_i c_i w_i(t).
Eigen::VectorXd walsh_coefficients(const CoeffVector& coeffs, const WalshMatrix& tw);

/// Direct synthesis sum_i c_i w_i(t) by evaluating every Walsh function.
double walsh_series(const Eigen::VectorXd& c, double t);

}  // namespace svfie
