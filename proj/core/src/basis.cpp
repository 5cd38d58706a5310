#include "svfie/basis.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "svfie/error.hpp"

namespace svfie {

bool is_power_of_two(std::uint64_t n) noexcept { return std::has_single_bit(n); }

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t < 1.0)) {
    throw DomainError(std::string(what) + ": t = " + std::to_string(t) + " outside [0, 1)");
  }
}

Resolution::Resolution(std::size_t m) : m_(m), h_(0.0), k_(0) {
  if (!is_power_of_two(m)) {
    throw std::invalid_argument("resolution m = " + std::to_string(m) +
                                " is not a power of two");
  }
  k_ = static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(m)));
  h_ = std::ldexp(1.0, -static_cast<int>(k_));
}

Resolution Resolution::from_log2(unsigned k) {
  if (k >= 63) throw std::invalid_argument("resolution exponent too large");
  return Resolution(std::size_t{1} << k);
}

std::size_t Resolution::cell_of(double t) const {
  require_unit_interval(t, "cell_of");
  // m t is exact for dyadic m, so the floor is the true cell index.
  const auto j = static_cast<std::size_t>(std::floor(std::ldexp(t, static_cast<int>(k_))));
  return j < m_ ? j : m_ - 1;
}

int rademacher(unsigned i, double t) {
  require_unit_interval(t, "rademacher");
  if (i == 0) return 1;
  // Every double in [0,1) is a multiple of 2^-1074, so beyond that 2^i t is an
  // even integer.
  if (i > 1075) return 1;
  const double scaled = std::floor(std::ldexp(t, static_cast<int>(i)));
  return std::fmod(scaled, 2.0) == 0.0 ? 1 : -1;
}

int walsh_eval(std::uint64_t n, double t) {
  require_unit_interval(t, "walsh_eval");
  int value = 1;
  for (unsigned p = 0; n != 0; ++p, n >>= 1) {
    if (n & 1u) value *= rademacher(p + 1, t);
  }
  return value;
}

WalshMatrix::WalshMatrix(Resolution res, Entries entries) : res_(res), entries_(std::move(entries)) {
  const auto m = static_cast<Eigen::Index>(res_.m());
  if (entries_.rows() != m || entries_.cols() != m) {
    throw std::invalid_argument("WalshMatrix: entries must be m x m");
  }
}

WalshMatrix walsh_matrix(Resolution res) {
  const std::size_t m = res.m();
  WalshMatrix::Entries e(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double eta = res.midpoint(j);
    for (std::size_t i = 0; i < m; ++i) {
      e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = walsh_eval(i, eta);
    }
  }
  return WalshMatrix(res, std::move(e));
}

CoeffVector::CoeffVector(Resolution r, Eigen::VectorXd v) : res(r), values(std::move(v)) {
  if (values.size() != static_cast<Eigen::Index>(res.m())) {
    throw std::invalid_argument("CoeffVector: length must equal m");
  }
}

CoeffMatrix::CoeffMatrix(Resolution r, Eigen::MatrixXd v) : res(r), values(std::move(v)) {
  const auto m = static_cast<Eigen::Index>(res.m());
  if (values.rows() != m || values.cols() != m) {
    throw std::invalid_argument("CoeffMatrix: shape must be m x m");
  }
}

CoeffVector cell_integrals_1d(const ScalarFn1& f, Resolution res, const GaussLegendre& quad) {
  const std::size_t m = res.m();
  Eigen::VectorXd v(m);
  for (std::size_t i = 0; i < m; ++i) {
    v[static_cast<Eigen::Index>(i)] = quad.integrate(f, res.cell_start(i), res.cell_start(i + 1));
  }
  return CoeffVector(res, std::move(v));
}

CoeffMatrix cell_integrals_2d(const ScalarFn2& k, Resolution res, const GaussLegendre& quad) {
  const std::size_t m = res.m();
  Eigen::MatrixXd v(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          quad.integrate2d(k, res.cell_start(i), res.cell_start(i + 1), res.cell_start(j),
                           res.cell_start(j + 1));
    }
  }
  return CoeffMatrix(res, std::move(v));
}

double reconstruct(const CoeffVector& coeffs, double t) {
  const std::size_t j = coeffs.res.cell_of(t);
  return static_cast<double>(coeffs.res.m()) * coeffs.values[static_cast<Eigen::Index>(j)];
}

Eigen::VectorXd walsh_coefficients(const CoeffVector& coeffs, const WalshMatrix& tw) {
  if (!(coeffs.res == tw.resolution())) {
    throw std::invalid_argument("walsh_coefficients: resolution mismatch");
  }
  return tw.as_real() * coeffs.values;
}

double walsh_series(const Eigen::VectorXd& c, double t) {
  require_unit_interval(t, "walsh_series");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    acc += c[i] * walsh_eval(static_cast<std::uint64_t>(i), t);
  }
  return acc;
}

}  // namespace svfie
