#pragma once

#include <cstddef>
#include <vector>

namespace svfie {

/// Fixed-order Gauss-Legendre rule. Nodes and weights are computed once on
/// [-1, 1] by Newton iteration on P_n and mapped affinely per interval.
class GaussLegendre {
 public:
  static constexpr int kDefaultOrder = 5;
  static constexpr int kMaxOrder = 128;

  explicit GaussLegendre(int order = kDefaultOrder);

  int order() const noexcept { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  template <class F>
  double integrate(F&& f, double a, double b) const {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t q = 0; q < nodes_.size(); ++q) {
      acc += weights_[q] * f(mid + half * nodes_[q]);
    }
    return half * acc;
  }

  /// Tensor-product rule over [a0,b0] x [a1,b1]; f(s, t) with s in the first
  /// interval.
  template <class F>
  double integrate2d(F&& f, double a0, double b0, double a1, double b1) const {
    const double hs = 0.5 * (b0 - a0), ms = 0.5 * (a0 + b0);
    const double ht = 0.5 * (b1 - a1), mt = 0.5 * (a1 + b1);
    double acc = 0.0;
    for (std::size_t p = 0; p < nodes_.size(); ++p) {
      const double s = ms + hs * nodes_[p];
      double row = 0.0;
      for (std::size_t q = 0; q < nodes_.size(); ++q) {
        row += weights_[q] * f(s, mt + ht * nodes_[q]);
      }
      acc += weights_[p] * row;
    }
    return hs * ht * acc;
  }

  /// Composite rule: [a,b] split into `panels` equal pieces.
  template <class F>
  double integrate_composite(F&& f, double a, double b, std::size_t panels) const {
    if (panels == 0 || b <= a) return 0.0;
    const double w = (b - a) / static_cast<double>(panels);
    double acc = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + static_cast<double>(p) * w;
      acc += integrate(f, lo, p + 1 == panels ? b : lo + w);
    }
    return acc;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace svfie
