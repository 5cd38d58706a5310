#pragma once

#include <cstddef>
#include <cstdint>

namespace svfie {

/// Uniform dyadic partition of [0,1) into m = 2^k cells of width h = 1/m.
///
/// Construction rejects any m that is not a power of two; Walsh functions are
/// only constant on the cells of such partitions.
class Resolution {
 public:
  explicit Resolution(std::size_t m);

  static Resolution from_log2(unsigned k);

  std::size_t m() const noexcept { return m_; }
  double h() const noexcept { return h_; }
  unsigned log2() const noexcept { return k_; }

  /// Index of the cell containing t, i.e. floor(m t). Throws DomainError
  /// unless 0 <= t < 1.
  std::size_t cell_of(double t) const;

  double cell_start(std::size_t j) const noexcept { return static_cast<double>(j) * h_; }
  double midpoint(std::size_t j) const noexcept { return (static_cast<double>(j) + 0.5) * h_; }

  friend bool operator==(const Resolution& a, const Resolution& b) noexcept { return a.m_ == b.m_; }

 private:
  std::size_t m_;
  double h_;
  unsigned k_;
};

bool is_power_of_two(std::uint64_t n) noexcept;

// Throws DomainError unless 0 <= t < 1.
void require_unit_interval(double t, const char* what);

}  // namespace svfie
