#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace zalcman {

using Complex = std::complex<double>;

/// Truncated Taylor expansion f(z) = a_1 z + a_2 z^2 + ... + a_N z^N.
///
/// Coefficients are indexed from 1 (the constant term is always zero and is
/// not stored). Instances are immutable once built.
class PowerSeries {
public:
  /// Takes a_1..a_N in order. Throws ValidationError when empty.
  explicit PowerSeries(std::vector<Complex> coeffs);

  /// Same, but additionally requires a_1 == 1 (class A normalization).
  static PowerSeries normalized(std::vector<Complex> coeffs);

  /// z + 0 z^2 + ... + 0 z^N
  static PowerSeries identity(std::size_t order);

  /// a_k for 1 <= k <= order(); std::out_of_range otherwise.
  [[nodiscard]] Complex coeff(std::size_t k) const;

  [[nodiscard]] std::size_t order() const noexcept { return coeffs_.size(); }
  [[nodiscard]] std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  [[nodiscard]] bool is_normalized(double tol = 1e-12) const noexcept;

private:
  std::vector<Complex> coeffs_;
};

/// A unimodular constant c acting by f -> conj(c) f(c z).
class Rotation {
public:
  /// Throws ValidationError unless | |c| - 1 | <= 1e-12.
  explicit Rotation(Complex c);
  static Rotation from_angle(double phi) { return Rotation(std::polar(1.0, phi)); }

  [[nodiscard]] Complex value() const noexcept { return c_; }
  [[nodiscard]] Rotation inverse() const { return Rotation(std::conj(c_)); }

private:
  Complex c_;
};

/// Truncation order used when only a_n, a_m and a_{n+m-1} are read.
[[nodiscard]] std::size_t default_truncation(int n, int m);

/// Coefficient k of the result is c^{k-1} a_k. Requires a normalized input.
[[nodiscard]] PowerSeries rotate(const PowerSeries& s, const Rotation& r);

/// z / (1 - e^{i theta} z): a_k = e^{i (k-1) theta}.
[[nodiscard]] PowerSeries half_plane_kernel(double theta, std::size_t order);

/// -2(1-beta) log(1-z) - (1-2 beta) z: a_1 = 1, a_k = 2(1-beta)/k.
[[nodiscard]] PowerSeries slit_log_series(double beta, std::size_t order);

/// z / (1-z)^2: a_k = k.
[[nodiscard]] PowerSeries koebe_series(std::size_t order);

/// Coefficientwise sum of w_i * s_i. Weights must be nonnegative and sum to
/// one within 1e-12; all parts must share the same truncation order.
[[nodiscard]] PowerSeries convex_combination(std::span<const std::pair<double, PowerSeries>> parts);

/// F(z) = -z + 2 \int_0^z f(t)/t dt, i.e. A_1 = 1 and A_k = 2 a_k / k.
/// Maps the closed convex hull of convex maps into Re f' > 0.
[[nodiscard]] PowerSeries integral_transform(const PowerSeries& f);

}  // namespace zalcman
