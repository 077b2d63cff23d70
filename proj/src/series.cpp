#include "zalcman/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "zalcman/errors.hpp"

namespace zalcman {

namespace {

constexpr double kUnitTol = 1e-12;
constexpr double kWeightTol = 1e-12;

void require_normalized(const PowerSeries& s, const char* op) {
  if (!s.is_normalized())
    throw ValidationError(std::string(op) + ": series is not normalized (a_1 != 1)");
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty())
    throw ValidationError("PowerSeries: truncation order must be at least 1");
}

PowerSeries PowerSeries::normalized(std::vector<Complex> coeffs) {
  PowerSeries s(std::move(coeffs));
  require_normalized(s, "PowerSeries::normalized");
  return s;
}

PowerSeries PowerSeries::identity(std::size_t order) {
  std::vector<Complex> c(order, Complex{});
  if (!c.empty()) c[0] = 1.0;
  return PowerSeries(std::move(c));
}

Complex PowerSeries::coeff(std::size_t k) const {
  if (k < 1 || k > coeffs_.size())
    throw std::out_of_range("coefficient index " + std::to_string(k) + " outside [1, " +
                            std::to_string(coeffs_.size()) + "]");
  return coeffs_[k - 1];
}

bool PowerSeries::is_normalized(double tol) const noexcept {
  return std::abs(coeffs_.front() - Complex(1.0, 0.0)) <= tol;
}

Rotation::Rotation(Complex c) : c_(c) {
  if (!(std::abs(std::abs(c) - 1.0) <= kUnitTol))
    throw ValidationError("Rotation: |c| must equal 1");
}

std::size_t default_truncation(int n, int m) {
  if (n < 1 || m < 1) throw ValidationError("default_truncation: indices must be positive");
  return static_cast<std::size_t>(2 * std::max(n, m));
}

PowerSeries rotate(const PowerSeries& s, const Rotation& r) {
  require_normalized(s, "rotate");
  std::vector<Complex> out(s.order());
  Complex power = 1.0;
  for (std::size_t k = 1; k <= s.order(); ++k) {
    out[k - 1] = power * s.coeff(k);
    power *= r.value();
  }
  out[0] = 1.0;
  return PowerSeries(std::move(out));
}

PowerSeries half_plane_kernel(double theta, std::size_t order) {
  std::vector<Complex> c(order);
  for (std::size_t k = 1; k <= order; ++k)
    c[k - 1] = std::polar(1.0, static_cast<double>(k - 1) * theta);
  return PowerSeries(std::move(c));
}

PowerSeries slit_log_series(double beta, std::size_t order) {
  if (!(beta >= 0.0 && beta < 1.0))
    throw ValidationError("slit_log_series: beta must lie in [0, 1)");
  std::vector<Complex> c(order);
  c[0] = 1.0;
  for (std::size_t k = 2; k <= order; ++k) c[k - 1] = 2.0 * (1.0 - beta) / static_cast<double>(k);
  return PowerSeries(std::move(c));
}

PowerSeries koebe_series(std::size_t order) {
  std::vector<Complex> c(order);
  for (std::size_t k = 1; k <= order; ++k) c[k - 1] = static_cast<double>(k);
  return PowerSeries(std::move(c));
}

PowerSeries convex_combination(std::span<const std::pair<double, PowerSeries>> parts) {
  if (parts.empty()) throw ValidationError("convex_combination: no parts");
  const std::size_t order = parts.front().second.order();
  double total = 0.0;
  for (const auto& [w, s] : parts) {
    if (!(w >= 0.0)) throw ValidationError("convex_combination: negative weight");
    if (s.order() != order) throw ValidationError("convex_combination: truncation orders differ");
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightTol)
    throw ValidationError("convex_combination: weights must sum to 1");

  std::vector<Complex> out(order, Complex{});
  for (const auto& [w, s] : parts) {
    auto c = s.coefficients();
    for (std::size_t i = 0; i < order; ++i) out[i] += w * c[i];
  }
  return PowerSeries(std::move(out));
}

PowerSeries integral_transform(const PowerSeries& f) {
  require_normalized(f, "integral_transform");
  std::vector<Complex> out(f.order());
  out[0] = 1.0;
  for (std::size_t k = 2; k <= f.order(); ++k)
    out[k - 1] = 2.0 * f.coeff(k) / static_cast<double>(k);
  return PowerSeries(std::move(out));
}

}  // namespace zalcman
