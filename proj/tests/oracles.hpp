#pragma once

// Test-only reference computations, kept independent of the library's
// closed-form coefficient generators.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// Taylor coefficient a_k of an analytic f via the trapezoid rule on |z| = r:
// a_k = (1 / (M r^k)) sum_j f(r w^j) w^{-jk}, w = e^{2 pi i / M}.
inline Complex taylor_coefficient(const std::function<Complex(Complex)>& f, int k, double r = 0.5,
                                  int samples = 512) {
  Complex acc{};
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / samples;
    acc += f(std::polar(r, phi)) * std::polar(1.0, -phi * k);
  }
  return acc / (static_cast<double>(samples) * std::pow(r, k));
}

// Direct sum \sum_j w_j e^{i p theta_j}.
inline Complex trig_sum(const std::vector<double>& thetas, const std::vector<double>& weights, int p) {
  Complex acc{};
  for (std::size_t j = 0; j < thetas.size(); ++j)
    acc += weights[j] * Complex(std::cos(p * thetas[j]), std::sin(p * thetas[j]));
  return acc;
}

}  // namespace oracle
