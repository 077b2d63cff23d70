#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "zalcman/errors.hpp"
#include "zalcman/functionals.hpp"
#include "zalcman/series.hpp"

using namespace zalcman;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex I{0.0, 1.0};

bool near(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("coeff reads index-1 storage and rejects out-of-range indices") {
  const auto k = koebe_series(5);
  CHECK(k.coeff(3) == Complex(3.0));
  CHECK(k.coeff(1) == Complex(1.0));
  CHECK_THROWS_AS((void)k.coeff(0), std::out_of_range);
  CHECK_THROWS_AS((void)k.coeff(6), std::out_of_range);
  CHECK(half_plane_kernel(0.0, 5).coeff(4) == Complex(1.0));
  CHECK(slit_log_series(0.0, 5).coeff(4).real() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("empty and non-normalized series are rejected where required") {
  CHECK_THROWS_AS(PowerSeries(std::vector<Complex>{}), ValidationError);
  CHECK_THROWS_AS(PowerSeries::normalized({2.0, 1.0}), ValidationError);
  CHECK_NOTHROW(PowerSeries::normalized({1.0, 1.0}));
  CHECK_THROWS_AS((void)rotate(PowerSeries({0.5, 1.0}), Rotation(1.0)), ValidationError);
  CHECK_THROWS_AS((void)integral_transform(PowerSeries({0.5, 1.0})), ValidationError);
}

TEST_CASE("rotation") {
  SUBCASE("unit modulus is enforced") {
    CHECK_THROWS_AS(Rotation(Complex(1.0 + 1e-9, 0.0)), ValidationError);
    CHECK_THROWS_AS(Rotation(Complex(0.5, 0.5)), ValidationError);
    CHECK_NOTHROW(Rotation(std::polar(1.0, 0.3)));
  }
  SUBCASE("identity leaves the series unchanged") {
    const auto s = slit_log_series(0.3, 6);
    const auto r = rotate(s, Rotation(1.0));
    for (std::size_t k = 1; k <= 6; ++k) CHECK(r.coeff(k) == s.coeff(k));
  }
  SUBCASE("c = -1 alternates the Koebe coefficients") {
    const auto r = rotate(koebe_series(4), Rotation(-1.0));
    CHECK(r.coeff(1) == Complex(1.0));
    CHECK(r.coeff(2) == Complex(-2.0));
    CHECK(r.coeff(3) == Complex(3.0));
    CHECK(r.coeff(4) == Complex(-4.0));
  }
  SUBCASE("c = i multiplies a_2 by i") {
    const auto r = rotate(PowerSeries::normalized({1.0, 1.0, 0.0}), Rotation(I));
    CHECK(near(r.coeff(2), I));
    CHECK(r.is_normalized());
  }
}

TEST_CASE("half-plane kernel coefficients") {
  const auto a = half_plane_kernel(0.0, 3);
  CHECK(a.coeff(1) == Complex(1.0));
  CHECK(a.coeff(2) == Complex(1.0));
  CHECK(a.coeff(3) == Complex(1.0));
  const auto b = half_plane_kernel(kPi, 3);
  CHECK(near(b.coeff(2), -1.0));
  CHECK(near(b.coeff(3), 1.0));
  const auto c = half_plane_kernel(kPi / 2, 3);
  CHECK(near(c.coeff(2), I));
  CHECK(near(c.coeff(3), -1.0));

  // Contour oracle on z / (1 - e^{i theta} z).
  const double theta = 1.234;
  const auto s = half_plane_kernel(theta, 8);
  const auto f = [theta](Complex z) { return z / (1.0 - std::polar(1.0, theta) * z); };
  for (int k = 1; k <= 8; ++k) CHECK(near(s.coeff(static_cast<std::size_t>(k)), oracle::taylor_coefficient(f, k), 1e-10));
}

TEST_CASE("slit-log series matches a termwise expansion") {
  // Values frozen from a symbolic expansion of -2(1-b) log(1-z) - (1-2b) z.
  CHECK(slit_log_series(0.0, 5).coeff(3).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(slit_log_series(0.5, 5).coeff(2).real() == doctest::Approx(0.5).epsilon(1e-15));
  for (double beta : {0.0, 0.2, 0.7}) CHECK(slit_log_series(beta, 4).coeff(1) == Complex(1.0));
  CHECK_THROWS_AS((void)slit_log_series(1.0, 4), ValidationError);
  CHECK_THROWS_AS((void)slit_log_series(-0.1, 4), ValidationError);

  const double beta = 0.35;
  const auto s = slit_log_series(beta, 10);
  const auto f = [beta](Complex z) { return -2.0 * (1.0 - beta) * std::log(1.0 - z) - z * (1.0 - 2.0 * beta); };
  for (int k = 1; k <= 10; ++k) CHECK(near(s.coeff(static_cast<std::size_t>(k)), oracle::taylor_coefficient(f, k), 1e-10));
}

TEST_CASE("Koebe series and the Zalcman equality case") {
  const auto two = koebe_series(2);
  CHECK(two.coeff(1) == Complex(1.0));
  CHECK(two.coeff(2) == Complex(2.0));
  CHECK(koebe_series(5).coeff(5) == Complex(5.0));
  CHECK(std::abs(zalcman::zalcman(koebe_series(5), FunctionalSpec::diagonal(1.0, 3))) == doctest::Approx(4.0));

  const auto f = [](Complex z) { return z / ((1.0 - z) * (1.0 - z)); };
  const auto k = koebe_series(7);
  for (int j = 1; j <= 7; ++j) CHECK(near(k.coeff(static_cast<std::size_t>(j)), oracle::taylor_coefficient(f, j), 1e-9));
}

TEST_CASE("convex combination") {
  const auto kernel0 = half_plane_kernel(0.0, 4);
  const auto kernelPi = half_plane_kernel(kPi, 4);

  const std::vector<std::pair<double, PowerSeries>> single = {{1.0, kernel0}};
  const auto id = convex_combination(single);
  for (std::size_t k = 1; k <= 4; ++k) CHECK(id.coeff(k) == kernel0.coeff(k));

  const std::vector<std::pair<double, PowerSeries>> halves = {{0.5, kernel0}, {0.5, kernelPi}};
  CHECK(near(convex_combination(halves).coeff(2), 0.0));

  // The alternating two-atom function at 3pi/2 and pi/2.
  const std::vector<std::pair<double, PowerSeries>> alt = {{0.5, half_plane_kernel(3 * kPi / 2, 4)},
                                                           {0.5, half_plane_kernel(kPi / 2, 4)}};
  const auto a = convex_combination(alt);
  CHECK(near(a.coeff(2), 0.0));
  CHECK(near(a.coeff(3), -1.0));

  const std::vector<std::pair<double, PowerSeries>> bad_sum = {{0.5, kernel0}, {0.6, kernelPi}};
  CHECK_THROWS_AS((void)convex_combination(bad_sum), ValidationError);
  const std::vector<std::pair<double, PowerSeries>> negative = {{1.5, kernel0}, {-0.5, kernelPi}};
  CHECK_THROWS_AS((void)convex_combination(negative), ValidationError);
  const std::vector<std::pair<double, PowerSeries>> mixed = {{0.5, kernel0}, {0.5, half_plane_kernel(0.0, 3)}};
  CHECK_THROWS_AS((void)convex_combination(mixed), ValidationError);
}

TEST_CASE("integral transform") {
  const auto l = integral_transform(half_plane_kernel(0.0, 8));
  CHECK(l.coeff(1) == Complex(1.0));
  for (std::size_t k = 2; k <= 8; ++k) CHECK(near(l.coeff(k), 2.0 / static_cast<double>(k)));

  // -z + 2 \int_0^z dt/(1-t) = -z - 2 log(1-z), checked by the contour oracle.
  const auto g = [](Complex z) { return -z - 2.0 * std::log(1.0 - z); };
  for (int k = 1; k <= 8; ++k) CHECK(near(l.coeff(static_cast<std::size_t>(k)), oracle::taylor_coefficient(g, k), 1e-10));

  const auto a = integral_transform(PowerSeries::normalized({1.0, 0.0, -1.0}));
  CHECK(near(a.coeff(2), 0.0));
  CHECK(near(a.coeff(3), -2.0 / 3.0));

  const auto id = integral_transform(PowerSeries::identity(5));
  for (std::size_t k = 2; k <= 5; ++k) CHECK(id.coeff(k) == Complex(0.0));
}

TEST_CASE("properties over random inputs") {
  std::mt19937_64 rng(20261017);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int trial = 0; trial < 500; ++trial) {
    const double theta = angle(rng);
    const auto kernel = half_plane_kernel(theta, 12);
    for (std::size_t k = 1; k <= 12; ++k) CHECK(std::abs(std::abs(kernel.coeff(k)) - 1.0) <= 1e-12);

    // rotate by c then by conj(c) is the identity.
    std::vector<Complex> c(9);
    c[0] = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) c[k] = Complex(unit(rng) - 0.5, unit(rng) - 0.5) * 4.0;
    const auto s = PowerSeries::normalized(c);
    const Rotation r = Rotation::from_angle(angle(rng));
    const auto back = rotate(rotate(s, r), r.inverse());
    for (std::size_t k = 1; k <= s.order(); ++k) CHECK(near(back.coeff(k), s.coeff(k)));

    // Linearity of convex combination in each part.
    const double w = unit(rng);
    const auto a = half_plane_kernel(angle(rng), 6);
    const auto b = slit_log_series(unit(rng) * 0.99, 6);
    const std::vector<std::pair<double, PowerSeries>> parts = {{w, a}, {1.0 - w, b}};
    const auto mix = convex_combination(parts);
    for (std::size_t k = 1; k <= 6; ++k) CHECK(near(mix.coeff(k), w * a.coeff(k) + (1.0 - w) * b.coeff(k)));
  }
}

TEST_CASE("default truncation covers every index the functional reads") {
  for (int n = 2; n <= 8; ++n)
    for (int m = 2; m <= 8; ++m) CHECK(default_truncation(n, m) >= static_cast<std::size_t>(n + m - 1));
  CHECK(default_truncation(2, 3) == 6);
}
