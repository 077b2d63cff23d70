#include "zalcman/measures.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "zalcman/errors.hpp"

namespace zalcman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kMassTol = 1e-12;

void check_half_simplex(std::span<const double> w, std::size_t expected, const char* which) {
  if (w.size() != expected)
    throw ValidationError(std::string("alternating_extremal_measure: ") + which + " weights need " +
                          std::to_string(expected) + " entries");
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw ValidationError("alternating_extremal_measure: negative weight");
    total += x;
  }
  if (std::abs(total - 0.5) > kMassTol)
    throw ValidationError(std::string("alternating_extremal_measure: ") + which +
                          " weights must sum to 1/2");
}

}  // namespace

double canonical_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

AtomicMeasure::AtomicMeasure(std::vector<Atom> atoms) {
  double total = 0.0;
  atoms_.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!std::isfinite(a.theta)) throw ValidationError("AtomicMeasure: non-finite angle");
    if (!(a.weight >= 0.0)) throw ValidationError("AtomicMeasure: weights must be nonnegative");
    total += a.weight;
    if (a.weight > 0.0) atoms_.push_back({canonical_angle(a.theta), a.weight});
  }
  if (atoms_.empty()) throw ValidationError("AtomicMeasure: needs at least one atom of positive mass");
  if (std::abs(total - 1.0) > kMassTol)
    throw ValidationError("AtomicMeasure: weights must sum to 1 (got " + std::to_string(total) + ")");
}

AtomicMeasure AtomicMeasure::normalized(std::span<const double> thetas, std::span<const double> weights) {
  if (thetas.size() != weights.size())
    throw ValidationError("AtomicMeasure::normalized: angle and weight counts differ");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("AtomicMeasure::normalized: negative weight");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("AtomicMeasure::normalized: zero total mass");
  std::vector<Atom> atoms(thetas.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) atoms[i] = {thetas[i], weights[i] / total};
  return AtomicMeasure(std::move(atoms));
}

Complex moment(const AtomicMeasure& mu, int k) {
  if (k < 0) throw std::out_of_range("moment: order must be nonnegative");
  Complex sum{};
  for (const auto& a : mu.atoms()) sum += a.weight * std::polar(1.0, static_cast<double>(k) * a.theta);
  return 2.0 * sum;
}

double livingston_gap(const AtomicMeasure& mu, int n, int m) {
  if (n < 2 || m < 2) throw ValidationError("livingston_gap: n and m must be at least 2");
  return std::abs(moment(mu, n - 1) * moment(mu, m - 1) - moment(mu, n + m - 2));
}

AtomicMeasure alternating_extremal_measure(int n, std::span<const double> even_weights,
                                           std::span<const double> odd_weights) {
  if (n < 2) throw ValidationError("alternating_extremal_measure: n must be at least 2");
  const auto half = static_cast<std::size_t>(n - 1);
  check_half_simplex(even_weights, half, "even");
  check_half_simplex(odd_weights, half, "odd");

  std::vector<Atom> atoms;
  atoms.reserve(2 * half);
  const double denom = 2.0 * (n - 1);
  for (int k = 1; k <= 2 * (n - 1); ++k) {
    const double theta = (2.0 * k + 1.0) * std::numbers::pi / denom;
    const auto slot = static_cast<std::size_t>((k - 1) / 2);
    const double w = (k % 2 == 1) ? odd_weights[slot] : even_weights[slot];
    atoms.push_back({theta, w});
  }
  return AtomicMeasure(std::move(atoms));
}

AtomicMeasure alternating_extremal_measure(int n) {
  if (n < 2) throw ValidationError("alternating_extremal_measure: n must be at least 2");
  std::vector<double> w(static_cast<std::size_t>(n - 1), 0.5 / (n - 1));
  return alternating_extremal_measure(n, w, w);
}

AtomicMeasure random_measure(std::size_t atom_count, std::uint64_t seed) {
  if (atom_count == 0) throw ValidationError("random_measure: atom count must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::exponential_distribution<double> mass(1.0);
  std::vector<double> thetas(atom_count), weights(atom_count);
  for (std::size_t i = 0; i < atom_count; ++i) {
    thetas[i] = angle(rng);
    weights[i] = mass(rng);
  }
  return AtomicMeasure::normalized(thetas, weights);
}

void to_json(nlohmann::json& j, const AtomicMeasure& mu) {
  auto atoms = nlohmann::json::array();
  for (const auto& a : mu.atoms()) atoms.push_back({a.theta, a.weight});
  j = nlohmann::json{{"atoms", std::move(atoms)}};
}

AtomicMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.at("atoms").is_array())
    throw ValidationError("measure JSON must be an object with an \"atoms\" array");
  std::vector<Atom> atoms;
  for (const auto& entry : j.at("atoms")) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
      throw ValidationError("each atom must be a [theta, weight] pair");
    atoms.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  return AtomicMeasure(std::move(atoms));
}

}  // namespace zalcman
