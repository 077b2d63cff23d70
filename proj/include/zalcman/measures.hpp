#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

#include "zalcman/series.hpp"

namespace zalcman {

struct Atom {
  double theta;   ///< radians, canonical range [0, 2pi)
  double weight;  ///< nonnegative mass

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely supported probability measure on the unit circle.
///
/// Construction canonicalizes every angle into [0, 2pi), drops atoms of zero
/// mass and checks that the remaining masses sum to one within 1e-12.
class AtomicMeasure {
public:
  explicit AtomicMeasure(std::vector<Atom> atoms);

  /// Divides the given (nonnegative, not all zero) weights by their sum first.
  static AtomicMeasure normalized(std::span<const double> thetas, std::span<const double> weights);
  static AtomicMeasure point_mass(double theta) { return AtomicMeasure({{theta, 1.0}}); }

  [[nodiscard]] std::span<const Atom> atoms() const noexcept { return atoms_; }
  [[nodiscard]] std::size_t size() const noexcept { return atoms_.size(); }

  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

private:
  std::vector<Atom> atoms_;
};

/// Reduces an angle into [0, 2pi).
[[nodiscard]] double canonical_angle(double theta);

/// b_k = 2 \sum_j m_j e^{i k theta_j}. Throws std::out_of_range for k < 0.
[[nodiscard]] Complex moment(const AtomicMeasure& mu, int k);

/// |b_{n-1} b_{m-1} - b_{n+m-2}|, which never exceeds 2 for a probability
/// measure (Livingston's moment inequality).
[[nodiscard]] double livingston_gap(const AtomicMeasure& mu, int n, int m);

/// The 2n-2 atom family at theta_k = (2k+1) pi / (2n-2), k = 1..2n-2.
/// Odd k take their masses from `odd_weights`, even k from `even_weights`;
/// each list has n-1 entries summing to 1/2. Every member makes a_n vanish and
/// a_{2n-1} = -1 for the convex-hull class, so |lambda a_n^2 - a_{2n-1}| = 1.
[[nodiscard]] AtomicMeasure alternating_extremal_measure(int n, std::span<const double> even_weights,
                                                         std::span<const double> odd_weights);

/// Equal masses 1/(2n-2) on the alternating family above.
[[nodiscard]] AtomicMeasure alternating_extremal_measure(int n);

/// K atoms, angles uniform on [0, 2pi), masses uniform on the simplex
/// (normalized exponential draws). Deterministic in `seed`.
[[nodiscard]] AtomicMeasure random_measure(std::size_t atom_count, std::uint64_t seed);

void to_json(nlohmann::json& j, const AtomicMeasure& mu);
/// Reads {"atoms": [[theta, weight], ...]}; throws ValidationError on bad shape.
[[nodiscard]] AtomicMeasure measure_from_json(const nlohmann::json& j);

}  // namespace zalcman
