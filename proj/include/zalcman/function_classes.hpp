#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "zalcman/measures.hpp"
#include "zalcman/series.hpp"

namespace zalcman {

/// Coefficient weights r(k), k >= 2, for classes of the form
/// { f : sum_k r(k) |a_k| <= 1 }.
///
/// Each named profile is the coefficient condition that places the class
/// inside a familiar univalent subclass:
///
///   starlike(beta)  (k - beta)/(1 - beta)          starlike of order beta
///   convex(beta)    k (k - beta)/(1 - beta)        convex of order beta
///   ust             3k - 2                         uniformly starlike
///   ucv             k (2k - 1)                     uniformly convex
///   nw(beta)        k/(1 - beta)                   Re f' > beta
///   spiral(beta,nu) 1 + (k-1)/(1-beta) sec(nu)     nu-spiral-like of order beta
///   hurwitz         k                              starlike(0)
///
/// Parameters are validated once, at construction.
class WeightProfile {
public:
  enum class Kind { Starlike, Convex, UniformlyStarlike, UniformlyConvex, NoshiroWarschawski, Spiral, Hurwitz, Tabulated };

  static WeightProfile starlike(double beta);
  static WeightProfile convex(double beta);
  static WeightProfile uniformly_starlike();
  static WeightProfile uniformly_convex();
  static WeightProfile noshiro_warschawski(double beta);
  static WeightProfile spiral(double beta, double nu);
  static WeightProfile hurwitz();
  /// values[i] is r(i + 2). Every entry must be positive.
  static WeightProfile tabulated(std::vector<double> values);

  /// Looks up a profile by its CLI name (starlike, convex, ust, ucv, nw,
  /// spiral, hurwitz). Throws ValidationError on an unknown name.
  static WeightProfile by_name(const std::string& name, double beta = 0.0, double nu = 0.0);

  /// r(k); throws std::out_of_range for k < 2 or past the end of a table.
  [[nodiscard]] double r(int k) const;

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] double beta() const noexcept { return beta_; }
  [[nodiscard]] double nu() const noexcept { return nu_; }
  [[nodiscard]] const std::vector<double>& table() const noexcept { return table_; }

private:
  WeightProfile(Kind kind, std::string name, double beta, double nu, std::vector<double> table = {});

  Kind kind_;
  std::string name_;
  double beta_;
  double nu_;
  std::vector<double> table_;
};

/// Closed convex hull of the convex univalent maps.
struct ConvexHullOfConvex {};

/// Re f'(z) > beta, 0 <= beta < 1.
struct NoshiroWarschawski {
  double beta = 0.0;
};

/// sum r(k) |a_k| <= 1.
struct CoefficientClass {
  WeightProfile profile;
};

class ClassSpec {
public:
  using Variant = std::variant<ConvexHullOfConvex, NoshiroWarschawski, CoefficientClass>;

  static ClassSpec convex_hull() { return ClassSpec(ConvexHullOfConvex{}); }
  static ClassSpec noshiro_warschawski(double beta);
  static ClassSpec coefficient(WeightProfile profile) { return ClassSpec(CoefficientClass{std::move(profile)}); }

  [[nodiscard]] const Variant& variant() const noexcept { return v_; }
  [[nodiscard]] bool has_measure_representation() const noexcept;
  /// Short label used in reports: "coc", "R", "H".
  [[nodiscard]] std::string label() const;
  /// Profile name for H, empty otherwise.
  [[nodiscard]] std::string profile_label() const;
  /// beta for R(beta), 0 otherwise.
  [[nodiscard]] double beta() const noexcept;

private:
  explicit ClassSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

/// Scale s(k) in a_k = s(k) \int e^{i(k-1) theta} dmu: 1 for the convex hull,
/// 2(1-beta)/k for R(beta). UnsupportedClassError for coefficient classes.
[[nodiscard]] double s_factor(const ClassSpec& cls, int k);

/// a_1 = 1 and a_k = s(k) b_{k-1} / 2 for 2 <= k <= order.
[[nodiscard]] PowerSeries series_from_measure(const ClassSpec& cls, const AtomicMeasure& mu, std::size_t order);

struct MembershipResult {
  bool member;
  double budget_used;
};

/// Evaluates sum_{k=2}^{N} r(k) |a_k| over the stored coefficients; membership
/// means the sum is at most 1 + 1e-12.
[[nodiscard]] MembershipResult h_membership(const PowerSeries& s, const WeightProfile& profile);

/// z + (alpha / r(k)) z^k, which spends the whole budget on a single index.
[[nodiscard]] PowerSeries h_extremal(const WeightProfile& profile, int k, Complex alpha, std::size_t order);

/// Random sparse member: a few indices in [2, order] (always including the
/// given `focus` indices when they fit), arbitrary phases and a total budget
/// in [0, 1].
[[nodiscard]] PowerSeries random_sparse_member(const WeightProfile& profile, std::size_t order,
                                               std::span<const int> focus, std::mt19937_64& rng);

}  // namespace zalcman
