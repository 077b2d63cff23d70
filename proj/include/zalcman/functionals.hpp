#pragma once

#include <string>
#include <utility>
#include <vector>

#include "zalcman/function_classes.hpp"
#include "zalcman/series.hpp"

namespace zalcman {

/// The triple (lambda, n, m) of the generalized Zalcman functional
/// lambda a_n a_m - a_{n+m-1}.
class FunctionalSpec {
public:
  /// Throws ValidationError unless lambda > 0 and n, m >= 2.
  FunctionalSpec(double lambda, int n, int m);
  /// The diagonal case lambda a_n^2 - a_{2n-1}.
  static FunctionalSpec diagonal(double lambda, int n) { return {lambda, n, n}; }

  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] int n() const noexcept { return n_; }
  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] int tail() const noexcept { return n_ + m_ - 1; }
  [[nodiscard]] bool is_diagonal() const noexcept { return n_ == m_; }

private:
  double lambda_;
  int n_;
  int m_;
};

/// Which closed-form branch produced a bound.
enum class Regime {
  Open,               ///< no theorem covers this (class, lambda, n, m)
  HalfPlaneLine,      ///< convex hull, lambda >= 2: lambda - 1
  AlternatingFamily,  ///< convex hull, lambda <= 2, n = m: 1
  HullJunction,       ///< convex hull, lambda = 2, n = m: both of the above
  SlitLogLine,        ///< R(beta) above the threshold
  SmallLambda,        ///< R(beta), n = m, below the threshold: 2(1-beta)/(2n-1)
  SlitLogJunction,    ///< R(beta), n = m, lambda exactly at the threshold
  OddIndex,           ///< H, 1/r(2n-1) wins
  MiddleIndex,        ///< H, lambda/r(n)^2 wins
  IndexTie,           ///< H, both terms agree within 1e-12
};

[[nodiscard]] std::string to_string(Regime r);

struct BoundResult {
  double value = 0.0;
  bool applicable = false;
  Regime regime = Regime::Open;
  std::vector<std::string> attainers;
};

/// How to read the upper end of the small-lambda range for R(beta), n = m,
/// whose printed form "4/3(1-beta)" admits two groupings.
enum class SmallLambdaRange {
  OverOneMinusBeta,   ///< lambda <= 4 / (3 (1 - beta)); meets the threshold at n = 2
  TimesOneMinusBeta,  ///< lambda <= (4/3)(1 - beta)
  UpToThreshold,      ///< lambda <= n^2 / ((1 - beta)(2n - 1)) for every n
};

[[nodiscard]] std::string to_string(SmallLambdaRange r);

/// lambda a_n a_m - a_{n+m-1}. std::out_of_range if s is truncated below n+m-1.
[[nodiscard]] Complex zalcman(const PowerSeries& s, const FunctionalSpec& spec);

/// Bound over the closed convex hull of convex maps.
[[nodiscard]] BoundResult bound_coc(const FunctionalSpec& spec);

/// nm / ((1-beta)(n+m-1)): lower end of the lambda range with the slit-log bound.
[[nodiscard]] double nw_threshold(double beta, int n, int m);

/// Upper end of the small-lambda range under the chosen reading.
[[nodiscard]] double small_lambda_limit(double beta, int n, SmallLambdaRange reading);

/// Bound over R(beta).
[[nodiscard]] BoundResult bound_R(double beta, const FunctionalSpec& spec,
                                  SmallLambdaRange reading = SmallLambdaRange::OverOneMinusBeta);

/// lambda at which lambda/r(n)^2 and 1/r(2n-1) coincide.
[[nodiscard]] double h_tie_lambda(const WeightProfile& profile, int n);

/// max{lambda / r(n)^2, 1 / r(2n-1)} for lambda a_n^2 - a_{2n-1} over H.
[[nodiscard]] BoundResult bound_H(const WeightProfile& profile, double lambda, int n);

/// Dispatches to the bound for the class. H requires n = m.
[[nodiscard]] BoundResult class_bound(const ClassSpec& cls, const FunctionalSpec& spec,
                                      SmallLambdaRange reading = SmallLambdaRange::OverOneMinusBeta);

/// |lambda - 2 s(n+m-1)/(s(n)s(m))| s(n) s(m) + s(n+m-1): the bound valid for
/// any class whose coefficients are s(k) times a trigonometric moment.
[[nodiscard]] double moment_bound(const ClassSpec& cls, const FunctionalSpec& spec);

struct PolytopeMax {
  double value;
  std::vector<std::pair<double, double>> vertices;  ///< maximizing (u, v), both on a tie
};

/// max of lambda u^2 + v over { u, v >= 0, q_n u + q_2n1 v <= 1 }.
[[nodiscard]] PolytopeMax polytope_max(double lambda, double q_n, double q_2n1);

/// (n-1)(m-1), the conjectured bound over all univalent functions. Reference only.
[[nodiscard]] double ma_reference(int n, int m);

/// Series that attain an applicable bound (with unit rotation / alpha = 1).
/// Empty when the bound is not applicable.
[[nodiscard]] std::vector<PowerSeries> attainer_series(const ClassSpec& cls, const FunctionalSpec& spec,
                                                       const BoundResult& bound);

}  // namespace zalcman
