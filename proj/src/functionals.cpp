#include "zalcman/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <variant>

#include "zalcman/errors.hpp"
#include "zalcman/measures.hpp"

namespace zalcman {

namespace {

constexpr double kTieTol = 1e-12;

void check_beta(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw ValidationError("beta must lie in [0, 1)");
}

}  // namespace

FunctionalSpec::FunctionalSpec(double lambda, int n, int m) : lambda_(lambda), n_(n), m_(m) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ValidationError("lambda must be a positive number");
  if (n < 2 || m < 2) throw ValidationError("n and m must be at least 2");
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Open: return "open";
    case Regime::HalfPlaneLine: return "coc:lambda-1";
    case Regime::AlternatingFamily: return "coc:unit";
    case Regime::HullJunction: return "coc:junction";
    case Regime::SlitLogLine: return "R:slit-log";
    case Regime::SmallLambda: return "R:small-lambda";
    case Regime::SlitLogJunction: return "R:junction";
    case Regime::OddIndex: return "H:index-2n-1";
    case Regime::MiddleIndex: return "H:index-n";
    case Regime::IndexTie: return "H:tie";
  }
  return "unknown";
}

std::string to_string(SmallLambdaRange r) {
  switch (r) {
    case SmallLambdaRange::OverOneMinusBeta: return "over-one-minus-beta";
    case SmallLambdaRange::TimesOneMinusBeta: return "times-one-minus-beta";
    case SmallLambdaRange::UpToThreshold: return "up-to-threshold";
  }
  return "unknown";
}

Complex zalcman(const PowerSeries& s, const FunctionalSpec& spec) {
  const auto tail = static_cast<std::size_t>(spec.tail());
  if (s.order() < tail)
    throw std::out_of_range("zalcman: series truncated at " + std::to_string(s.order()) + " but index " +
                            std::to_string(tail) + " is needed");
  const auto n = static_cast<std::size_t>(spec.n());
  const auto m = static_cast<std::size_t>(spec.m());
  return spec.lambda() * s.coeff(n) * s.coeff(m) - s.coeff(tail);
}

BoundResult bound_coc(const FunctionalSpec& spec) {
  const double lambda = spec.lambda();
  BoundResult out;
  if (lambda >= 2.0) {
    out.value = lambda - 1.0;
    out.applicable = true;
    out.regime = Regime::HalfPlaneLine;
    out.attainers.push_back("z/(1-z) and rotations");
    if (lambda == 2.0 && spec.is_diagonal()) {
      out.regime = Regime::HullJunction;
      out.attainers.push_back("alternating 2n-2 atom family and rotations");
    }
  } else if (spec.is_diagonal()) {
    out.value = 1.0;
    out.applicable = true;
    out.regime = Regime::AlternatingFamily;
    out.attainers.push_back("alternating 2n-2 atom family and rotations");
  }
  return out;
}

double nw_threshold(double beta, int n, int m) {
  check_beta(beta);
  return static_cast<double>(n) * m / ((1.0 - beta) * (n + m - 1));
}

double small_lambda_limit(double beta, int n, SmallLambdaRange reading) {
  check_beta(beta);
  switch (reading) {
    case SmallLambdaRange::OverOneMinusBeta: return 4.0 / (3.0 * (1.0 - beta));
    case SmallLambdaRange::TimesOneMinusBeta: return 4.0 / 3.0 * (1.0 - beta);
    case SmallLambdaRange::UpToThreshold: return nw_threshold(beta, n, n);
  }
  throw std::logic_error("unreachable range reading");
}

BoundResult bound_R(double beta, const FunctionalSpec& spec, SmallLambdaRange reading) {
  check_beta(beta);
  const int n = spec.n();
  const int m = spec.m();
  const double lambda = spec.lambda();
  const double threshold = nw_threshold(beta, n, m);
  const double one_minus = 1.0 - beta;
  const bool small_ok = spec.is_diagonal() && lambda <= std::min(threshold, small_lambda_limit(beta, n, reading));

  BoundResult out;
  if (lambda >= threshold) {
    out.value = 4.0 * lambda * one_minus * one_minus / (static_cast<double>(n) * m) -
                2.0 * one_minus / (n + m - 1);
    out.applicable = true;
    out.regime = Regime::SlitLogLine;
    out.attainers.push_back("-2(1-beta)log(1-z) - (1-2beta)z and rotations");
    if (small_ok) {
      out.regime = Regime::SlitLogJunction;
      out.attainers.push_back("integral transform of the alternating 2n-2 atom family and rotations");
    }
  } else if (small_ok) {
    out.value = 2.0 * one_minus / (2 * n - 1);
    out.applicable = true;
    out.regime = Regime::SmallLambda;
    out.attainers.push_back("integral transform of the alternating 2n-2 atom family and rotations");
  }
  return out;
}

double h_tie_lambda(const WeightProfile& profile, int n) {
  const double rn = profile.r(n);
  return rn * rn / profile.r(2 * n - 1);
}

PolytopeMax polytope_max(double lambda, double q_n, double q_2n1) {
  if (!(lambda > 0.0) || !(q_n > 0.0) || !(q_2n1 > 0.0))
    throw ValidationError("polytope_max: lambda and both weights must be positive");
  const double middle = lambda / (q_n * q_n);
  const double odd = 1.0 / q_2n1;
  PolytopeMax out{std::max(middle, odd), {}};
  if (std::abs(middle - odd) < kTieTol) {
    out.vertices = {{1.0 / q_n, 0.0}, {0.0, 1.0 / q_2n1}};
  } else if (middle > odd) {
    out.vertices = {{1.0 / q_n, 0.0}};
  } else {
    out.vertices = {{0.0, 1.0 / q_2n1}};
  }
  return out;
}

BoundResult bound_H(const WeightProfile& profile, double lambda, int n) {
  if (!(lambda > 0.0)) throw ValidationError("bound_H: lambda must be positive");
  if (n < 2) throw ValidationError("bound_H: n must be at least 2");
  const auto pm = polytope_max(lambda, profile.r(n), profile.r(2 * n - 1));
  BoundResult out{pm.value, true, Regime::Open, {}};
  const bool middle = std::any_of(pm.vertices.begin(), pm.vertices.end(), [](auto v) { return v.first > 0.0; });
  const bool odd = std::any_of(pm.vertices.begin(), pm.vertices.end(), [](auto v) { return v.second > 0.0; });
  if (odd) out.attainers.push_back("z + alpha z^(2n-1)/r(2n-1), |alpha| = 1");
  if (middle) out.attainers.push_back("z + alpha z^n/r(n), |alpha| = 1");
  out.regime = (middle && odd) ? Regime::IndexTie : (middle ? Regime::MiddleIndex : Regime::OddIndex);
  return out;
}

BoundResult class_bound(const ClassSpec& cls, const FunctionalSpec& spec, SmallLambdaRange reading) {
  return std::visit(
      [&](const auto& c) -> BoundResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ConvexHullOfConvex>) {
          return bound_coc(spec);
        } else if constexpr (std::is_same_v<T, NoshiroWarschawski>) {
          return bound_R(c.beta, spec, reading);
        } else {
          if (!spec.is_diagonal()) return BoundResult{};
          return bound_H(c.profile, spec.lambda(), spec.n());
        }
      },
      cls.variant());
}

double moment_bound(const ClassSpec& cls, const FunctionalSpec& spec) {
  const double sn = s_factor(cls, spec.n());
  const double sm = s_factor(cls, spec.m());
  const double st = s_factor(cls, spec.tail());
  return std::abs(spec.lambda() - 2.0 * st / (sn * sm)) * sn * sm + st;
}

double ma_reference(int n, int m) { return static_cast<double>(n - 1) * (m - 1); }

std::vector<PowerSeries> attainer_series(const ClassSpec& cls, const FunctionalSpec& spec,
                                         const BoundResult& bound) {
  std::vector<PowerSeries> out;
  if (!bound.applicable) return out;
  const std::size_t order = default_truncation(spec.n(), spec.m());
  const int n = spec.n();
  switch (bound.regime) {
    case Regime::HalfPlaneLine:
      out.push_back(half_plane_kernel(0.0, order));
      break;
    case Regime::HullJunction:
      out.push_back(half_plane_kernel(0.0, order));
      [[fallthrough]];
    case Regime::AlternatingFamily:
      out.push_back(series_from_measure(cls, alternating_extremal_measure(n), order));
      break;
    case Regime::SlitLogLine:
      out.push_back(slit_log_series(cls.beta(), order));
      break;
    case Regime::SlitLogJunction:
      out.push_back(slit_log_series(cls.beta(), order));
      [[fallthrough]];
    case Regime::SmallLambda:
      out.push_back(series_from_measure(cls, alternating_extremal_measure(n), order));
      break;
    case Regime::OddIndex:
    case Regime::MiddleIndex:
    case Regime::IndexTie: {
      const auto& profile = std::get<CoefficientClass>(cls.variant()).profile;
      if (bound.regime != Regime::MiddleIndex) out.push_back(h_extremal(profile, 2 * n - 1, 1.0, order));
      if (bound.regime != Regime::OddIndex) out.push_back(h_extremal(profile, n, 1.0, order));
      break;
    }
    case Regime::Open:
      break;
  }
  return out;
}

}  // namespace zalcman
