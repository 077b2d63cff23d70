#include "zalcman/function_classes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "zalcman/errors.hpp"

namespace zalcman {

namespace {

void check_beta(double beta, const char* who) {
  if (!(beta >= 0.0 && beta < 1.0)) throw ValidationError(std::string(who) + ": beta must lie in [0, 1)");
}

}  // namespace

WeightProfile::WeightProfile(Kind kind, std::string name, double beta, double nu, std::vector<double> table)
    : kind_(kind), name_(std::move(name)), beta_(beta), nu_(nu), table_(std::move(table)) {}

WeightProfile WeightProfile::starlike(double beta) {
  check_beta(beta, "starlike profile");
  return {Kind::Starlike, "starlike", beta, 0.0};
}

WeightProfile WeightProfile::convex(double beta) {
  check_beta(beta, "convex profile");
  return {Kind::Convex, "convex", beta, 0.0};
}

WeightProfile WeightProfile::uniformly_starlike() { return {Kind::UniformlyStarlike, "ust", 0.0, 0.0}; }
WeightProfile WeightProfile::uniformly_convex() { return {Kind::UniformlyConvex, "ucv", 0.0, 0.0}; }

WeightProfile WeightProfile::noshiro_warschawski(double beta) {
  check_beta(beta, "nw profile");
  return {Kind::NoshiroWarschawski, "nw", beta, 0.0};
}

WeightProfile WeightProfile::spiral(double beta, double nu) {
  check_beta(beta, "spiral profile");
  if (!(std::abs(nu) < std::numbers::pi / 2))
    throw ValidationError("spiral profile: nu must lie in (-pi/2, pi/2)");
  return {Kind::Spiral, "spiral", beta, nu};
}

WeightProfile WeightProfile::hurwitz() { return {Kind::Hurwitz, "hurwitz", 0.0, 0.0}; }

WeightProfile WeightProfile::tabulated(std::vector<double> values) {
  if (values.empty()) throw ValidationError("tabulated profile: needs at least r(2)");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError("tabulated profile: r(k) must be positive");
  return {Kind::Tabulated, "custom", 0.0, 0.0, std::move(values)};
}

WeightProfile WeightProfile::by_name(const std::string& name, double beta, double nu) {
  if (name == "starlike") return starlike(beta);
  if (name == "convex") return convex(beta);
  if (name == "ust") return uniformly_starlike();
  if (name == "ucv") return uniformly_convex();
  if (name == "nw") return noshiro_warschawski(beta);
  if (name == "spiral") return spiral(beta, nu);
  if (name == "hurwitz") return hurwitz();
  throw ValidationError("unknown profile name '" + name + "'");
}

double WeightProfile::r(int k) const {
  if (k < 2) throw std::out_of_range("weight profile: r(k) is defined for k >= 2");
  const double x = k;
  switch (kind_) {
    case Kind::Starlike: return (x - beta_) / (1.0 - beta_);
    case Kind::Convex: return x * (x - beta_) / (1.0 - beta_);
    case Kind::UniformlyStarlike: return 3.0 * x - 2.0;
    case Kind::UniformlyConvex: return x * (2.0 * x - 1.0);
    case Kind::NoshiroWarschawski: return x / (1.0 - beta_);
    case Kind::Spiral: return 1.0 + (x - 1.0) / (1.0 - beta_) / std::cos(nu_);
    case Kind::Hurwitz: return x;
    case Kind::Tabulated: {
      const auto idx = static_cast<std::size_t>(k - 2);
      if (idx >= table_.size())
        throw std::out_of_range("tabulated profile has no entry for r(" + std::to_string(k) + ")");
      return table_[idx];
    }
  }
  throw std::logic_error("unreachable profile kind");
}

ClassSpec ClassSpec::noshiro_warschawski(double beta) {
  check_beta(beta, "R(beta)");
  return ClassSpec(NoshiroWarschawski{beta});
}

bool ClassSpec::has_measure_representation() const noexcept {
  return !std::holds_alternative<CoefficientClass>(v_);
}

std::string ClassSpec::label() const {
  if (std::holds_alternative<ConvexHullOfConvex>(v_)) return "coc";
  if (std::holds_alternative<NoshiroWarschawski>(v_)) return "R";
  return "H";
}

std::string ClassSpec::profile_label() const {
  if (const auto* h = std::get_if<CoefficientClass>(&v_)) return h->profile.name();
  return {};
}

double ClassSpec::beta() const noexcept {
  if (const auto* r = std::get_if<NoshiroWarschawski>(&v_)) return r->beta;
  return 0.0;
}

double s_factor(const ClassSpec& cls, int k) {
  if (k < 2) throw std::out_of_range("s_factor: index must be at least 2");
  if (std::holds_alternative<ConvexHullOfConvex>(cls.variant())) return 1.0;
  if (const auto* r = std::get_if<NoshiroWarschawski>(&cls.variant())) return 2.0 * (1.0 - r->beta) / k;
  throw UnsupportedClassError("coefficient-constrained classes have no measure representation");
}

PowerSeries series_from_measure(const ClassSpec& cls, const AtomicMeasure& mu, std::size_t order) {
  if (!cls.has_measure_representation())
    throw UnsupportedClassError("series_from_measure: class has no measure representation");
  if (order < 2) throw ValidationError("series_from_measure: order must be at least 2");
  std::vector<Complex> c(order);
  c[0] = 1.0;
  for (std::size_t k = 2; k <= order; ++k) {
    const int ki = static_cast<int>(k);
    c[k - 1] = s_factor(cls, ki) * moment(mu, ki - 1) / 2.0;
  }
  return PowerSeries(std::move(c));
}

MembershipResult h_membership(const PowerSeries& s, const WeightProfile& profile) {
  double used = 0.0;
  for (std::size_t k = 2; k <= s.order(); ++k) {
    const double mag = std::abs(s.coeff(k));
    if (mag != 0.0) used += profile.r(static_cast<int>(k)) * mag;
  }
  return {used <= 1.0 + 1e-12, used};
}

PowerSeries h_extremal(const WeightProfile& profile, int k, Complex alpha, std::size_t order) {
  if (!(std::abs(std::abs(alpha) - 1.0) <= 1e-12)) throw ValidationError("h_extremal: |alpha| must be 1");
  if (k < 2 || static_cast<std::size_t>(k) > order) throw std::out_of_range("h_extremal: index outside [2, order]");
  std::vector<Complex> c(order, Complex{});
  c[0] = 1.0;
  c[static_cast<std::size_t>(k) - 1] = alpha / profile.r(k);
  return PowerSeries(std::move(c));
}

PowerSeries random_sparse_member(const WeightProfile& profile, std::size_t order, std::span<const int> focus,
                                 std::mt19937_64& rng) {
  if (order < 2) throw ValidationError("random_sparse_member: order must be at least 2");
  std::vector<int> support;
  for (int k : focus)
    if (k >= 2 && static_cast<std::size_t>(k) <= order) support.push_back(k);
  std::uniform_int_distribution<int> index(2, static_cast<int>(order));
  std::uniform_int_distribution<int> extra(0, 2);
  for (int i = extra(rng); i > 0; --i) support.push_back(index(rng));
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  std::vector<Complex> c(order, Complex{});
  c[0] = 1.0;
  if (support.empty()) return PowerSeries(std::move(c));

  // Split a budget in [0, 1] across the support; index k then gets modulus share/r(k).
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> shares(support.size());
  double total = 0.0;
  for (double& x : shares) total += (x = expo(rng));
  // A quarter of the draws sit exactly on the boundary sum r(k)|a_k| = 1.
  const double budget = unit(rng) < 0.25 ? 1.0 : unit(rng);
  for (std::size_t i = 0; i < support.size(); ++i) {
    const int k = support[i];
    c[static_cast<std::size_t>(k) - 1] = std::polar(budget * shares[i] / total / profile.r(k), phase(rng));
  }
  return PowerSeries(std::move(c));
}

}  // namespace zalcman
