#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "zalcman/function_classes.hpp"
#include "zalcman/functionals.hpp"
#include "zalcman/measures.hpp"

namespace zalcman {

struct SearchConfig {
  std::size_t atom_count = 0;       ///< 0 selects 2 max(n, m) - 2
  std::size_t angle_grid = 720;     ///< grid points on [0, 2pi)
  std::size_t weight_grid = 8;      ///< simplex lattice denominator, used for K <= 4
  std::size_t restarts = 20;        ///< random starts refined in addition to the coarse winners
  std::size_t refine_iters = 4000;  ///< sweep cap per local refinement
  std::uint64_t seed = 0;
  double tolerance = 1e-10;         ///< step size at which refinement stops
  std::size_t coarse_budget = 20000;  ///< max angle tuples enumerated by the coarse stage
  std::size_t threads = 1;

  /// Throws ValidationError if any count is zero (other than atom_count) or
  /// tolerance is not positive.
  void validate() const;
  [[nodiscard]] std::size_t atoms_for(const FunctionalSpec& spec) const;
};

/// Nonzero coefficients of a polynomial member, as (index, value) pairs.
struct SparseCoefficients {
  std::vector<std::pair<int, Complex>> terms;
};

struct SearchReport {
  std::string class_label;
  std::string profile_label;
  double beta = 0.0;
  FunctionalSpec spec;
  double best_value = 0.0;
  std::variant<AtomicMeasure, SparseCoefficients> best_config;
  BoundResult bound;
  std::optional<double> gap;  ///< bound - best_value when the bound applies
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  bool converged = true;
  std::optional<double> grid_value;  ///< dense-grid cross-check (coefficient classes)
  std::vector<std::pair<std::string, double>> references;  ///< probe comparison values
  std::string annotation;
};

/// Maximizes |lambda a_n a_m - a_{n+m-1}| over measures with at most K atoms.
///
/// Coarse stage: the first atom is pinned at angle 0 (rotations leave the
/// modulus unchanged), the others run over a divisor-aligned subgrid of the
/// angle grid, and weights over the simplex lattice with denominator
/// `weight_grid` (K <= 4) or random simplex draws (K > 4). The best few coarse
/// points and `restarts` seeded random starts are then refined by a
/// coordinate pattern search on angles and weights. Same config, same report.
[[nodiscard]] SearchReport brute_force_max(const ClassSpec& cls, const FunctionalSpec& spec, const SearchConfig& cfg,
                                           SmallLambdaRange reading = SmallLambdaRange::OverOneMinusBeta);

/// Maximizes lambda |a_n|^2 + |a_{2n-1}| over the constraint triangle by
/// vertex evaluation and cross-checks with a dense grid of `grid_steps`
/// subdivisions per side.
[[nodiscard]] SearchReport h_search(const WeightProfile& profile, double lambda, int n,
                                    std::size_t grid_steps = 1000);

/// Dense-grid maximum of lambda u^2 + v over the triangle with vertices
/// (0,0), (1/q_n, 0), (0, 1/q_2n1); `steps` subdivisions per side.
[[nodiscard]] double triangle_grid_max(double lambda, double q_n, double q_2n1, std::size_t steps);

/// One brute-force report per lambda, annotated "open range" or
/// "theorem range" and carrying comparison values (the diagonal bound, the
/// large-lambda line, the moment bound, (n-1)(m-1)).
[[nodiscard]] std::vector<SearchReport> probe_open_range(const ClassSpec& cls, std::span<const double> lambdas,
                                                         int n, int m, const SearchConfig& cfg);

/// Whether best_value never decreases along the list (probes sorted by lambda).
[[nodiscard]] bool is_monotone_nondecreasing(std::span<const SearchReport> reports, double slack = 1e-9);

}  // namespace zalcman
