#include "zalcman/extremal_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "zalcman/errors.hpp"

namespace zalcman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kCoarseKeep = 4;
constexpr std::size_t kLatticeMaxAtoms = 4;

// |lambda a_n a_m - a_t| for a_k = s(k) \sum w_j e^{i (k-1) theta_j}.
class MeasureObjective {
public:
  MeasureObjective(const ClassSpec& cls, const FunctionalSpec& spec)
      : lambda_(spec.lambda()),
        s_n_(s_factor(cls, spec.n())),
        s_m_(s_factor(cls, spec.m())),
        s_t_(s_factor(cls, spec.tail())),
        p_n_(spec.n() - 1),
        p_m_(spec.m() - 1),
        p_t_(spec.tail() - 1) {}

  [[nodiscard]] int power_n() const { return p_n_; }
  [[nodiscard]] int power_m() const { return p_m_; }
  [[nodiscard]] int power_t() const { return p_t_; }

  // Moment sums already formed: \sum w e^{i p theta} for the three powers.
  [[nodiscard]] double from_sums(Complex sn, Complex sm, Complex st) const {
    return std::abs(lambda_ * (s_n_ * sn) * (s_m_ * sm) - s_t_ * st);
  }

  [[nodiscard]] double operator()(std::span<const double> thetas, std::span<const double> weights) const {
    Complex sn{}, sm{}, st{};
    for (std::size_t j = 0; j < thetas.size(); ++j) {
      const double w = weights[j];
      if (w == 0.0) continue;
      sn += w * std::polar(1.0, p_n_ * thetas[j]);
      sm += w * std::polar(1.0, p_m_ * thetas[j]);
      st += w * std::polar(1.0, p_t_ * thetas[j]);
    }
    return from_sums(sn, sm, st);
  }

private:
  double lambda_;
  double s_n_, s_m_, s_t_;
  int p_n_, p_m_, p_t_;
};

struct Candidate {
  double value = -1.0;
  std::vector<double> thetas;
  std::vector<double> weights;
  double theta_step = 0.5;
  double weight_step = 0.1;
};

struct Refined {
  Candidate best;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Keeps the `cap` best candidates, ordered by value (ties keep insertion order).
class TopK {
public:
  explicit TopK(std::size_t cap) : cap_(cap) {}

  [[nodiscard]] bool admits(double value) const { return items_.size() < cap_ || value > items_.back().value; }

  void push(Candidate c) {
    auto pos = std::upper_bound(items_.begin(), items_.end(), c.value,
                                [](double v, const Candidate& x) { return v > x.value; });
    items_.insert(pos, std::move(c));
    if (items_.size() > cap_) items_.pop_back();
  }

  [[nodiscard]] std::vector<Candidate> take() && { return std::move(items_); }

private:
  std::size_t cap_;
  std::vector<Candidate> items_;
};

void normalize(std::vector<double>& w) {
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
}

// All compositions of `total` into `parts` nonnegative integers.
void compositions(std::size_t parts, std::size_t total, std::vector<std::size_t>& cur,
                  std::vector<std::vector<double>>& out) {
  if (cur.size() + 1 == parts) {
    cur.push_back(total);
    std::vector<double> w(parts);
    for (std::size_t i = 0; i < parts; ++i) w[i] = static_cast<double>(cur[i]);
    normalize(w);
    out.push_back(std::move(w));
    cur.pop_back();
    return;
  }
  for (std::size_t x = 0; x <= total; ++x) {
    cur.push_back(x);
    compositions(parts, total - x, cur, out);
    cur.pop_back();
  }
}

std::size_t subgrid_size(std::size_t grid, std::size_t free_atoms, std::size_t budget) {
  if (free_atoms == 0) return 1;
  std::size_t best = 1;
  for (std::size_t g = 1; g <= grid; ++g) {
    if (grid % g != 0) continue;
    double tuples = std::pow(static_cast<double>(g), static_cast<double>(free_atoms));
    if (tuples <= static_cast<double>(budget)) best = g;
  }
  return best;
}

struct CoarseResult {
  std::vector<Candidate> winners;
  std::size_t evaluations = 0;
};

CoarseResult coarse_stage(const MeasureObjective& f, std::size_t atoms, const SearchConfig& cfg) {
  const std::size_t free_atoms = atoms - 1;
  const std::size_t g = subgrid_size(cfg.angle_grid, free_atoms, cfg.coarse_budget);
  const double spacing = kTwoPi / static_cast<double>(g);

  struct Powers {
    Complex n, m, t;
  };
  std::vector<Powers> table(g);
  std::vector<double> angle(g);
  for (std::size_t j = 0; j < g; ++j) {
    angle[j] = spacing * static_cast<double>(j);
    table[j] = {std::polar(1.0, f.power_n() * angle[j]), std::polar(1.0, f.power_m() * angle[j]),
                std::polar(1.0, f.power_t() * angle[j])};
  }

  std::vector<std::vector<double>> lattice;
  const bool use_lattice = atoms <= kLatticeMaxAtoms;
  if (use_lattice) {
    std::vector<std::size_t> cur;
    compositions(atoms, cfg.weight_grid, cur, lattice);
  }

  TopK top(kCoarseKeep);
  CoarseResult out;
  std::vector<std::size_t> idx(atoms, 0);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::exponential_distribution<double> expo(1.0);
  std::vector<Powers> atom_pow(atoms);

  auto consider = [&](const std::vector<double>& w) {
    Complex sn{}, sm{}, st{};
    for (std::size_t a = 0; a < atoms; ++a) {
      sn += w[a] * atom_pow[a].n;
      sm += w[a] * atom_pow[a].m;
      st += w[a] * atom_pow[a].t;
    }
    const double v = f.from_sums(sn, sm, st);
    ++out.evaluations;
    if (top.admits(v)) {
      Candidate c{v, {}, w, spacing, use_lattice ? 1.0 / static_cast<double>(cfg.weight_grid) : 0.1};
      c.thetas.resize(atoms);
      for (std::size_t a = 0; a < atoms; ++a) c.thetas[a] = angle[idx[a]];
      top.push(std::move(c));
    }
  };

  if (use_lattice) {
    // Odometer over the K-1 free angle indices; atom 0 stays at angle 0.
    while (true) {
      for (std::size_t a = 0; a < atoms; ++a) atom_pow[a] = table[idx[a]];
      for (const auto& w : lattice) consider(w);
      std::size_t a = 1;
      while (a < atoms && ++idx[a] == g) idx[a++] = 0;
      if (a >= atoms) break;
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, g - 1);
    std::vector<double> w(atoms);
    for (std::size_t s = 0; s < cfg.coarse_budget; ++s) {
      for (std::size_t a = 1; a < atoms; ++a) idx[a] = pick(rng);
      for (std::size_t a = 0; a < atoms; ++a) atom_pow[a] = table[idx[a]];
      for (double& x : w) x = expo(rng);
      normalize(w);
      consider(w);
    }
  }
  out.winners = std::move(top).take();
  return out;
}

Candidate random_start(std::size_t atoms, std::uint64_t seed, std::size_t restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::exponential_distribution<double> expo(1.0);
  Candidate c;
  c.thetas.resize(atoms);
  c.weights.resize(atoms);
  for (std::size_t a = 0; a < atoms; ++a) {
    c.thetas[a] = angle(rng);
    c.weights[a] = expo(rng);
  }
  normalize(c.weights);
  c.theta_step = 0.5;
  c.weight_step = 0.1;
  return c;
}

// Coordinate pattern search: try +/- step on each angle and each weight
// (weights renormalized after the move), halve both steps after a sweep
// without improvement, stop once both fall below the tolerance.
Refined refine(const MeasureObjective& f, Candidate start, const SearchConfig& cfg) {
  Refined r;
  Candidate& c = start;
  c.value = f(c.thetas, c.weights);
  ++r.evaluations;
  const std::size_t atoms = c.thetas.size();
  std::vector<double> trial_w(atoms);

  for (std::size_t iter = 0; iter < cfg.refine_iters; ++iter) {
    bool improved = false;
    for (std::size_t a = 0; a < atoms; ++a) {
      for (double dir : {1.0, -1.0}) {
        const double old = c.thetas[a];
        c.thetas[a] = old + dir * c.theta_step;
        const double v = f(c.thetas, c.weights);
        ++r.evaluations;
        if (v > c.value) {
          c.value = v;
          improved = true;
        } else {
          c.thetas[a] = old;
        }
      }
    }
    if (atoms > 1) {
      for (std::size_t a = 0; a < atoms; ++a) {
        for (double dir : {1.0, -1.0}) {
          trial_w = c.weights;
          trial_w[a] = std::max(0.0, trial_w[a] + dir * c.weight_step);
          double total = 0.0;
          for (double x : trial_w) total += x;
          if (!(total > 0.0)) continue;
          for (double& x : trial_w) x /= total;
          const double v = f(c.thetas, trial_w);
          ++r.evaluations;
          if (v > c.value) {
            c.value = v;
            c.weights = trial_w;
            improved = true;
          }
        }
      }
    }
    if (!improved) {
      c.theta_step *= 0.5;
      c.weight_step *= 0.5;
      if (c.theta_step < cfg.tolerance && c.weight_step < cfg.tolerance) {
        r.converged = true;
        break;
      }
    }
  }
  r.best = std::move(c);
  return r;
}

template <typename Fn>
void run_indexed(std::size_t count, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
}

std::vector<std::pair<std::string, double>> probe_references(const ClassSpec& cls, const FunctionalSpec& spec) {
  std::vector<std::pair<std::string, double>> refs;
  const double lambda = spec.lambda();
  if (std::holds_alternative<ConvexHullOfConvex>(cls.variant())) {
    refs.emplace_back("diagonal_bound", 1.0);
    refs.emplace_back("lambda_minus_one", lambda - 1.0);
  } else {
    const double b = cls.beta();
    const double om = 1.0 - b;
    const int n = spec.n(), m = spec.m();
    refs.emplace_back("diagonal_bound", 2.0 * om / (n + m - 1));
    refs.emplace_back("slit_log_line", 4.0 * lambda * om * om / (static_cast<double>(n) * m) - 2.0 * om / (n + m - 1));
    refs.emplace_back("threshold", nw_threshold(b, n, m));
  }
  refs.emplace_back("moment_bound", moment_bound(cls, spec));
  refs.emplace_back("ma_reference", ma_reference(spec.n(), spec.m()));
  return refs;
}

}  // namespace

void SearchConfig::validate() const {
  if (angle_grid == 0 || weight_grid == 0 || restarts == 0 || refine_iters == 0 || coarse_budget == 0 || threads == 0)
    throw ValidationError("search config: counts must be positive");
  if (!(tolerance > 0.0)) throw ValidationError("search config: tolerance must be positive");
}

std::size_t SearchConfig::atoms_for(const FunctionalSpec& spec) const {
  if (atom_count > 0) return atom_count;
  return static_cast<std::size_t>(2 * std::max(spec.n(), spec.m()) - 2);
}

SearchReport brute_force_max(const ClassSpec& cls, const FunctionalSpec& spec, const SearchConfig& cfg,
                             SmallLambdaRange reading) {
  cfg.validate();
  if (!cls.has_measure_representation())
    throw UnsupportedClassError("brute_force_max: class has no measure representation");
  const MeasureObjective f(cls, spec);
  const std::size_t atoms = cfg.atoms_for(spec);

  auto coarse = coarse_stage(f, atoms, cfg);
  std::vector<Candidate> starts = std::move(coarse.winners);
  for (std::size_t r = 0; r < cfg.restarts; ++r) starts.push_back(random_start(atoms, cfg.seed, r));

  std::vector<Refined> results(starts.size());
  run_indexed(starts.size(), cfg.threads, [&](std::size_t i) { results[i] = refine(f, starts[i], cfg); });

  std::size_t evaluations = coarse.evaluations;
  bool converged = true;
  std::size_t winner = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    evaluations += results[i].evaluations;
    converged = converged && results[i].converged;
    if (results[i].best.value > results[winner].best.value) winner = i;
  }

  // Re-evaluate the winner through the public representation path.
  const auto& best = results[winner].best;
  AtomicMeasure mu = AtomicMeasure::normalized(best.thetas, best.weights);
  const auto series = series_from_measure(cls, mu, default_truncation(spec.n(), spec.m()));
  const double value = std::abs(zalcman(series, spec));

  BoundResult bound = class_bound(cls, spec, reading);
  std::optional<double> gap;
  if (bound.applicable) gap = bound.value - value;
  return SearchReport{cls.label(), cls.profile_label(), cls.beta(), spec, value, std::move(mu), std::move(bound),
                      gap, evaluations, cfg.seed, converged, std::nullopt, {}, {}};
}

double triangle_grid_max(double lambda, double q_n, double q_2n1, std::size_t steps) {
  if (steps == 0) throw ValidationError("triangle_grid_max: steps must be positive");
  const double g = static_cast<double>(steps);
  double best = 0.0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double u = (static_cast<double>(i) / g) / q_n;
    const double head = lambda * u * u;
    // The objective grows with v, but scan the whole column to stay a plain grid oracle.
    for (std::size_t j = 0; i + j <= steps; ++j) {
      const double v = (static_cast<double>(j) / g) / q_2n1;
      best = std::max(best, head + v);
    }
  }
  return best;
}

SearchReport h_search(const WeightProfile& profile, double lambda, int n, std::size_t grid_steps) {
  const FunctionalSpec spec = FunctionalSpec::diagonal(lambda, n);
  const double q_n = profile.r(n);
  const double q_odd = profile.r(2 * n - 1);
  const auto vertex = polytope_max(lambda, q_n, q_odd);
  const double grid = triangle_grid_max(lambda, q_n, q_odd, grid_steps);
  const std::size_t grid_points = (grid_steps + 1) * (grid_steps + 2) / 2;

  SparseCoefficients attainer;
  const auto [u, v] = vertex.vertices.front();
  if (u > 0.0) attainer.terms.emplace_back(n, Complex(1.0 / q_n));
  else attainer.terms.emplace_back(2 * n - 1, Complex(1.0 / q_odd));

  BoundResult bound = bound_H(profile, lambda, n);
  const double gap = bound.value - vertex.value;
  return SearchReport{"H", profile.name(), profile.beta(), spec, vertex.value, std::move(attainer), std::move(bound),
                      gap, grid_points + 2, 0, true, grid, {}, {}};
}

std::vector<SearchReport> probe_open_range(const ClassSpec& cls, std::span<const double> lambdas, int n, int m,
                                           const SearchConfig& cfg) {
  if (lambdas.empty()) throw ValidationError("probe_open_range: empty lambda grid");
  std::vector<SearchReport> out;
  out.reserve(lambdas.size());
  for (double lambda : lambdas) {
    const FunctionalSpec spec(lambda, n, m);
    SearchReport rep = brute_force_max(cls, spec, cfg);
    rep.references = probe_references(cls, spec);
    rep.annotation = rep.bound.applicable ? "theorem range" : "open range";
    out.push_back(std::move(rep));
  }
  return out;
}

bool is_monotone_nondecreasing(std::span<const SearchReport> reports, double slack) {
  for (std::size_t i = 1; i < reports.size(); ++i)
    if (reports[i].best_value < reports[i - 1].best_value - slack) return false;
  return true;
}

}  // namespace zalcman
