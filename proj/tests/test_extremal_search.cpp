#include <cmath>
#include <vector>

#include "doctest.h"
#include "zalcman/errors.hpp"
#include "zalcman/extremal_search.hpp"
#include "zalcman/report.hpp"

using namespace zalcman;

namespace {

SearchConfig quick(std::size_t atoms = 0, std::uint64_t seed = 1) {
  SearchConfig cfg;
  cfg.atom_count = atoms;
  cfg.restarts = 6;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("config validation") {
  SearchConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.restarts = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK(SearchConfig{}.atoms_for(FunctionalSpec(1.0, 3, 4)) == 6);
}

TEST_CASE("rediscovers the known extremal values") {
  SUBCASE("convex hull above lambda = 2") {
    const auto rep = brute_force_max(ClassSpec::convex_hull(), FunctionalSpec(3.0, 2, 2), quick(2));
    CHECK(std::abs(rep.best_value - 2.0) <= 1e-3);
    CHECK(*rep.gap >= -1e-9);
  }
  SUBCASE("convex hull below lambda = 2 on the diagonal") {
    const auto rep = brute_force_max(ClassSpec::convex_hull(), FunctionalSpec(1.0, 2, 2), quick(2));
    CHECK(std::abs(rep.best_value - 1.0) <= 1e-3);
    CHECK(*rep.gap >= -1e-9);
  }
  SUBCASE("R(0) below the threshold") {
    const auto rep = brute_force_max(ClassSpec::noshiro_warschawski(0.0), FunctionalSpec(1.0, 2, 2), quick(2));
    CHECK(std::abs(rep.best_value - 2.0 / 3.0) <= 1e-3);
    CHECK(rep.bound.regime == Regime::SmallLambda);
  }
  SUBCASE("R(0.25) above the threshold, off the diagonal") {
    const auto rep = brute_force_max(ClassSpec::noshiro_warschawski(0.25), FunctionalSpec(3.0, 2, 3), quick());
    CHECK(rep.bound.value == doctest::Approx(0.75));
    CHECK(std::abs(rep.best_value - 0.75) <= 1e-3);
  }
  SUBCASE("the reported configuration attains the reported value") {
    const auto cls = ClassSpec::convex_hull();
    const FunctionalSpec spec(1.5, 3, 3);
    const auto rep = brute_force_max(cls, spec, quick());
    const auto& mu = std::get<AtomicMeasure>(rep.best_config);
    CHECK(std::abs(zalcman::zalcman(series_from_measure(cls, mu, 6), spec)) == doctest::Approx(rep.best_value).epsilon(1e-14));
  }
  CHECK_THROWS_AS((void)brute_force_max(ClassSpec::coefficient(WeightProfile::hurwitz()), FunctionalSpec(1.0, 2, 2),
                                        quick()),
                  UnsupportedClassError);
}

TEST_CASE("determinism, threading and nesting") {
  const auto cls = ClassSpec::convex_hull();
  const FunctionalSpec spec(2.5, 2, 2);
  const auto a = canonical_dump(report_to_json(brute_force_max(cls, spec, quick(3, 7))));
  const auto b = canonical_dump(report_to_json(brute_force_max(cls, spec, quick(3, 7))));
  CHECK(a == b);

  auto threaded = quick(3, 7);
  threaded.threads = 4;
  CHECK(canonical_dump(report_to_json(brute_force_max(cls, spec, threaded))) == a);

  for (double lambda : {0.5, 1.2, 2.5})
    for (auto [n, m] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
      const FunctionalSpec s(lambda, n, m);
      double previous = 0.0;
      for (std::size_t k = 1; k <= 4; ++k) {
        const double v = brute_force_max(cls, s, quick(k)).best_value;
        CHECK(v >= previous - 1e-9);
        previous = std::max(previous, v);
      }
    }
}

TEST_CASE("refinement budget exhaustion is reported") {
  auto cfg = quick(3);
  cfg.refine_iters = 1;
  const auto rep = brute_force_max(ClassSpec::convex_hull(), FunctionalSpec(1.0, 2, 3), cfg);
  CHECK_FALSE(rep.converged);
  CHECK(quick(3).refine_iters > 1);
  CHECK(brute_force_max(ClassSpec::convex_hull(), FunctionalSpec(3.0, 2, 2), quick(2)).converged);
}

TEST_CASE("coefficient-class search") {
  const auto h = WeightProfile::hurwitz();
  const auto a = h_search(h, 1.0, 2);
  CHECK(a.best_value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const auto& terms = std::get<SparseCoefficients>(a.best_config).terms;
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].first == 3);

  const auto b = h_search(h, 2.0, 2);
  CHECK(b.best_value == doctest::Approx(0.5));
  CHECK(std::get<SparseCoefficients>(b.best_config).terms[0].first == 2);

  const auto c = h_search(WeightProfile::uniformly_starlike(), 1.0, 2);
  CHECK(c.best_value == doctest::Approx(1.0 / 7.0));
  for (const auto& rep : {a, b, c}) CHECK(std::abs(*rep.grid_value - rep.best_value) <= 1e-6);
}

TEST_CASE("probe of the open range") {
  const auto cls = ClassSpec::convex_hull();
  const std::vector<double> lambdas = {0.02, 1.0, 2.0};
  const auto reports = probe_open_range(cls, lambdas, 2, 3, quick());
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].annotation == "open range");
  CHECK(reports[2].annotation == "theorem range");
  CHECK(std::abs(reports[2].best_value - 1.0) <= 1e-3);
  // As lambda -> 0 the functional tends to |a_4| <= 1.
  CHECK(std::abs(reports[0].best_value - 1.0) <= 1e-3);
  CHECK(is_monotone_nondecreasing(reports));
  bool has_ma = false;
  for (const auto& [name, value] : reports[1].references)
    if (name == "ma_reference") has_ma = value == 2.0;
  CHECK(has_ma);
  CHECK_THROWS_AS((void)probe_open_range(cls, std::vector<double>{}, 2, 3, quick()), ValidationError);
}
