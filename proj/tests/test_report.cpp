#include <random>
#include <string>

#include "doctest.h"
#include "zalcman/report.hpp"

using namespace zalcman;

TEST_CASE("double formatting keeps 17 significant digits") {
  CHECK(format_double(2.0) == "2.0");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_double(1e-20) == "9.9999999999999995e-21");
}

TEST_CASE("canonical JSON round-trips byte for byte") {
  SearchConfig cfg;
  cfg.restarts = 3;
  cfg.seed = 5;
  const auto rep = brute_force_max(ClassSpec::noshiro_warschawski(0.2), FunctionalSpec(1.1, 2, 3), cfg);
  const auto text = canonical_dump(report_to_json(rep));
  CHECK(canonical_dump(nlohmann::json::parse(text)) == text);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> wide(-1e6, 1e6);
  for (int i = 0; i < 1000; ++i) {
    const nlohmann::json j = {{"b", wide(rng)}, {"a", {wide(rng), 1e-300 * wide(rng), 3}}, {"c", "x,y"}};
    const auto once = canonical_dump(j);
    CHECK(canonical_dump(nlohmann::json::parse(once)) == once);
    CHECK(nlohmann::json::parse(once).at("b").get<double>() == j.at("b").get<double>());
  }
}

TEST_CASE("rows carry the stable schema") {
  const auto rep = h_search(WeightProfile::hurwitz(), 1.0, 2);
  const auto row = report_to_json(rep);
  for (const auto& col : report_columns()) CHECK(row.contains(col));
  CHECK(row.at("class") == "H");
  CHECK(row.at("profile") == "hurwitz");

  const auto open = brute_force_max(ClassSpec::convex_hull(), FunctionalSpec(1.0, 2, 3), SearchConfig{});
  const auto open_row = report_to_json(open);
  CHECK(open_row.at("bound").is_null());
  CHECK(open_row.at("gap").is_null());
  CHECK_FALSE(open_row.at("applicable").get<bool>());
}

TEST_CASE("CSV and table rendering") {
  nlohmann::json rows = nlohmann::json::array();
  rows.push_back(report_to_json(h_search(WeightProfile::hurwitz(), 1.0, 2)));
  rows.push_back(report_to_json(h_search(WeightProfile::hurwitz(), 2.0, 3)));
  const auto csv = rows_to_csv(rows);
  CHECK(csv.rfind("class,profile,beta,lambda,n,m,bound,applicable", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const auto table = rows_to_table(rows);
  CHECK(table.find("hurwitz") != std::string::npos);
  CHECK(table.find("H:index-2n-1") != std::string::npos);
}
