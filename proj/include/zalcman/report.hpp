#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "zalcman/extremal_search.hpp"

namespace zalcman {

/// Columns every report row carries, in CSV order.
inline const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {"class",      "profile", "beta",       "lambda",      "n",
                                                "m",          "bound",   "applicable", "regime",      "best_value",
                                                "gap",        "seed",    "evaluations", "converged", "status",
                                                "annotation"};
  return cols;
}

/// One row: the stable columns plus best_config, references and grid_value
/// when present. `status` is left for the caller to fill in.
[[nodiscard]] nlohmann::json report_to_json(const SearchReport& rep);

/// Sorted keys, no whitespace, floats with 17 significant digits (always with
/// a decimal point or exponent), non-finite floats as null. Parsing the output
/// and dumping again reproduces it byte for byte.
[[nodiscard]] std::string canonical_dump(const nlohmann::json& j);

/// Header plus one line per row, using report_columns().
[[nodiscard]] std::string rows_to_csv(const nlohmann::json& rows);

/// Fixed-width human-readable table of the main columns.
[[nodiscard]] std::string rows_to_table(const nlohmann::json& rows);

/// %.17g with a trailing ".0" when needed to mark the value as floating.
[[nodiscard]] std::string format_double(double x);

}  // namespace zalcman
