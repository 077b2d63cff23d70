#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "zalcman/extremal_search.hpp"
#include "zalcman/functionals.hpp"

namespace zalcman::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for anything that should end the run with exit code 2.
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Everything a run needs. Filled from defaults, then a JSON config file,
/// then command-line flags, later sources overriding earlier ones.
struct RunManifest {
  std::string command;
  std::string class_name;             ///< "coc", "R" or "H"
  std::string profile;                ///< profile name for H, or a JSON array of r(2), r(3), ...
  double beta = 0.0;
  double nu = 0.0;
  std::vector<std::string> lambdas;   ///< numbers, or "threshold" / "tie" optionally scaled as "2*tie"
  std::vector<std::pair<int, int>> pairs;
  SearchConfig search;
  std::size_t samples = 1000;         ///< soundness samples per verify cell
  SmallLambdaRange small_lambda_range = SmallLambdaRange::OverOneMinusBeta;
  std::string format = "json";
  std::string out;
};

/// Reads the JSON config file layout (keys mirror the flag names, plus
/// "pairs": [[n, m], ...], "samples" and "small_lambda_range").
void apply_config(RunManifest& manifest, const nlohmann::json& config);

/// Checks class, profile and grid parameters; throws UsageError.
void validate(const RunManifest& manifest);

/// Resolves one lambda token for a cell.
[[nodiscard]] double resolve_lambda(const std::string& token, const RunManifest& manifest, int n, int m);

struct RunResult {
  int exit_code = kExitOk;
  nlohmann::json document;  ///< {"command", "rows", "summary"}
};

[[nodiscard]] RunResult cmd_verify(const RunManifest& manifest);
[[nodiscard]] RunResult cmd_search(const RunManifest& manifest);
[[nodiscard]] RunResult cmd_probe(const RunManifest& manifest);
[[nodiscard]] RunResult cmd_table(const RunManifest& manifest);

/// Renders a document in the manifest's format.
[[nodiscard]] std::string render(const nlohmann::json& document, const std::string& format);

/// Full entry point: parses argv, dispatches, writes the report to --out or
/// `out`, diagnostics to `err`. Returns 0, 1 or 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zalcman::cli
