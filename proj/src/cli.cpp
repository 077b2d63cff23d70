#include "zalcman/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "zalcman/errors.hpp"
#include "zalcman/function_classes.hpp"
#include "zalcman/report.hpp"

namespace zalcman::cli {

namespace {

constexpr double kSharpTol = 1e-12;
constexpr double kSoundSlack = 1e-9;
constexpr double kSearchGapTol = 1e-3;
constexpr double kGridTol = 1e-6;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  }
  if (used != text.size()) throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
  return x;
}

SmallLambdaRange parse_range(const std::string& name) {
  for (auto r : {SmallLambdaRange::OverOneMinusBeta, SmallLambdaRange::TimesOneMinusBeta,
                 SmallLambdaRange::UpToThreshold})
    if (to_string(r) == name) return r;
  throw UsageError("unknown small-lambda range reading '" + name + "'");
}

std::string normalized_class(const RunManifest& m) {
  const std::string c = lower(m.class_name);
  if (c.empty()) return m.profile.empty() ? "coc" : "H";
  if (c == "coc") return "coc";
  if (c == "r") return "R";
  if (c == "h") return "H";
  throw UsageError("unknown class '" + m.class_name + "' (expected coc, R or H)");
}

WeightProfile build_profile(const RunManifest& m) {
  if (m.profile.empty()) throw UsageError("class H needs --profile");
  try {
    if (trim(m.profile).front() == '[') {
      const auto arr = nlohmann::json::parse(m.profile);
      if (!arr.is_array()) throw UsageError("custom profile must be a JSON array");
      std::vector<double> values;
      for (const auto& v : arr) {
        if (!v.is_number()) throw UsageError("custom profile entries must be numbers");
        values.push_back(v.get<double>());
      }
      return WeightProfile::tabulated(std::move(values));
    }
    return WeightProfile::by_name(lower(m.profile), m.beta, m.nu);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad custom profile: ") + e.what());
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

ClassSpec build_class(const RunManifest& m) {
  const std::string c = normalized_class(m);
  try {
    if (c == "coc") return ClassSpec::convex_hull();
    if (c == "R") return ClassSpec::noshiro_warschawski(m.beta);
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
  return ClassSpec::coefficient(build_profile(m));
}

struct Cell {
  FunctionalSpec spec;
};

std::vector<Cell> cells_for(const RunManifest& m) {
  std::vector<Cell> cells;
  for (const auto& [n, mm] : m.pairs)
    for (const auto& token : m.lambdas) cells.push_back({FunctionalSpec(resolve_lambda(token, m, n, mm), n, mm)});
  return cells;
}

nlohmann::json document(const std::string& command, nlohmann::json rows, nlohmann::json summary) {
  return nlohmann::json{{"command", command}, {"rows", std::move(rows)}, {"summary", std::move(summary)}};
}

bool close_to(double a, double b) { return std::abs(a - b) <= kSharpTol * std::max(1.0, std::abs(b)); }

// Sharpness of the named extremal series and the largest |functional| seen on them.
std::pair<bool, nlohmann::json> extremal_check(const ClassSpec& cls, const FunctionalSpec& spec,
                                                const BoundResult& bound) {
  auto values = nlohmann::json::array();
  bool ok = true;
  for (const auto& s : attainer_series(cls, spec, bound)) {
    const double v = std::abs(zalcman(s, spec));
    values.push_back(v);
    ok = ok && close_to(v, bound.value);
  }
  return {ok && !values.empty(), values};
}

double sample_max_measures(const ClassSpec& cls, const FunctionalSpec& spec, std::size_t samples,
                           std::uint64_t seed) {
  std::mt19937_64 seeds(seed);
  const std::size_t order = default_truncation(spec.n(), spec.m());
  const std::size_t max_atoms = 2 * static_cast<std::size_t>(std::max(spec.n(), spec.m()));
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto mu = random_measure(1 + i % max_atoms, seeds());
    best = std::max(best, std::abs(zalcman(series_from_measure(cls, mu, order), spec)));
  }
  return best;
}

double sample_max_sparse(const WeightProfile& profile, const FunctionalSpec& spec, std::size_t samples,
                         std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t order = default_truncation(spec.n(), spec.m());
  const int focus[] = {spec.n(), 2 * spec.n() - 1};
  double best = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto s = random_sparse_member(profile, order, focus, rng);
    best = std::max(best, std::abs(zalcman(s, spec)));
  }
  return best;
}

// Regime the theorem's case split predicts for lambda against the tie point.
bool branch_matches(const WeightProfile& profile, const FunctionalSpec& spec, Regime got) {
  const double tie = h_tie_lambda(profile, spec.n());
  const double lambda = spec.lambda();
  if (std::abs(lambda - tie) <= 1e-12 * tie) return got == Regime::IndexTie;
  return got == (lambda < tie ? Regime::OddIndex : Regime::MiddleIndex);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path + "'");
  return f;
}

}  // namespace

void apply_config(RunManifest& m, const nlohmann::json& c) {
  if (!c.is_object()) throw UsageError("config file must hold a JSON object");
  try {
    auto ints = [](const nlohmann::json& v) {
      std::vector<int> out;
      if (v.is_array())
        for (const auto& x : v) out.push_back(x.get<int>());
      else
        out.push_back(v.get<int>());
      return out;
    };
    if (c.contains("class")) m.class_name = c.at("class").get<std::string>();
    if (c.contains("profile")) {
      const auto& p = c.at("profile");
      m.profile = p.is_string() ? p.get<std::string>() : p.dump();
    }
    if (c.contains("beta")) m.beta = c.at("beta").get<double>();
    if (c.contains("nu")) m.nu = c.at("nu").get<double>();
    if (c.contains("lambda")) {
      m.lambdas.clear();
      const auto& l = c.at("lambda");
      for (const auto& v : l.is_array() ? l : nlohmann::json::array({l}))
        m.lambdas.push_back(v.is_string() ? v.get<std::string>() : format_double(v.get<double>()));
    }
    if (c.contains("pairs")) {
      m.pairs.clear();
      for (const auto& p : c.at("pairs")) m.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    } else if (c.contains("n")) {
      m.pairs.clear();
      const auto ns = ints(c.at("n"));
      const auto ms = c.contains("m") ? ints(c.at("m")) : std::vector<int>{};
      for (int n : ns) {
        if (ms.empty()) m.pairs.emplace_back(n, n);
        for (int mm : ms) m.pairs.emplace_back(n, mm);
      }
    }
    if (c.contains("atoms")) m.search.atom_count = c.at("atoms").get<std::size_t>();
    if (c.contains("grid")) m.search.angle_grid = c.at("grid").get<std::size_t>();
    if (c.contains("weight_grid")) m.search.weight_grid = c.at("weight_grid").get<std::size_t>();
    if (c.contains("restarts")) m.search.restarts = c.at("restarts").get<std::size_t>();
    if (c.contains("refine_iters")) m.search.refine_iters = c.at("refine_iters").get<std::size_t>();
    if (c.contains("coarse_budget")) m.search.coarse_budget = c.at("coarse_budget").get<std::size_t>();
    if (c.contains("threads")) m.search.threads = c.at("threads").get<std::size_t>();
    if (c.contains("seed")) m.search.seed = c.at("seed").get<std::uint64_t>();
    if (c.contains("tol")) m.search.tolerance = c.at("tol").get<double>();
    if (c.contains("samples")) m.samples = c.at("samples").get<std::size_t>();
    if (c.contains("small_lambda_range")) m.small_lambda_range = parse_range(c.at("small_lambda_range").get<std::string>());
    if (c.contains("format")) m.format = c.at("format").get<std::string>();
    if (c.contains("out")) m.out = c.at("out").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad config file: ") + e.what());
  }
}

void validate(const RunManifest& m) {
  const auto cls = build_class(m);
  if (m.pairs.empty()) throw UsageError("no (n, m) grid given (use --n/--m or \"pairs\")");
  if (m.lambdas.empty()) throw UsageError("empty lambda grid");
  for (const auto& [n, mm] : m.pairs) {
    if (n < 2 || mm < 2) throw UsageError("n and m must be at least 2");
    if (cls.label() == "H" && n != mm) throw UsageError("class H only supports n = m");
  }
  if (m.format != "json" && m.format != "csv" && m.format != "table")
    throw UsageError("unknown format '" + m.format + "'");
  try {
    m.search.validate();
    for (const auto& [n, mm] : m.pairs)
      for (const auto& t : m.lambdas) (void)FunctionalSpec(resolve_lambda(t, m, n, mm), n, mm);
    if (cls.label() == "H") {
      const auto& profile = std::get<CoefficientClass>(cls.variant()).profile;
      for (const auto& [n, mm] : m.pairs) (void)profile.r(2 * n - 1);
    }
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
}

double resolve_lambda(const std::string& raw, const RunManifest& m, int n, int mm) {
  const std::string token = lower(trim(raw));
  if (token.empty()) throw UsageError("empty lambda entry");
  double scale = 1.0;
  std::string base = token;
  if (const auto star = token.find('*'); star != std::string::npos) {
    scale = parse_number(trim(token.substr(0, star)), "lambda scale");
    base = trim(token.substr(star + 1));
  }
  double lambda = 0.0;
  if (base == "threshold") {
    const std::string c = normalized_class(m);
    if (c == "coc") lambda = 2.0;
    else if (c == "R") lambda = nw_threshold(m.beta, n, mm);
    else throw UsageError("'threshold' is not defined for class H (use 'tie')");
  } else if (base == "tie") {
    if (normalized_class(m) != "H") throw UsageError("'tie' is only defined for class H");
    lambda = h_tie_lambda(build_profile(m), n);
  } else {
    if (token.find('*') != std::string::npos) throw UsageError("only threshold/tie can be scaled");
    lambda = parse_number(base, "lambda");
  }
  lambda *= scale;
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw UsageError("lambda must be positive");
  return lambda;
}

RunResult cmd_verify(const RunManifest& m) {
  validate(m);
  const auto cls = build_class(m);
  RunResult result;
  auto rows = nlohmann::json::array();
  std::size_t failures = 0, open = 0, index = 0;

  for (const auto& cell : cells_for(m)) {
    const auto& spec = cell.spec;
    const std::uint64_t cell_seed = m.search.seed + 7919 * index++;
    nlohmann::json row;
    nlohmann::json checks = nlohmann::json::object();
    bool ok = true;

    if (cls.has_measure_representation()) {
      const auto rep = brute_force_max(cls, spec, m.search, m.small_lambda_range);
      row = report_to_json(rep);
      if (rep.bound.applicable) {
        auto [sharp, values] = extremal_check(cls, spec, rep.bound);
        const double sampled = sample_max_measures(cls, spec, m.samples, cell_seed);
        row["extremal_values"] = values;
        row["sample_max"] = sampled;
        checks["extremal_sharp"] = sharp;
        checks["sound"] = sampled <= rep.bound.value + kSoundSlack && *rep.gap >= -kSoundSlack;
        checks["search_sharp"] = *rep.gap <= kSearchGapTol;
      }
    } else {
      const auto& profile = std::get<CoefficientClass>(cls.variant()).profile;
      const auto rep = h_search(profile, spec.lambda(), spec.n());
      row = report_to_json(rep);
      auto [sharp, values] = extremal_check(cls, spec, rep.bound);
      const double sampled = sample_max_sparse(profile, spec, m.samples, cell_seed);
      row["extremal_values"] = values;
      row["sample_max"] = sampled;
      checks["extremal_sharp"] = sharp;
      checks["sound"] = sampled <= rep.bound.value + kSoundSlack;
      checks["grid_match"] = std::abs(*rep.grid_value - rep.best_value) <= kGridTol;
      checks["branch_ok"] = branch_matches(profile, spec, rep.bound.regime);
    }

    for (const auto& [name, value] : checks.items()) ok = ok && value.get<bool>();
    if (!row["applicable"].get<bool>()) {
      row["status"] = "open";
      row["annotation"] = "open range";
      ++open;
    } else {
      row["status"] = ok ? "pass" : "fail";
      row["annotation"] = "theorem range";
      if (!ok) ++failures;
    }
    row["checks"] = checks;
    rows.push_back(std::move(row));
  }
  result.exit_code = failures == 0 ? kExitOk : kExitViolation;
  const std::size_t cells = rows.size();
  result.document = document("verify", std::move(rows),
                             {{"cells", cells}, {"failures", failures}, {"open_cells", open}, {"ok", failures == 0}});
  return result;
}

RunResult cmd_search(const RunManifest& m) {
  validate(m);
  const auto cls = build_class(m);
  RunResult result;
  auto rows = nlohmann::json::array();
  std::size_t unsound = 0;
  for (const auto& cell : cells_for(m)) {
    const auto& spec = cell.spec;
    const SearchReport rep =
        cls.has_measure_representation()
            ? brute_force_max(cls, spec, m.search, m.small_lambda_range)
            : h_search(std::get<CoefficientClass>(cls.variant()).profile, spec.lambda(), spec.n());
    auto row = report_to_json(rep);
    const bool sound = !rep.gap || *rep.gap >= -kSoundSlack;
    if (!sound) ++unsound;
    row["status"] = sound ? "ok" : "unsound";
    row["annotation"] = rep.bound.applicable ? "theorem range" : "open range";
    rows.push_back(std::move(row));
  }
  result.exit_code = unsound == 0 ? kExitOk : kExitViolation;
  const std::size_t cells = rows.size();
  result.document = document("search", std::move(rows), {{"cells", cells}, {"unsound", unsound}, {"ok", unsound == 0}});
  return result;
}

RunResult cmd_probe(const RunManifest& m) {
  validate(m);
  const auto cls = build_class(m);
  if (!cls.has_measure_representation()) throw UsageError("probe supports classes coc and R");
  RunResult result;
  auto rows = nlohmann::json::array();
  auto monotone = nlohmann::json::array();
  for (const auto& [n, mm] : m.pairs) {
    std::vector<double> lambdas;
    for (const auto& t : m.lambdas) lambdas.push_back(resolve_lambda(t, m, n, mm));
    std::sort(lambdas.begin(), lambdas.end());
    const auto reports = probe_open_range(cls, lambdas, n, mm, m.search);
    for (const auto& rep : reports) {
      auto row = report_to_json(rep);
      row["status"] = "recorded";
      rows.push_back(std::move(row));
    }
    monotone.push_back({{"n", n}, {"m", mm}, {"monotone_nondecreasing", is_monotone_nondecreasing(reports)}});
  }
  const std::size_t cells = rows.size();
  result.document = document("probe", std::move(rows), {{"cells", cells}, {"monotonicity", std::move(monotone)}});
  return result;
}

RunResult cmd_table(const RunManifest& m) {
  validate(m);
  const auto cls = build_class(m);
  RunResult result;
  auto rows = nlohmann::json::array();
  for (const auto& cell : cells_for(m)) {
    const auto& spec = cell.spec;
    const auto bound = class_bound(cls, spec, m.small_lambda_range);
    nlohmann::json row;
    row["class"] = cls.label();
    row["profile"] = cls.profile_label();
    row["beta"] = cls.beta();
    row["lambda"] = spec.lambda();
    row["n"] = spec.n();
    row["m"] = spec.m();
    row["bound"] = bound.applicable ? nlohmann::json(bound.value) : nlohmann::json(nullptr);
    row["applicable"] = bound.applicable;
    row["regime"] = to_string(bound.regime);
    row["attainers"] = bound.attainers;
    auto [sharp, values] = extremal_check(cls, spec, bound);
    double best = 0.0;
    for (const auto& v : values) best = std::max(best, v.get<double>());
    row["best_value"] = bound.applicable ? nlohmann::json(best) : nlohmann::json(nullptr);
    row["gap"] = bound.applicable ? nlohmann::json(bound.value - best) : nlohmann::json(nullptr);
    row["seed"] = m.search.seed;
    row["evaluations"] = values.size();
    row["converged"] = true;
    row["status"] = bound.applicable ? (sharp ? "sharp" : "not-sharp") : "open";
    row["annotation"] = bound.applicable ? "theorem range" : "open range";
    row["ma_reference"] = ma_reference(spec.n(), spec.m());
    if (cls.has_measure_representation()) row["moment_bound"] = moment_bound(cls, spec);
    if (cls.label() == "R") row["threshold"] = nw_threshold(cls.beta(), spec.n(), spec.m());
    if (cls.label() == "H")
      row["tie_lambda"] = h_tie_lambda(std::get<CoefficientClass>(cls.variant()).profile, spec.n());
    rows.push_back(std::move(row));
  }
  const std::size_t cells = rows.size();
  result.document = document("table", std::move(rows), {{"cells", cells}});
  return result;
}

std::string render(const nlohmann::json& doc, const std::string& format) {
  if (format == "csv") return rows_to_csv(doc.at("rows"));
  if (format == "table") return rows_to_table(doc.at("rows"));
  return canonical_dump(doc) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized Zalcman functional: closed-form bounds and brute-force extremal search"};
  app.require_subcommand(1);

  struct Flags {
    std::string cls, profile, format, out, config, range;
    double beta = 0.0, nu = 0.0, tol = 0.0;
    std::vector<std::string> lambdas;
    std::vector<int> ns, ms;
    std::size_t atoms = 0, grid = 0, restarts = 0, samples = 0, threads = 0;
    std::uint64_t seed = 0;
  } f;
  struct Opts {
    CLI::Option *cls, *profile, *beta, *nu, *lambda, *n, *m, *atoms, *grid, *restarts, *seed, *tol, *format, *out,
        *config, *samples, *threads, *range;
  };
  std::vector<std::pair<CLI::App*, Opts>> subs;

  const std::pair<const char*, const char*> commands[] = {
      {"verify", "check sharpness and soundness of the closed-form bounds on a grid"},
      {"search", "brute-force maximum of the functional per grid cell"},
      {"probe", "empirical maxima over lambda ranges no theorem covers"},
      {"table", "closed-form bounds and their extremal values, no search"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    Opts o{};
    o.cls = sub->add_option("--class", f.cls, "coc, R or H");
    o.profile = sub->add_option("--profile", f.profile,
                                "starlike, convex, ust, ucv, nw, spiral, hurwitz, or a JSON array r(2), r(3), ...");
    o.beta = sub->add_option("--beta", f.beta, "order parameter beta in [0, 1)");
    o.nu = sub->add_option("--nu", f.nu, "spiral angle nu in (-pi/2, pi/2)");
    o.lambda = sub->add_option("--lambda", f.lambdas, "comma list: numbers, threshold, tie, or k*threshold / k*tie")
                   ->delimiter(',');
    o.n = sub->add_option("--n", f.ns, "comma list of n")->delimiter(',');
    o.m = sub->add_option("--m", f.ms, "comma list of m (default m = n); combined with --n as a product")
              ->delimiter(',');
    o.atoms = sub->add_option("--atoms", f.atoms, "atoms per measure (default 2 max(n,m) - 2)");
    o.grid = sub->add_option("--grid", f.grid, "angle grid points on [0, 2pi)");
    o.restarts = sub->add_option("--restarts", f.restarts, "random restarts");
    o.seed = sub->add_option("--seed", f.seed, "random seed");
    o.tol = sub->add_option("--tol", f.tol, "refinement step tolerance");
    o.format = sub->add_option("--format", f.format, "json, csv or table");
    o.out = sub->add_option("--out", f.out, "write the report here instead of standard output");
    o.config = sub->add_option("--config", f.config, "JSON config file");
    o.samples = sub->add_option("--samples", f.samples, "soundness samples per verify cell");
    o.threads = sub->add_option("--threads", f.threads, "worker threads for restarts");
    o.range = sub->add_option("--small-lambda-range", f.range,
                              "over-one-minus-beta, times-one-minus-beta or up-to-threshold");
    subs.emplace_back(sub, o);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    (void)app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    const auto it = std::find_if(subs.begin(), subs.end(), [](const auto& s) { return s.first->parsed(); });
    const Opts& o = it->second;
    RunManifest m;
    m.command = it->first->get_name();

    if (o.config->count()) {
      std::ifstream in(f.config);
      if (!in) throw UsageError("cannot read config file '" + f.config + "'");
      nlohmann::json c;
      try {
        c = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config file is not valid JSON: ") + e.what());
      }
      apply_config(m, c);
    }

    if (o.cls->count()) m.class_name = f.cls;
    if (o.profile->count()) m.profile = f.profile;
    if (o.beta->count()) m.beta = f.beta;
    if (o.nu->count()) m.nu = f.nu;
    if (o.lambda->count()) m.lambdas = f.lambdas;
    if (o.m->count() && !o.n->count()) throw UsageError("--m needs --n");
    if (o.n->count()) {
      m.pairs.clear();
      for (int n : f.ns) {
        if (!o.m->count()) m.pairs.emplace_back(n, n);
        for (int mm : f.ms) m.pairs.emplace_back(n, mm);
      }
    }
    if (o.atoms->count()) m.search.atom_count = f.atoms;
    if (o.grid->count()) m.search.angle_grid = f.grid;
    if (o.restarts->count()) m.search.restarts = f.restarts;
    if (o.seed->count()) m.search.seed = f.seed;
    if (o.tol->count()) m.search.tolerance = f.tol;
    if (o.samples->count()) m.samples = f.samples;
    if (o.threads->count()) m.search.threads = f.threads;
    if (o.range->count()) m.small_lambda_range = parse_range(f.range);
    if (o.format->count()) m.format = f.format;
    if (o.out->count()) m.out = f.out;

    RunResult r;
    if (m.command == "verify") r = cmd_verify(m);
    else if (m.command == "search") r = cmd_search(m);
    else if (m.command == "probe") r = cmd_probe(m);
    else r = cmd_table(m);

    const std::string text = render(r.document, m.format);
    if (m.out.empty()) {
      out << text;
    } else {
      auto file = open_out(m.out);
      file << text;
    }
    return r.exit_code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace zalcman::cli
