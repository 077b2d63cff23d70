#include "zalcman/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace zalcman {

namespace {

nlohmann::json config_to_json(const std::variant<AtomicMeasure, SparseCoefficients>& cfg) {
  if (const auto* mu = std::get_if<AtomicMeasure>(&cfg)) return nlohmann::json(*mu);
  const auto& sparse = std::get<SparseCoefficients>(cfg);
  auto terms = nlohmann::json::array();
  for (const auto& [k, c] : sparse.terms) terms.push_back({k, c.real(), c.imag()});
  return nlohmann::json{{"terms", std::move(terms)}};
}

void dump_into(const nlohmann::json& j, std::string& out) {
  using value_t = nlohmann::json::value_t;
  switch (j.type()) {
    case value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      break;
    }
    case value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ',';
        first = false;
        dump_into(value, out);
      }
      out += ']';
      break;
    }
    case value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      break;
    }
    default:
      out += j.dump();
  }
}

std::string csv_field(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return std::isfinite(v.get<double>()) ? format_double(v.get<double>()) : "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char ch : s) {
      if (ch == '"') quoted += '"';
      quoted += ch;
    }
    return quoted + "\"";
  }
  return v.dump();
}

std::string short_number(const nlohmann::json& v) {
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

nlohmann::json report_to_json(const SearchReport& rep) {
  nlohmann::json row;
  row["class"] = rep.class_label;
  row["profile"] = rep.profile_label;
  row["beta"] = rep.beta;
  row["lambda"] = rep.spec.lambda();
  row["n"] = rep.spec.n();
  row["m"] = rep.spec.m();
  row["bound"] = rep.bound.applicable ? nlohmann::json(rep.bound.value) : nlohmann::json(nullptr);
  row["applicable"] = rep.bound.applicable;
  row["regime"] = to_string(rep.bound.regime);
  row["attainers"] = rep.bound.attainers;
  row["best_value"] = rep.best_value;
  row["gap"] = rep.gap ? nlohmann::json(*rep.gap) : nlohmann::json(nullptr);
  row["seed"] = rep.seed;
  row["evaluations"] = rep.evaluations;
  row["converged"] = rep.converged;
  row["best_config"] = config_to_json(rep.best_config);
  row["annotation"] = rep.annotation;
  row["status"] = "";
  if (rep.grid_value) row["grid_value"] = *rep.grid_value;
  if (!rep.references.empty()) {
    nlohmann::json refs = nlohmann::json::object();
    for (const auto& [name, value] : rep.references) refs[name] = value;
    row["references"] = std::move(refs);
  }
  return row;
}

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

std::string rows_to_csv(const nlohmann::json& rows) {
  std::ostringstream os;
  const auto& cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << (i ? "," : "");
      if (row.contains(cols[i])) os << csv_field(row.at(cols[i]));
    }
    os << '\n';
  }
  return os.str();
}

std::string rows_to_table(const nlohmann::json& rows) {
  static const std::vector<std::string> cols = {"class", "profile", "lambda", "n",   "m",
                                                "bound", "regime",  "best_value", "gap", "status"};
  std::vector<std::vector<std::string>> cells;
  cells.push_back(cols);
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (const auto& c : cols) line.push_back(row.contains(c) ? short_number(row.at(c)) : "");
    cells.push_back(std::move(line));
  }
  std::vector<std::size_t> width(cols.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());

  std::ostringstream os;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      os << cells[r][i];
      if (i + 1 < cols.size()) os << std::string(width[i] - cells[r][i].size() + 2, ' ');
    }
    os << '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w + 2;
      os << std::string(total - 2, '-') << '\n';
    }
  }
  return os.str();
}

}  // namespace zalcman
