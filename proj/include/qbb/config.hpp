#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "qbb/canned.hpp"
#include "qbb/form.hpp"
#include "qbb/parse.hpp"

namespace qbb {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Project configuration, read from JSON:
//   {"datum": {"indices": [...], "cartan": [[...]], "symmetrizer": [...]}  or  {"canned": "D-mix"},
//    "form": {"nu": "1", "overrides": {"j,2": "1/(1-q)"}},
//    "limits": {"max_height": 4, "max_depth": 4},
//    "lambdas": ["i=0,j=0", "i=1,j=1"],
//    "cache_dir": "..."}
struct ProjectConfig {
  std::vector<std::string> names;
  std::vector<std::vector<int>> cartan;
  std::vector<int> symmetrizer;
  std::string nu_default = "1";
  std::map<std::pair<std::string, int>, std::string> nu_overrides;
  int max_height = 6;
  int max_depth = 6;
  std::vector<std::string> lambdas;
  std::string cache_dir;

  Datum datum() const { return Datum(names, cartan, symmetrizer); }

  NuAssignment nu() const {
    NuAssignment nu;
    Datum d = datum();
    try {
      nu.set_default(nu_default);
      for (auto& [k, text] : nu_overrides) nu.set(static_cast<int>(d.index_of(k.first)), k.second, text);
    } catch (const ParseError& e) {
      throw ConfigError(std::string("form.nu: ") + e.what());
    } catch (const UnknownIndex& e) {
      throw ConfigError(std::string("form.overrides: ") + e.what());
    }
    return nu;
  }

  // Lambdas from the config, or all-0, all-1 and all-5 when none are given.
  std::vector<DominantWeight> lambda_list() const {
    Datum d = datum();
    std::vector<DominantWeight> out;
    for (auto& s : lambdas) out.push_back(parse_lambda(d, s));
    if (out.empty())
      for (int v : {0, 1, 5}) out.push_back(DominantWeight(d.size(), v));
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["datum"]["indices"] = names;
    j["datum"]["cartan"] = cartan;
    j["datum"]["symmetrizer"] = symmetrizer;
    j["form"]["nu"] = nu_default;
    j["form"]["overrides"] = nlohmann::ordered_json::object();
    for (auto& [k, v] : nu_overrides) j["form"]["overrides"][k.first + "," + std::to_string(k.second)] = v;
    j["limits"]["max_height"] = max_height;
    j["limits"]["max_depth"] = max_depth;
    j["lambdas"] = lambdas;
    j["cache_dir"] = cache_dir;
    return j;
  }

  friend bool operator==(const ProjectConfig&, const ProjectConfig&) = default;
};

inline ProjectConfig config_from_canned(const std::string& name) {
  auto d = canned_datum(name);
  if (!d) throw ConfigError("unknown canned datum '" + name + "'");
  ProjectConfig c;
  for (std::size_t i = 0; i < d->size(); ++i) {
    c.names.push_back(d->name(i));
    std::vector<int> row;
    for (std::size_t j = 0; j < d->size(); ++j) row.push_back(d->a(i, j));
    c.cartan.push_back(row);
    c.symmetrizer.push_back(d->r(i));
  }
  return c;
}

namespace detail {

inline std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < text.size() && k + 1 < byte; ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace detail

inline ProjectConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte);
    throw ParseError("invalid JSON", line, col);
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ProjectConfig c;
  try {
    if (!j.contains("datum")) throw ConfigError("missing 'datum' block");
    const auto& d = j.at("datum");
    if (d.contains("canned")) {
      c = config_from_canned(d.at("canned").get<std::string>());
    } else {
      c.names = d.at("indices").get<std::vector<std::string>>();
      c.cartan = d.at("cartan").get<std::vector<std::vector<int>>>();
      c.symmetrizer = d.contains("symmetrizer") ? d.at("symmetrizer").get<std::vector<int>>() : std::vector<int>(c.names.size(), 1);
    }
    if (j.contains("form")) {
      const auto& f = j.at("form");
      if (f.contains("nu")) c.nu_default = f.at("nu").get<std::string>();
      if (f.contains("overrides"))
        for (auto& [key, val] : f.at("overrides").items()) {
          auto comma = key.find(',');
          if (comma == std::string::npos) throw ConfigError("form.overrides key '" + key + "' must look like 'index,level'");
          int level = 0;
          try {
            level = std::stoi(key.substr(comma + 1));
          } catch (const std::exception&) {
            throw ConfigError("form.overrides key '" + key + "' has a bad level");
          }
          c.nu_overrides[{key.substr(0, comma), level}] = val.get<std::string>();
        }
    }
    if (j.contains("limits")) {
      const auto& l = j.at("limits");
      if (l.contains("max_height")) c.max_height = l.at("max_height").get<int>();
      if (l.contains("max_depth")) c.max_depth = l.at("max_depth").get<int>();
    }
    if (j.contains("lambdas")) c.lambdas = j.at("lambdas").get<std::vector<std::string>>();
    if (j.contains("cache_dir")) c.cache_dir = j.at("cache_dir").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (auto v = Datum::violation(c.names, c.cartan, c.symmetrizer)) throw ConfigError("datum: " + *v);
  if (c.max_height < 1) throw ConfigError("limits.max_height must be at least 1");
  if (c.max_depth < 1) throw ConfigError("limits.max_depth must be at least 1");
  c.nu();
  try {
    c.lambda_list();
  } catch (const ParseError& e) {
    throw ConfigError(std::string("lambdas: ") + e.what());
  }
  return c;
}

}  // namespace qbb
