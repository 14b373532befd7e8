#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tfq/weights.hpp"

namespace tfq {

// One value of the flat key/table config format:
//   seed = 1
//   suite = ["factorization", "wigner"]
//   weight = {kind="poly", s=2.0}
//   trials.factorization = 200
struct ConfigValue {
  enum class Type { Number, String, List, Table };
  Type type = Type::Number;
  double num = 0.0;
  std::string str;
  std::vector<ConfigValue> list;
  std::map<std::string, ConfigValue> table;

  double as_number() const;
  const std::string& as_string() const;
};

std::map<std::string, ConfigValue> parse_flat_config(const std::string& text);

struct ExperimentConfig {
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "csv";  // csv | json (json adds the aggregate file)
  std::map<std::string, ConfigValue> values;

  // trials.<name> override, defaulting to the suite's built-in count.
  std::size_t trials(const std::string& name, std::size_t def) const;
  // tol.<name> override; config may tighten a normative tolerance, never
  // loosen it.
  double tolerance(const std::string& name, double def) const;
  double number(const std::string& key, double def) const;
};

ExperimentConfig load_config_file(const std::string& path);
void apply_config_text(ExperimentConfig& cfg, const std::string& text);

// Weight from a {kind=...} table: const(c), poly(s), exp(r), tensor(factors),
// prod(a,b), quot(a,b), pairquot(w2,w1,split).
Weight weight_from_spec(const ConfigValue& spec);

}  // namespace tfq
