#include "tfq/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tfq {

double ConfigValue::as_number() const {
  if (type != Type::Number)
    throw std::invalid_argument("config: expected a number");
  return num;
}

const std::string& ConfigValue::as_string() const {
  if (type != Type::String)
    throw std::invalid_argument("config: expected a string");
  return str;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool done() const { return i >= s.size(); }
  char peek() const { return s[i]; }
  char take() { return s[i++]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("config: " + what + " near '" +
                                s.substr(i, 16) + "'");
  }
};

ConfigValue parse_value(Cursor& c);

ConfigValue parse_string(Cursor& c) {
  ConfigValue v;
  v.type = ConfigValue::Type::String;
  c.take();  // opening quote
  while (!c.done() && c.peek() != '"') v.str += c.take();
  if (c.done()) c.fail("unterminated string");
  c.take();
  return v;
}

ConfigValue parse_number(Cursor& c) {
  ConfigValue v;
  v.type = ConfigValue::Type::Number;
  std::size_t start = c.i;
  while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) ||
                       c.peek() == '+' || c.peek() == '-' || c.peek() == '.'))
    ++c.i;
  const std::string tok = c.s.substr(start, c.i - start);
  if (tok == "inf") {
    v.num = std::numeric_limits<double>::infinity();
    return v;
  }
  try {
    std::size_t used = 0;
    v.num = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    c.fail("bad number '" + tok + "'");
  }
  return v;
}

ConfigValue parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) c.fail("missing value");
  if (c.peek() == '"') return parse_string(c);
  if (c.peek() == '[') {
    ConfigValue v;
    v.type = ConfigValue::Type::List;
    c.take();
    c.skip_ws();
    while (!c.done() && c.peek() != ']') {
      v.list.push_back(parse_value(c));
      c.skip_ws();
      if (!c.done() && c.peek() == ',') {
        c.take();
        c.skip_ws();
      }
    }
    if (c.done()) c.fail("unterminated list");
    c.take();
    return v;
  }
  if (c.peek() == '{') {
    ConfigValue v;
    v.type = ConfigValue::Type::Table;
    c.take();
    c.skip_ws();
    while (!c.done() && c.peek() != '}') {
      std::size_t start = c.i;
      while (!c.done() && c.peek() != '=' && c.peek() != '}') ++c.i;
      std::string key = c.s.substr(start, c.i - start);
      while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
        key.pop_back();
      if (c.done() || c.peek() != '=') c.fail("expected '=' in table");
      c.take();
      v.table[key] = parse_value(c);
      c.skip_ws();
      if (!c.done() && c.peek() == ',') {
        c.take();
        c.skip_ws();
      }
    }
    if (c.done()) c.fail("unterminated table");
    c.take();
    return v;
  }
  return parse_number(c);
}

}  // namespace

std::map<std::string, ConfigValue> parse_flat_config(const std::string& text) {
  std::map<std::string, ConfigValue> out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = line.substr(0, eq);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t'))
      key.pop_back();
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key");
    std::string rest = line.substr(eq + 1);
    Cursor c{rest, 0};
    ConfigValue v = parse_value(c);
    c.skip_ws();
    if (!c.done())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": trailing junk after value");
    out[key] = std::move(v);
  }
  return out;
}

std::size_t ExperimentConfig::trials(const std::string& name,
                                     std::size_t def) const {
  const auto it = values.find("trials." + name);
  if (it == values.end()) return def;
  const double v = it->second.as_number();
  if (v < 1.0) throw std::invalid_argument("config: trials." + name + " < 1");
  return static_cast<std::size_t>(v);
}

double ExperimentConfig::tolerance(const std::string& name, double def) const {
  const auto it = values.find("tol." + name);
  if (it == values.end()) return def;
  const double v = it->second.as_number();
  if (v > def)
    throw std::invalid_argument(
        "config: tol." + name +
        " would loosen a normative tolerance (allowed to tighten only)");
  if (v < 1e-16) throw std::invalid_argument("config: tol." + name +
                                             " below machine-eps floor");
  return v;
}

double ExperimentConfig::number(const std::string& key, double def) const {
  const auto it = values.find(key);
  return it == values.end() ? def : it->second.as_number();
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  auto kv = parse_flat_config(text);
  for (auto& [key, value] : kv) {
    if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(value.as_number());
    } else if (key == "out") {
      cfg.out_dir = value.as_string();
    } else if (key == "format") {
      cfg.format = value.as_string();
      if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("config: format must be csv or json");
    } else if (key == "suite") {
      cfg.suites.clear();
      if (value.type == ConfigValue::Type::String) {
        cfg.suites.push_back(value.as_string());
      } else if (value.type == ConfigValue::Type::List) {
        for (const auto& s : value.list) cfg.suites.push_back(s.as_string());
      } else {
        throw std::invalid_argument("config: suite must be a string or list");
      }
    } else {
      cfg.values[key] = std::move(value);
    }
  }
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buf;
  buf << is.rdbuf();
  ExperimentConfig cfg;
  apply_config_text(cfg, buf.str());
  return cfg;
}

Weight weight_from_spec(const ConfigValue& spec) {
  if (spec.type != ConfigValue::Type::Table)
    throw std::invalid_argument("weight spec: expected {kind=...}");
  const auto kind_it = spec.table.find("kind");
  if (kind_it == spec.table.end())
    throw std::invalid_argument("weight spec: missing kind");
  const std::string& kind = kind_it->second.as_string();

  auto field = [&](const char* name) -> const ConfigValue& {
    const auto it = spec.table.find(name);
    if (it == spec.table.end())
      throw std::invalid_argument(std::string("weight spec: missing field ") +
                                  name);
    return it->second;
  };

  if (kind == "const") return Weight::constant(field("c").as_number());
  if (kind == "poly") return Weight::polynomial(field("s").as_number());
  if (kind == "exp") return Weight::exponential(field("r").as_number());
  if (kind == "tensor") {
    std::vector<Weight> factors;
    for (const auto& f : field("factors").list)
      factors.push_back(weight_from_spec(f));
    return Weight::tensor(std::move(factors));
  }
  if (kind == "prod")
    return Weight::product(weight_from_spec(field("a")),
                           weight_from_spec(field("b")));
  if (kind == "quot")
    return Weight::quotient(weight_from_spec(field("a")),
                            weight_from_spec(field("b")));
  if (kind == "pairquot") {
    std::size_t split = 0;
    const auto it = spec.table.find("split");
    if (it != spec.table.end())
      split = static_cast<std::size_t>(it->second.as_number());
    return Weight::pair_quotient(weight_from_spec(field("w2")),
                                 weight_from_spec(field("w1")), split);
  }
  throw std::invalid_argument("weight spec: unknown kind '" + kind + "'");
}

}  // namespace tfq
