#include "tfq/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tfq {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string canonical_params(const std::map<std::string, std::string>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    if (k.find_first_of(", =") != std::string::npos ||
        v.find_first_of(", =") != std::string::npos)
      throw std::invalid_argument("params must not contain ',', ' ' or '='");
    if (!out.empty()) out += ' ';
    out += k + '=' + v;
  }
  return out;
}

std::map<std::string, std::string> parse_params(const std::string& s) {
  std::map<std::string, std::string> kv;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("bad params token: " + tok);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

std::string Record::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(
                    fnv1a(suite + '|' + check + '|' + params + '|' +
                          std::to_string(seed))));
  return buf;
}

std::size_t Report::normative_count() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.normative ? 1 : 0;
  return n;
}

std::size_t Report::failed_normative() const {
  std::size_t n = 0;
  for (const auto& r : records) n += (r.normative && !r.pass) ? 1 : 0;
  return n;
}

double Report::worst_ratio() const {
  double w = 0.0;
  for (const auto& r : records)
    if (r.normative && std::isfinite(r.ratio)) w = std::max(w, r.ratio);
  return w;
}

void Report::sort_records() {
  std::stable_sort(records.begin(), records.end(),
                   [](const Record& a, const Record& b) {
                     const std::string da = a.digest(), db = b.digest();
                     return da != db ? da < db : a.check < b.check;
                   });
}

void Report::write_csv(std::ostream& os) const {
  os << "# schema=tfq-report-v1\n";
  os << "digest,suite,check,law,params,seed,lhs,rhs,ratio,pass,normative\n";
  for (const auto& r : records) {
    os << r.digest() << ',' << r.suite << ',' << r.check << ',' << r.law << ','
       << r.params << ',' << r.seed << ',' << format_double(r.lhs) << ','
       << format_double(r.rhs) << ',' << format_double(r.ratio) << ','
       << (r.pass ? 1 : 0) << ',' << (r.normative ? 1 : 0) << '\n';
  }
}

void Report::write_json(std::ostream& os, bool with_runtime) const {
  nlohmann::ordered_json j;
  j["schema"] = "tfq-aggregate-v1";
  j["records"] = records.size();
  j["normative"] = normative_count();
  j["failed"] = failed_normative();
  j["worst_ratio"] = format_double(worst_ratio());
  nlohmann::ordered_json c;
  for (const auto& [k, v] : constants) c[k] = format_double(v);
  j["constants"] = c;
  j["pass"] = all_pass();
  if (with_runtime) j["runtime_seconds"] = runtime_seconds;
  os << j.dump(2) << '\n';
}

void Report::merge(Report other) {
  records.insert(records.end(), std::make_move_iterator(other.records.begin()),
                 std::make_move_iterator(other.records.end()));
  for (auto& [k, v] : other.constants) constants[k] = v;
}

std::vector<Record> Report::read_csv(std::istream& is) {
  std::vector<Record> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("digest,", 0) == 0) continue;
    std::vector<std::string> cols;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        cols.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
    cols.push_back(cur);
    if (cols.size() != 11)
      throw std::invalid_argument("report csv: expected 11 columns, got " +
                                  std::to_string(cols.size()));
    Record r;
    r.suite = cols[1];
    r.check = cols[2];
    r.law = cols[3];
    r.params = cols[4];
    r.seed = std::stoull(cols[5]);
    r.lhs = std::stod(cols[6]);
    r.rhs = std::stod(cols[7]);
    r.ratio = std::stod(cols[8]);
    r.pass = cols[9] == "1";
    r.normative = cols[10] == "1";
    if (r.digest() != cols[0])
      throw std::invalid_argument("report csv: digest mismatch for " + cols[0]);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace tfq
