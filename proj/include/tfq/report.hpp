#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tfq {

// One verification record. params is a canonical "k=v k=v" string (keys
// sorted, no commas) from which the record is recomputable together with the
// seed; digest() hashes exactly those recompute inputs.
struct Record {
  std::string suite;
  std::string check;      // registry id of the computation
  std::string law;        // name of the certified identity or inequality
  std::string params;
  std::uint64_t seed = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = false;
  bool normative = true;

  std::string digest() const;
};

struct Report {
  std::vector<Record> records;
  std::map<std::string, double> constants;  // logged empirical constants
  double runtime_seconds = 0.0;             // not serialized (determinism)

  std::size_t normative_count() const;
  std::size_t failed_normative() const;
  bool all_pass() const { return failed_normative() == 0; }
  double worst_ratio() const;

  // Records sorted by digest so emission order is independent of execution
  // order.
  void sort_records();
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os, bool with_runtime = false) const;
  void merge(Report other);

  static std::vector<Record> read_csv(std::istream& is);
};

// Shortest-round-trip formatting used everywhere a double lands in a report.
std::string format_double(double v);
std::uint64_t fnv1a(const std::string& s);

// Canonical "k=v k=v" join of sorted parameter pairs.
std::string canonical_params(const std::map<std::string, std::string>& kv);
std::map<std::string, std::string> parse_params(const std::string& s);

}  // namespace tfq
