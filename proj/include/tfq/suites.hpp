#pragma once

#include "tfq/config.hpp"
#include "tfq/report.hpp"

namespace tfq {

// The nine verification suites.
const std::vector<std::string>& suite_names();

// Run one named suite under the config (trial counts and tolerances may be
// tightened through cfg); records are not yet sorted.
Report run_single_suite(const std::string& name, const ExperimentConfig& cfg);

// Run cfg.suites (or all of them when the list contains "all"), sort records
// and return the merged report. Does not write files.
Report run_suites(const ExperimentConfig& cfg);

// Recompute one record from its persisted identity. Every record emitted by
// the suites is reproducible through this entry point; replay depends on it.
Record compute_record(const std::string& suite, const std::string& check,
                      const std::map<std::string, std::string>& params,
                      std::uint64_t seed,
                      std::map<std::string, double>* constants = nullptr);

struct ReplayResult {
  std::size_t checked = 0;
  std::vector<std::string> mismatches;  // digests of records that changed
  bool ok() const { return mismatches.empty(); }
};

ReplayResult replay_report(const std::vector<Record>& records);

// Exploratory growth probe for the sharpness direction of the Schatten
// embedding: modulated-single-atom Weyl symbols with coefficient tails in
// l^q \ l^r, Schatten-r norm tabulated against truncation size. q > r
// required; no pass/fail semantics.
struct SharpnessTable {
  std::vector<std::size_t> sizes;
  std::vector<double> schatten_r;  // divergent-candidate column
  std::vector<double> control;     // l^r-summable control column
};

SharpnessTable sharpness_probe(double p, double q, double r,
                               const std::vector<std::size_t>& sizes,
                               std::uint64_t seed, std::size_t grid_n = 63);

}  // namespace tfq
