// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria 1-9 inspect the verification suites in-process; criterion 10
// exercises the CLI end to end for bitwise-deterministic reports.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "tfq/suites.hpp"

namespace fs = std::filesystem;
using namespace tfq;

namespace {

int failures = 0;

void line(int criterion, bool pass, const std::string& what) {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::size_t count_check(const Report& r, const std::string& check,
                        bool* all_pass) {
  std::size_t n = 0;
  for (const auto& rec : r.records)
    if (rec.check == check) {
      ++n;
      if (!rec.pass && all_pass) *all_pass = false;
    }
  return n;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  ExperimentConfig cfg;
  cfg.seed = 1;

  // ---- criterion 1: factorization exactness, norm law, product bound
  {
    const Report r = run_single_suite("factorization", cfg);
    bool ok = true;
    const std::size_t n = count_check(r, "factor-diagonal", &ok);
    std::set<std::string> p0s;
    for (const auto& rec : r.records)
      if (rec.check == "factor-diagonal")
        p0s.insert(parse_params(rec.params).at("p0"));
    const bool coverage = p0s.count("0.5") && p0s.count("1") && p0s.count("1.5");
    bool chain_ok = true;
    count_check(r, "factor-chain", &chain_ok);
    bool inf_ok = true;
    count_check(r, "factor-infinity", &inf_ok);
    line(1, ok && chain_ok && inf_ok && coverage && n >= 1000,
         "diagonal factorization: product exact to 1e-12, norm law to 1e-10, "
         "product bound with slack 1e-10 over " +
             std::to_string(n) + " instances");
  }

  // ---- criteria 2, 3: Hilbert-Schmidt identification and Schatten embedding
  {
    const Report r = run_single_suite("matrix-schatten", cfg);
    bool hs_ok = true;
    const std::size_t hs_n = count_check(r, "hs-identity", &hs_ok);
    line(2, hs_ok && hs_n >= 200,
         "U^2 = I_2 identification to rel 1e-10 over " + std::to_string(hs_n) +
             " weighted instances");

    bool emb_ok = true;
    const std::size_t emb_n = count_check(r, "schatten-embedding", &emb_ok);
    std::set<std::string> ps;
    for (const auto& rec : r.records)
      if (rec.check == "schatten-embedding")
        ps.insert(parse_params(rec.params).at("p"));
    bool probe_ok = true;
    const std::size_t probe_n = count_check(r, "probe-counterexample", &probe_ok);
    line(3,
         emb_ok && emb_n >= 1000 && ps.size() == 5 && probe_ok && probe_n >= 1,
         "Schatten embedding holds with slack 1e-10 for p in {1/2,2/3,1,3/2,2} "
         "(" +
             std::to_string(emb_n) +
             " instances); p > 2 probe exhibits ratio > 1");
  }

  // ---- criterion 4: matrix continuity
  {
    const Report r = run_single_suite("matrix-continuity", cfg);
    bool ok = true;
    std::set<std::string> tuples;
    bool has_inf1 = false, has_11 = false, has_qgt1 = false;
    std::size_t n = 0;
    for (const auto& rec : r.records)
      if (rec.check == "matrix-continuity") {
        ++n;
        if (!rec.pass) ok = false;
        const auto prm = parse_params(rec.params);
        tuples.insert(prm.at("p") + "|" + prm.at("q") + "|" + prm.at("p1") +
                      "|" + prm.at("p2"));
        if (prm.at("p") == "inf" && prm.at("q") == "1") has_inf1 = true;
        if (prm.at("p") == "1" && prm.at("q") == "1") has_11 = true;
        if (std::stod(prm.at("q")) > 1.0) has_qgt1 = true;
        if (std::stoull(prm.at("trials")) < 200) ok = false;
      }
    line(4,
         ok && tuples.size() >= 10 && has_inf1 && has_11 && has_qgt1 && n >= 10,
         "matrix continuity bound with slack 1e-10 over " +
             std::to_string(tuples.size()) +
             " exponent tuples x 200 random (A,f) pairs");
  }

  // ---- criterion 5: Gabor reconstruction
  {
    const Report r = run_single_suite("gabor-reconstruction", cfg);
    bool rec_ok = true, comm_ok = true, dual_ok = true;
    const std::size_t nrec = count_check(r, "gabor-reconstruct", &rec_ok);
    count_check(r, "gabor-commutation", &comm_ok);
    count_check(r, "gabor-dual", &dual_ok);
    std::set<std::string> systems;
    for (const auto& rec : r.records)
      if (rec.check == "gabor-reconstruct") {
        const auto prm = parse_params(rec.params);
        systems.insert(prm.at("n") + "/" + prm.at("a") + "x" + prm.at("b"));
      }
    line(5,
         rec_ok && comm_ok && dual_ok && nrec >= 150 &&
             systems.count("64/4x4") && systems.count("128/4x4") &&
             systems.count("128/8x8"),
         "Gabor reconstruction (both orders) to 1e-8 on N in {64,128}, steps "
         "{(4,4),(8,8)} with ab < N; commutation to 1e-10");
  }

  // ---- criterion 6: operator factorization
  {
    const Report r = run_single_suite("op-factorization", cfg);
    bool id_ok = true, fac_ok = true;
    count_check(r, "op-identity-one", &id_ok);
    const std::size_t n = count_check(r, "op-factorization", &fac_ok);
    bool spread_ok = true;
    count_check(r, "unorm-modnorm-spread", &spread_ok);
    line(6, id_ok && fac_ok && spread_ok && n >= 20,
         "Op = D A C factorization to 1e-6 over " + std::to_string(n) +
             " random symbols (N=64, step 4); a == 1 reproduces the identity "
             "to 1e-8");
  }

  // ---- criterion 7: rank-one, covariance, involution identities
  {
    const Report r = run_single_suite("wigner", cfg);
    bool rank_ok = true, cov_ok = true, inv_ok = true, one_ok = true,
         group_ok = true;
    const std::size_t nr = count_check(r, "rank-one", &rank_ok);
    count_check(r, "calculus-covariance", &cov_ok);
    count_check(r, "calculus-group", &group_ok);
    count_check(r, "op-of-one", &one_ok);
    bool inv_63 = false;
    for (const auto& rec : r.records)
      if (rec.check == "symplectic-involution") {
        if (!rec.pass) inv_ok = false;
        if (parse_params(rec.params).at("n") == "63") inv_63 = true;
      }
    std::set<std::string> ts;
    for (const auto& rec : r.records)
      if (rec.check == "rank-one") ts.insert(parse_params(rec.params).at("t"));
    line(7,
         rank_ok && cov_ok && inv_ok && one_ok && group_ok && inv_63 &&
             ts.size() == 4 && nr >= 4,
         "rank-one identity to 1e-10 for t in {0,1/4,1/2,1}; quantization "
         "covariance to 1e-12; symplectic involution to 1e-12 at N=63");
  }

  // ---- criterion 8: Wigner convolution identity
  {
    const Report r = run_single_suite("convolution", cfg);
    bool conv_ok = true, stab_ok = true;
    std::size_t n33 = 0, n63 = 0;
    for (const auto& rec : r.records)
      if (rec.check == "wigner-convolution") {
        if (!rec.pass) conv_ok = false;
        const auto prm = parse_params(rec.params);
        if (prm.at("n") == "33") ++n33;
        if (prm.at("n") == "63") ++n63;
      }
    count_check(r, "wigner-conv-stability", &stab_ok);
    line(8, conv_ok && stab_ok && n33 >= 10 && n63 >= 10,
         "pointwise |W*W| = C |V V| to rel 1e-8 on the full grid (N in "
         "{33,63}, 10 quadruples each); L^p constant stable within factor 2");
  }

  // ---- criterion 9: empirical-constant stability across N
  {
    bool ok = true;
    std::size_t n_stab = 0;
    for (const char* suite : {"op-continuity", "op-schatten", "wigner",
                              "convolution"}) {
      const Report r = run_single_suite(suite, cfg);
      for (const auto& rec : r.records)
        if (rec.check == "op-continuity-stability" ||
            rec.check == "op-schatten-stability" ||
            rec.check == "wigner-mod-stability" ||
            rec.check == "stft-window-stability") {
          ++n_stab;
          if (!rec.pass) ok = false;
        }
    }
    line(9, ok && n_stab >= 8,
         "logged constants for the operator continuity/Schatten, Wigner "
         "modulation and STFT window bounds vary by at most a factor of 4 "
         "across N in {32,64,128} (" +
             std::to_string(n_stab) + " families)");
  }

  // ---- criterion 10: bitwise-deterministic reports through the CLI
  {
    const fs::path base = fs::temp_directory_path() / "tfq-acceptance";
    fs::remove_all(base);
    const fs::path d1 = base / "run1", d2 = base / "run2";
    const std::string cli = TFQ_CLI_PATH;
    const std::string cmd1 =
        cli + " verify all --seed 1 --out " + d1.string() + " > /dev/null";
    const std::string cmd2 =
        cli + " verify all --seed 1 --out " + d2.string() + " > /dev/null";
    const int rc1 = std::system(cmd1.c_str());
    const int rc2 = std::system(cmd2.c_str());
    const bool ran = rc1 == 0 && rc2 == 0;
    const bool same_csv =
        ran && slurp(d1 / "report.csv") == slurp(d2 / "report.csv");
    const bool same_json =
        ran && slurp(d1 / "aggregate.json") == slurp(d2 / "aggregate.json");
    line(10, ran && same_csv && same_json,
         "verify all --seed 1 twice: exit 0 and bitwise-identical report.csv "
         "and aggregate.json");
  }

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
