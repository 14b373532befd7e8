// Command-line front end: verification suites, matrix factorization, Gabor
// duals and reconstruction, quantization utilities, the sharpness probe, and
// report replay.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tfq/psido.hpp"
#include "tfq/suites.hpp"

namespace fs = std::filesystem;

namespace {

tfq::ExperimentConfig make_config(const std::string& config_path,
                                  std::uint64_t seed, const std::string& out,
                                  const std::string& format) {
  tfq::ExperimentConfig cfg;
  if (!config_path.empty()) cfg = tfq::load_config_file(config_path);
  if (seed != 0) cfg.seed = seed;
  if (!out.empty()) cfg.out_dir = out;
  if (!format.empty()) cfg.format = format;
  // environment override for the output directory only
  if (const char* env = std::getenv("TFQ_OUT_DIR")) cfg.out_dir = env;
  return cfg;
}

int write_report(const tfq::Report& rep, const tfq::ExperimentConfig& cfg,
                 bool timing) {
  fs::create_directories(cfg.out_dir);
  {
    std::ofstream csv(fs::path(cfg.out_dir) / "report.csv");
    rep.write_csv(csv);
  }
  {
    std::ofstream js(fs::path(cfg.out_dir) / "aggregate.json");
    rep.write_json(js, /*with_runtime=*/false);
  }
  if (cfg.format == "json") {
    rep.write_json(std::cout, timing);
  } else {
    std::cout << "records=" << rep.records.size()
              << " normative=" << rep.normative_count()
              << " failed=" << rep.failed_normative()
              << " worst_ratio=" << tfq::format_double(rep.worst_ratio())
              << (rep.all_pass() ? " PASS" : " FAIL") << "\n";
  }
  if (timing)
    std::cerr << "runtime_seconds=" << rep.runtime_seconds << "\n";
  return rep.all_pass() ? 0 : 1;
}

tfq::Weight weight_from_arg(const std::string& spec) {
  if (spec.empty()) return tfq::Weight::one();
  const auto kv = tfq::parse_flat_config("w = " + spec);
  return tfq::weight_from_spec(kv.at("w"));
}

void write_grid_csv_file(const std::string& path,
                         const tfq::CyclicGridFunction& f) {
  std::ofstream os(path);
  for (std::size_t i = 0; i < f.n; ++i)
    os << i << ',' << tfq::format_double(f[i].real()) << ','
       << tfq::format_double(f[i].imag()) << '\n';
}

tfq::CyclicGridFunction read_grid_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path);
  std::vector<tfq::cplx> vals;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::size_t c1 = line.find(','), c2 = line.find(',', c1 + 1);
    vals.emplace_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)),
                      std::stod(line.substr(c2 + 1)));
  }
  tfq::CyclicGridFunction f(vals.size());
  f.values = std::move(vals);
  return f;
}

void write_symbol_csv_file(const std::string& path, const tfq::Symbol& a) {
  std::ofstream os(path);
  for (std::size_t x = 0; x < a.n; ++x)
    for (std::size_t xi = 0; xi < a.n; ++xi)
      os << x << ',' << xi << ',' << tfq::format_double(a.at(x, xi).real())
         << ',' << tfq::format_double(a.at(x, xi).imag()) << '\n';
}

tfq::Symbol read_symbol_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open " + path);
  std::string line;
  std::vector<std::array<double, 4>> rows;
  std::size_t nmax = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::array<double, 4> r{};
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
      const auto next = line.find(',', pos);
      r[static_cast<std::size_t>(i)] =
          std::stod(line.substr(pos, next - pos));
      pos = next == std::string::npos ? line.size() : next + 1;
    }
    nmax = std::max(nmax, static_cast<std::size_t>(r[0]) + 1);
    nmax = std::max(nmax, static_cast<std::size_t>(r[1]) + 1);
    rows.push_back(r);
  }
  tfq::Symbol a(nmax);
  for (const auto& r : rows)
    a.at(static_cast<std::size_t>(r[0]), static_cast<std::size_t>(r[1])) =
        tfq::cplx(r[2], r[3]);
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixed quasi-norm matrix classes, Gabor frames and "
               "pseudo-differential quantization: desk-scale verification"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  std::uint64_t seed = 0;
  bool timing = false;
  app.add_option("--config", config_path, "config file (flat key/table format)");
  app.add_option("--seed", seed, "master seed (overrides config)");
  app.add_option("--out", out_dir, "output directory for reports");
  app.add_option("--format", format, "stdout summary format: csv|json");
  app.add_flag("--timing", timing, "print runtime to stderr");

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suites;
  verify->add_option("suites", suites, "suite names (or 'all')");

  // factorize
  auto* factorize = app.add_subcommand("factorize", "diagonal factorization of a matrix");
  std::string matrix_path, side = "left", w0s, w1s, w2s;
  double fp0 = 1.0, fp1 = 2.0, fp2 = 2.0;
  factorize->add_option("matrix", matrix_path, "matrix CSV")->required();
  factorize->add_option("--p0", fp0);
  factorize->add_option("--p1", fp1);
  factorize->add_option("--p2", fp2);
  factorize->add_option("--side", side, "left|right diagonal factor");
  factorize->add_option("--w0", w0s, "weight spec, e.g. {kind=\"poly\", s=2.0}");
  factorize->add_option("--w1", w1s);
  factorize->add_option("--w2", w2s);

  // gabor
  auto* gabor = app.add_subcommand("gabor", "dual windows and reconstruction");
  std::string gabor_action, gwindow = "gauss";
  std::size_t gn = 128, ga = 8, gb = 8;
  gabor->add_option("action", gabor_action, "dual|reconstruct")->required();
  gabor->add_option("--n", gn);
  gabor->add_option("--a", ga);
  gabor->add_option("--b", gb);
  gabor->add_option("--window", gwindow, "gauss|hann|delta");

  // psido
  auto* psido = app.add_subcommand("psido", "quantization utilities");
  std::string psido_action, symbol_path;
  std::size_t pn = 64, pstep = 4;
  double pt = 0.0;
  psido->add_option("action", psido_action, "op|wigner|gmatrix")->required();
  psido->add_option("--n", pn);
  psido->add_option("--t", pt);
  psido->add_option("--step", pstep);
  psido->add_option("--symbol", symbol_path, "symbol CSV (x,xi,re,im)");

  // probe
  auto* probe = app.add_subcommand("probe", "exploratory probes");
  std::string probe_kind;
  double pr_p = 2.0, pr_q = 2.0, pr_r = 1.0;
  std::vector<std::size_t> pr_sizes{16, 32, 64};
  std::size_t pr_grid = 63;
  probe->add_option("kind", probe_kind, "sharpness")->required();
  probe->add_option("--p", pr_p);
  probe->add_option("--q", pr_q);
  probe->add_option("--r", pr_r);
  probe->add_option("--sizes", pr_sizes);
  probe->add_option("--grid", pr_grid);

  // replay
  auto* replay = app.add_subcommand("replay", "recompute a report from persisted inputs");
  std::string report_path;
  replay->add_option("report", report_path, "report.csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    tfq::ExperimentConfig cfg = make_config(config_path, seed, out_dir, format);

    if (verify->parsed()) {
      if (!suites.empty()) cfg.suites = suites;
      const auto t0 = std::chrono::steady_clock::now();
      tfq::Report rep = tfq::run_suites(cfg);
      rep.runtime_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      return write_report(rep, cfg, timing);
    }

    if (factorize->parsed()) {
      std::ifstream is(matrix_path);
      if (!is) throw std::invalid_argument("cannot open " + matrix_path);
      const tfq::LatticeMatrix a0 = tfq::read_matrix_csv(is);
      const auto e = [](double v) { return tfq::Exponent::from_double(v); };
      const tfq::Factorization f =
          side == "right"
              ? tfq::factorize_right_diagonal(a0, e(fp0), e(fp1), e(fp2),
                                              weight_from_arg(w0s),
                                              weight_from_arg(w1s),
                                              weight_from_arg(w2s))
              : tfq::factorize_left_diagonal(a0, e(fp0), e(fp1), e(fp2),
                                             weight_from_arg(w0s),
                                             weight_from_arg(w1s),
                                             weight_from_arg(w2s));
      fs::create_directories(cfg.out_dir);
      {
        std::ofstream o1(fs::path(cfg.out_dir) / "factor1.csv");
        tfq::write_matrix_csv(o1, f.a1);
        std::ofstream o2(fs::path(cfg.out_dir) / "factor2.csv");
        tfq::write_matrix_csv(o2, f.a2);
      }
      std::cout << "norm0=" << tfq::format_double(f.norm0)
                << " norm1=" << tfq::format_double(f.norm1)
                << " norm2=" << tfq::format_double(f.norm2)
                << " product_error=" << tfq::format_double(f.product_error)
                << " bound="
                << (f.norm1 * f.norm2 <= f.norm0 * (1.0 + 1e-10) ? "ok"
                                                                 : "violated")
                << "\n";
      return f.product_error <= 1e-12 ? 0 : 1;
    }

    if (gabor->parsed()) {
      tfq::CyclicGridFunction w = gwindow == "hann" ? tfq::hann_window(gn)
                                  : gwindow == "delta"
                                      ? tfq::delta_window(gn)
                                      : tfq::gaussian_window(gn);
      tfq::GaborSystem sys = tfq::make_gabor_system(std::move(w), ga, gb);
      const tfq::DualReport dual = tfq::canonical_dual(sys);
      if (gabor_action == "dual") {
        fs::create_directories(cfg.out_dir);
        write_grid_csv_file((fs::path(cfg.out_dir) / "dual.csv").string(),
                            *sys.dual);
        std::cout << "condition=" << tfq::format_double(dual.condition_number)
                  << " residual=" << tfq::format_double(dual.residual) << "\n";
        return 0;
      }
      if (gabor_action == "reconstruct") {
        tfq::Rng rng(cfg.seed);
        tfq::CyclicGridFunction f(gn);
        for (auto& v : f.values) v = rng.cnormal();
        const tfq::ReconstructionReport rec = tfq::reconstruct(sys, f);
        std::cout << "residual_dual_synthesis="
                  << tfq::format_double(rec.residual_ds)
                  << " residual_dual_analysis="
                  << tfq::format_double(rec.residual_da) << "\n";
        return rec.residual_ds <= 1e-8 && rec.residual_da <= 1e-8 ? 0 : 1;
      }
      throw std::invalid_argument("gabor: unknown action " + gabor_action);
    }

    if (psido->parsed()) {
      tfq::Symbol a = symbol_path.empty()
                          ? [&] {
                              tfq::Rng rng(cfg.seed);
                              return tfq::random_symbol_superposition(pn, 4, rng);
                            }()
                          : read_symbol_csv_file(symbol_path);
      fs::create_directories(cfg.out_dir);
      if (psido_action == "op") {
        const tfq::LatticeMatrix op = tfq::op_t(a, pt);
        std::ofstream os(fs::path(cfg.out_dir) / "operator.csv");
        tfq::write_matrix_csv(os, op);
        std::cout << "n=" << a.n << " t=" << pt << " written=operator.csv\n";
        return 0;
      }
      if (psido_action == "wigner") {
        tfq::Rng rng(cfg.seed);
        const tfq::CyclicGridFunction f1 =
            tfq::random_atom_superposition(pn, 3, rng);
        const tfq::CyclicGridFunction f2 =
            tfq::random_atom_superposition(pn, 3, rng);
        write_symbol_csv_file((fs::path(cfg.out_dir) / "wigner.csv").string(),
                              tfq::wigner_t(f1, f2, pt));
        std::cout << "n=" << pn << " t=" << pt << " written=wigner.csv\n";
        return 0;
      }
      if (psido_action == "gmatrix") {
        const tfq::CyclicGridFunction g = tfq::gaussian_window(pn);
        const tfq::PhaseSpaceSystem sys =
            tfq::make_phase_space_system(g, g, pstep);
        const tfq::LatticeMatrix gm = tfq::gabor_matrix(a, sys);
        std::ofstream os(fs::path(cfg.out_dir) / "gabor_matrix.csv");
        tfq::write_matrix_csv(os, gm);
        std::cout << "n=" << pn << " step=" << pstep
                  << " written=gabor_matrix.csv\n";
        return 0;
      }
      throw std::invalid_argument("psido: unknown action " + psido_action);
    }

    if (probe->parsed()) {
      if (probe_kind != "sharpness")
        throw std::invalid_argument("probe: unknown kind " + probe_kind);
      const tfq::SharpnessTable t =
          tfq::sharpness_probe(pr_p, pr_q, pr_r, pr_sizes, cfg.seed, pr_grid);
      std::cout << "size,schatten_r,control\n";
      for (std::size_t i = 0; i < t.sizes.size(); ++i)
        std::cout << t.sizes[i] << ',' << tfq::format_double(t.schatten_r[i])
                  << ',' << tfq::format_double(t.control[i]) << '\n';
      return 0;
    }

    if (replay->parsed()) {
      std::ifstream is(report_path);
      if (!is) throw std::invalid_argument("cannot open " + report_path);
      const auto records = tfq::Report::read_csv(is);
      const tfq::ReplayResult res = tfq::replay_report(records);
      std::cout << "checked=" << res.checked
                << " mismatches=" << res.mismatches.size() << "\n";
      for (const auto& d : res.mismatches) std::cout << "mismatch " << d << "\n";
      return res.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
