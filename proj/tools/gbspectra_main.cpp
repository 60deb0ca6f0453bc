#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "gbspectra/assembly.hpp"
#include "gbspectra/experiment.hpp"
#include "gbspectra/matrix_io.hpp"
#include "gbspectra/toeplitz.hpp"

namespace {

namespace fs = std::filesystem;
using namespace gbspectra;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void print_symbol(const char* label, const SymbolCoeffs& sym) {
  std::string line = label;
  line += ":";
  for (int k = -sym.p; k <= sym.p; ++k) {
    line += " ";
    line += fmt12(sym.coeff(k));
  }
  std::cout << line << "\n";
}

int do_run(const std::string& config_path, int jobs, bool has_seed, std::uint64_t seed,
           const std::string& out_dir, const std::vector<std::string>& checks) {
  ExperimentConfig config = parse_config_file(config_path);
  if (jobs > 0) config.jobs = jobs;
  if (has_seed) config.seed = seed;
  if (!out_dir.empty()) config.out_dir = out_dir;
  if (!checks.empty()) config.checks = checks;
  validate_config(config);

  const ExperimentResult result = run_experiment(config);
  std::printf("%zu rows, %d failed (%.0f ms of casework)\n", result.rows.size(),
              result.failed, result.total_ms);
  std::printf("report:  %s/report.csv\nsummary: %s/summary.json\n",
              config.out_dir.c_str(), config.out_dir.c_str());
  std::printf("%s\n", result.failed == 0 ? "PASS" : "FAIL");
  return result.failed == 0 ? 0 : 1;
}

int do_symbol(int p, const std::string& space_spec, int n, const std::string& out_dir) {
  const SectionSpace space = parse_space(space_spec);
  const SymbolCoeffs f = extract_symbol(p, space, n, SymbolKind::F);
  const SymbolCoeffs h = extract_symbol(p, space, n, SymbolKind::H);
  print_symbol("f", f);
  print_symbol("h", h);

  fs::create_directories(out_dir);
  std::string slug = format_space(space);
  for (char& ch : slug)
    if (ch == ':') ch = '-';
  const std::string tag =
      "_p" + std::to_string(p) + "_" + slug + "_n" + std::to_string(n) + ".csv";
  write_symbol_csv(out_dir + "/symbol_f" + tag, f);
  write_symbol_csv(out_dir + "/symbol_h" + tag, h);
  write_sample_csv(out_dir + "/sample_f" + tag, f, 512);
  write_sample_csv(out_dir + "/sample_h" + tag, h, 512);
  std::printf("wrote symbol_{f,h}%s and sample_{f,h}%s under %s\n", tag.c_str(),
              tag.c_str(), out_dir.c_str());
  return 0;
}

int do_assemble(int p, int n, const std::string& space_spec, double beta, double gamma,
                const std::string& which, const std::string& format,
                const std::string& out_path) {
  const GalerkinSet1D set = assemble_1d(n, p, parse_space(space_spec));
  Eigen::MatrixXd X;
  if (which == "A")
    X = assemble_A_1d(set, beta, gamma);
  else if (which == "M")
    X = set.M;
  else if (which == "K")
    X = set.K;
  else
    X = set.H;

  if (format == "csv")
    write_dense_csv(out_path, X);
  else
    write_banded(out_path, X, detect_bandwidth(X));
  std::printf("wrote %s (%ldx%ld, %s) to %s\n", which.c_str(), static_cast<long>(X.rows()),
              static_cast<long>(X.cols()), format.c_str(), out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin spectra of generalized B-spline discretizations"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run the verification checks from a config file");
  std::string config_path;
  int jobs = 0;
  std::uint64_t seed = 0;
  std::string run_out;
  std::vector<std::string> checks;
  run->add_option("config", config_path, "key=value config file")->required();
  run->add_option("--jobs", jobs, "worker threads (overrides the config)");
  run->add_option("--seed", seed, "seed for randomized checks (overrides the config)");
  run->add_option("--out", run_out, "output directory (overrides the config)");
  run->add_option("--checks", checks, "comma-separated subset of checks")
      ->delimiter(',');

  auto* symbol = app.add_subcommand("symbol", "extract Toeplitz symbols of one space");
  int sp = 2, sn = 16;
  std::string sspace = "poly";
  std::string sym_out = "out";
  symbol->add_option("--p", sp, "degree")->required();
  symbol->add_option("--space", sspace, "space spec, e.g. poly or trig:1:nested")
      ->required();
  symbol->add_option("--n", sn, "mesh elements")->required();
  symbol->add_option("--out", sym_out, "output directory (default: out)");

  auto* assemble = app.add_subcommand("assemble", "write one Galerkin matrix to a file");
  int ap = 2, an = 16;
  std::string aspace = "poly";
  double beta = 1.0, gamma = 1.0;
  std::string which = "A", format = "csv", out_path;
  assemble->add_option("--p", ap, "degree")->required();
  assemble->add_option("--n", an, "mesh elements")->required();
  assemble->add_option("--space", aspace, "space spec")->required();
  assemble->add_option("--beta", beta, "advection coefficient (default 1)");
  assemble->add_option("--gamma", gamma, "reaction coefficient (default 1)");
  assemble->add_option("--matrix", which, "which matrix: A|M|K|H (default A)")
      ->check(CLI::IsMember({"A", "M", "K", "H"}));
  assemble->add_option("--format", format, "csv|banded (default csv)")
      ->check(CLI::IsMember({"csv", "banded"}));
  assemble->add_option("--out", out_path, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return do_run(config_path, jobs, run->count("--seed") > 0, seed, run_out, checks);
    if (symbol->parsed()) return do_symbol(sp, sspace, sn, sym_out);
    if (assemble->parsed())
      return do_assemble(ap, an, aspace, beta, gamma, which, format, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
