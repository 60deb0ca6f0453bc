#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gbspectra/assembly.hpp"
#include "gbspectra/experiment.hpp"
#include "gbspectra/matrix_io.hpp"
#include "gbspectra/toeplitz.hpp"

using namespace gbspectra;
namespace fs = std::filesystem;

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  REQUIRE(os.good());
  os << content;
}

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  REQUIRE(is.good());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

/// report.csv lines with the trailing ms column removed.
std::vector<std::string> report_without_ms(const std::string& path) {
  std::vector<std::string> out;
  std::ifstream is(path);
  REQUIRE(is.good());
  std::string line;
  while (std::getline(is, line)) {
    const std::size_t cut = line.rfind(',');
    REQUIRE(cut != std::string::npos);
    out.push_back(line.substr(0, cut));
  }
  return out;
}

struct TempDir {
  std::string path;
  explicit TempDir(std::string p) : path(std::move(p)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("check-name roster") {
  const auto& names = all_check_names();
  REQUIRE(names.size() == 10);
  CHECK(names.front() == "mineig");
  CHECK(names[1] == "eq10");
  CHECK(names.back() == "ratio-bounds");

  const ExperimentConfig config = make_default_config();
  CHECK(config.spaces.size() == 5);
  CHECK(config.checks.size() == 10);
  CHECK_NOTHROW(validate_config(config));
}

TEST_CASE("config file parsing") {
  TempDir tmp("exp_cfg_tmp");
  const std::string path = tmp.path + "/run.cfg";
  write_file(path,
             "# comment line\n"
             "p_list = 2, 3\n"
             "n_list = 8, 16   # inline comment\n"
             "n1_list = 8, 12\n"
             "spaces = poly, trig:1:nonnested\n"
             "beta = 0.5\n"
             "gamma = 2\n"
             "nu_list = 1, 1.5\n"
             "p_pair = 2, 3\n"
             "checks = mineig, toeplitz\n"
             "out_dir = somewhere\n"
             "seed = 0x5EED\n"
             "jobs = 3\n"
             "tol.toeplitz = 0.2\n");
  const ExperimentConfig config = parse_config_file(path);
  CHECK(config.p_list == std::vector<int>{2, 3});
  CHECK(config.n_list == std::vector<int>{8, 16});
  CHECK(config.n1_list == std::vector<int>{8, 12});
  REQUIRE(config.spaces.size() == 2);
  CHECK(config.spaces[1].kind == SpaceKind::Trigonometric);
  CHECK(config.beta == 0.5);
  CHECK(config.gamma == 2.0);
  CHECK(config.nu_list == std::vector<double>{1.0, 1.5});
  REQUIRE(config.p_pair.has_value());
  CHECK(config.p_pair->first == 2);
  CHECK(config.p_pair->second == 3);
  CHECK(config.checks == std::vector<std::string>{"mineig", "toeplitz"});
  CHECK(config.out_dir == "somewhere");
  CHECK(config.seed == 0x5EED);
  CHECK(config.jobs == 3);
  CHECK(config.tol_overrides.at("toeplitz") == 0.2);
}

TEST_CASE("config rejection paths") {
  TempDir tmp("exp_cfg_bad");
  auto expect_throw = [&](const char* name, const std::string& content,
                          const std::string& needle) {
    const std::string path = tmp.path + "/" + name;
    write_file(path, content);
    try {
      (void)parse_config_file(path);
      FAIL("expected invalid_argument for " << name);
    } catch (const std::invalid_argument& e) {
      CAPTURE(name);
      CAPTURE(e.what());
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  expect_throw("unknown_key.cfg", "degree = 2\n", "unknown key");
  expect_throw("unknown_check.cfg", "checks = mineig, warp\n", "warp");
  expect_throw("bad_tol.cfg", "tol.warp = 1\n", "warp");
  expect_throw("no_equals.cfg", "p_list 2\n", "key=value");
  expect_throw("pair_arity.cfg", "p_pair = 2\n", "two integers");
  expect_throw("unsorted.cfg", "n_list = 16, 8\n", "ascending");
  // alpha = 4pi cannot be refined away in non-nested mode; the message says so
  expect_throw("wide_alpha.cfg", "spaces = trig:12.57:nonnested\n", "alpha*");
  // degree 3 admits only n = 16 here, too few for the distribution trends
  expect_throw("thin_grid.cfg", "p_list = 3\nn_list = 8, 16\n", "specdist");
}

TEST_CASE("experiment run: green report, deterministic across thread counts") {
  TempDir out_a("exp_out_a"), out_b("exp_out_b");
  ExperimentConfig config = make_default_config();
  config.p_list = {2};
  config.n_list = {16, 32};
  config.n1_list = {8, 12};
  config.spaces = {parse_space("poly"), parse_space("trig:1:nonnested")};
  config.nu_list = {1.0};
  // short two-point grids wobble more than the production sweep
  config.tol_overrides["conditioning"] = 3.0;
  config.tol_overrides["2d-decomposition"] = 1.3;
  config.out_dir = out_a.path;
  config.jobs = 1;

  const ExperimentResult a = run_experiment(config);
  CHECK(a.failed == 0);
  CHECK(!a.rows.empty());
  CHECK(a.total_ms > 0.0);

  // rows arrive sorted
  std::vector<ReportRow> copy = a.rows;
  sort_rows(copy);
  for (std::size_t i = 0; i < copy.size(); ++i) {
    CHECK(copy[i].check == a.rows[i].check);
    CHECK(copy[i].n == a.rows[i].n);
  }

  // header is the pinned schema
  std::ifstream is(out_a.path + "/report.csv");
  std::string header;
  std::getline(is, header);
  CHECK(header == "check,p,space,alpha,mode,n,beta,gamma,measured,bound,pass,ms");

  // a parallel run produces the identical report modulo timings
  config.out_dir = out_b.path;
  config.jobs = 4;
  const ExperimentResult b = run_experiment(config);
  CHECK(b.failed == 0);
  CHECK(b.rows.size() == a.rows.size());
  CHECK(report_without_ms(out_a.path + "/report.csv") ==
        report_without_ms(out_b.path + "/report.csv"));
  CHECK(read_file(out_a.path + "/summary.json") == read_file(out_b.path + "/summary.json"));

  // summary bookkeeping agrees with the rows
  const auto summary = nlohmann::json::parse(read_file(out_a.path + "/summary.json"));
  CHECK(summary.at("total").at("cases").get<std::size_t>() == a.rows.size());
  CHECK(summary.at("total").at("failed").get<int>() == 0);
  CHECK(summary.at("checks").contains("mineig"));
  CHECK(summary.at("checks").contains("2d-decomposition"));

  // rows can be read back
  const auto reread = read_report_csv(out_a.path + "/report.csv");
  REQUIRE(reread.size() == a.rows.size());
  CHECK(reread.front().check == a.rows.front().check);
  CHECK(reread.back().pass == a.rows.back().pass);
}

TEST_CASE("dense and banded matrix files round trip") {
  TempDir tmp("exp_io_tmp");

  const GalerkinSet1D set = assemble_1d(8, 2, SectionSpace{});
  const std::string dense_path = tmp.path + "/K.csv";
  write_dense_csv(dense_path, set.K);
  {
    std::ifstream is(dense_path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "# size=8");
  }
  const Eigen::MatrixXd K2 = read_dense_csv(dense_path);
  CHECK((K2 - set.K).cwiseAbs().maxCoeff() == 0.0);  // %.17g round-trips exactly

  Eigen::MatrixXd rect(2, 3);
  rect << 1.0, -2.5, 3.25, 0.0, 1e-17, -7.0;
  const std::string rect_path = tmp.path + "/rect.csv";
  write_dense_csv(rect_path, rect);
  {
    std::ifstream is(rect_path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "# size=2x3");
  }
  CHECK((read_dense_csv(rect_path) - rect).cwiseAbs().maxCoeff() == 0.0);

  CHECK(detect_bandwidth(set.K) == 2);
  const std::string banded_path = tmp.path + "/K.banded";
  write_banded(banded_path, set.K, 2);
  CHECK((read_banded(banded_path) - set.K).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(write_banded(banded_path, set.K, 99), std::invalid_argument);

  write_file(tmp.path + "/broken.csv", "no header\n1,2\n");
  CHECK_THROWS_AS((void)read_dense_csv(tmp.path + "/broken.csv"), std::runtime_error);

  const SymbolCoeffs f = extract_symbol(1, SectionSpace{}, 8, SymbolKind::F);
  const std::string sym_path = tmp.path + "/f.csv";
  write_symbol_csv(sym_path, f);
  const std::string text = read_file(sym_path);
  CHECK(text.rfind("k,c\n-1,", 0) == 0);
}

TEST_CASE("report rows round trip and aggregate") {
  TempDir tmp("exp_report_tmp");
  std::vector<ReportRow> rows(3);
  rows[0] = {"beta.check", 3, "poly", 0.0, "-", 16, 1.0, 0.0, 1.25, 2.0, true, 12.5};
  rows[1] = {"alpha.check", 2, "trig", 1.0, "nested", 8, 0.0, 1.0, -3.5e-4, 0.0, false, 1.0};
  rows[2] = {"alpha.other", 2, "trig", 1.0, "nonnested", 8, 0.0, 1.0, 7.0, 8.0, true, 2.0};
  sort_rows(rows);
  CHECK(rows[0].check == "alpha.check");

  const std::string path = tmp.path + "/report.csv";
  write_report_csv(path, rows);
  const auto reread = read_report_csv(path);
  REQUIRE(reread.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(reread[i].check == rows[i].check);
    CHECK(reread[i].p == rows[i].p);
    CHECK(reread[i].space == rows[i].space);
    CHECK(reread[i].mode == rows[i].mode);
    CHECK(reread[i].n == rows[i].n);
    CHECK(reread[i].pass == rows[i].pass);
    CHECK(reread[i].measured == doctest::Approx(rows[i].measured).epsilon(1e-11));
  }

  const std::string sum_path = tmp.path + "/summary.json";
  write_summary_json(sum_path, rows);
  const auto summary = nlohmann::json::parse(read_file(sum_path));
  CHECK(summary.at("total").at("cases").get<int>() == 3);
  CHECK(summary.at("total").at("failed").get<int>() == 1);
  CHECK(summary.at("checks").at("alpha").at("cases").get<int>() == 2);
  CHECK(summary.at("checks").at("alpha").at("failed").get<int>() == 1);
  CHECK(summary.at("checks").at("beta").at("passed").get<int>() == 1);
}

#ifdef GBSPECTRA_BIN
TEST_CASE("command-line interface") {
  TempDir tmp("exp_cli_tmp");
  const std::string bin = GBSPECTRA_BIN;

  SUBCASE("symbol extraction to stdout and files") {
    const std::string cmd = bin + " symbol --p 1 --space poly --n 8 --out " + tmp.path +
                            "/sym > " + tmp.path + "/stdout.txt 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const std::string text = read_file(tmp.path + "/stdout.txt");
    CHECK(text.find("f: -1 2 -1") != std::string::npos);
    CHECK(text.find("h: 0.16666") != std::string::npos);
    CHECK(fs::exists(tmp.path + "/sym/symbol_f_p1_poly_n8.csv"));
    CHECK(fs::exists(tmp.path + "/sym/sample_h_p1_poly_n8.csv"));
  }

  SUBCASE("matrix assembly to CSV") {
    const std::string out = tmp.path + "/A.csv";
    const std::string cmd =
        bin + " assemble --p 2 --n 8 --space poly --matrix A --out " + out +
        " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const Eigen::MatrixXd A = read_dense_csv(out);
    const Eigen::MatrixXd expect = assemble_A_1d(assemble_1d(8, 2, SectionSpace{}), 1, 1);
    CHECK((A - expect).cwiseAbs().maxCoeff() <= 1e-12);
  }

  SUBCASE("run subcommand: green and red exit codes") {
    write_file(tmp.path + "/ok.cfg",
               "p_list = 2\nn_list = 8, 16\nspaces = poly\nchecks = mineig\nout_dir = " +
                   tmp.path + "/ok_out\n");
    const std::string ok_cmd =
        bin + " run " + tmp.path + "/ok.cfg --jobs 2 > /dev/null 2>&1";
    CHECK(std::system(ok_cmd.c_str()) == 0);
    CHECK(fs::exists(tmp.path + "/ok_out/report.csv"));

    // a growth tolerance of 1.0 cannot be met (the ratio is >= 1 by design)
    write_file(tmp.path + "/red.cfg",
               "p_list = 2\nn_list = 8, 16\nspaces = poly\nchecks = conditioning\n"
               "tol.conditioning = 1.0\nout_dir = " +
                   tmp.path + "/red_out\n");
    const std::string red_cmd = bin + " run " + tmp.path + "/red.cfg > /dev/null 2>&1";
    CHECK(std::system(red_cmd.c_str()) != 0);
  }
}
#endif
