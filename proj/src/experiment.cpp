#include "gbspectra/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "gbspectra/assembly.hpp"
#include "gbspectra/gbspline.hpp"
#include "gbspectra/matrix_io.hpp"
#include "gbspectra/spectral.hpp"
#include "gbspectra/symbols.hpp"
#include "gbspectra/toeplitz.hpp"

namespace gbspectra {

const std::vector<std::string>& all_check_names() {
  static const std::vector<std::string> names = {
      "mineig",     "eq10",        "conditioning",     "parter",          "toeplitz",
      "specdist",   "2d-assembly", "2d-decomposition", "2d-distribution", "ratio-bounds"};
  return names;
}

namespace {

namespace fs = std::filesystem;

bool known_check(const std::string& name) {
  const auto& all = all_check_names();
  return std::find(all.begin(), all.end(), name) != all.end();
}

bool selected(const ExperimentConfig& config, const std::string& name) {
  if (config.checks.empty()) return true;
  return std::find(config.checks.begin(), config.checks.end(), name) !=
         config.checks.end();
}

double tol_or(const ExperimentConfig& config, const std::string& check, double fallback) {
  const auto it = config.tol_overrides.find(check);
  return it == config.tol_overrides.end() ? fallback : it->second;
}

ReportRow make_row(const std::string& check, int p, const SectionSpace& space, int n,
                   double beta, double gamma, double measured, double bound, bool pass) {
  ReportRow row;
  row.check = check;
  row.p = p;
  row.space = kind_label(space.kind);
  row.alpha = space.is_polynomial() ? 0.0 : space.alpha;
  row.mode = mode_label(space);
  row.n = n;
  row.beta = beta;
  row.gamma = gamma;
  row.measured = measured;
  row.bound = bound;
  row.pass = pass;
  return row;
}

std::string space_slug(const SectionSpace& space) {
  std::string s = format_space(space);
  for (char& ch : s)
    if (ch == ':') ch = '-';
  return s;
}

void write_values_csv(const std::string& path, const char* column,
                      const Eigen::VectorXd& v) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << column << "\n";
  char buf[40];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", v(i));
    os << buf << "\n";
  }
}

std::vector<std::pair<int, int>> degree_pairs(const ExperimentConfig& config) {
  if (config.p_pair) return {*config.p_pair};
  std::vector<std::pair<int, int>> out;
  out.reserve(config.p_list.size());
  for (int p : config.p_list) out.emplace_back(p, p);
  return out;
}

int second_mesh(double nu, int n1) { return static_cast<int>(std::lround(nu * n1)); }

/// n1 values where both directions admit symbol extraction (n >= 3p+1).
std::vector<int> admissible_n1(const ExperimentConfig& config, int p1, int p2, double nu) {
  std::vector<int> out;
  for (int n1 : config.n1_list)
    if (n1 >= 3 * p1 + 1 && second_mesh(nu, n1) >= 3 * p2 + 1) out.push_back(n1);
  return out;
}

std::string pair_suffix(int p2, double nu) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "(p2=%d;nu=%g)", p2, nu);
  return buf;
}

// ---------------------------------------------------------------------------
// config file parsing
// ---------------------------------------------------------------------------

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const int out = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': expected an integer, got '" +
                                v + "'");
  }
}

double parse_real(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" + v +
                                "'");
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::uint64_t out = std::stoull(v, &pos, 0);
    if (pos != v.size()) throw std::invalid_argument("");
    return out;
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key +
                                "': expected an unsigned integer, got '" + v + "'");
  }
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
  std::vector<int> out;
  for (const auto& item : split_list(v)) out.push_back(parse_int(item, key));
  if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty list");
  return out;
}

std::vector<double> parse_real_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_real(item, key));
  if (out.empty()) throw std::invalid_argument("config key '" + key + "': empty list");
  return out;
}

void require_ascending(const std::vector<int>& values, const char* key) {
  for (std::size_t t = 1; t < values.size(); ++t)
    if (values[t] <= values[t - 1])
      throw std::invalid_argument(std::string("config: ") + key +
                                  " must be strictly ascending");
}

}  // namespace

ExperimentConfig make_default_config() {
  ExperimentConfig config;
  config.spaces = {parse_space("poly"), parse_space("trig:1:nested"),
                   parse_space("trig:1:nonnested"), parse_space("hyp:1:nested"),
                   parse_space("hyp:1:nonnested")};
  config.checks = all_check_names();
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file '" + path + "'");

  ExperimentConfig config = make_default_config();
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "p_list") {
      config.p_list = parse_int_list(value, key);
    } else if (key == "n_list") {
      config.n_list = parse_int_list(value, key);
    } else if (key == "n1_list") {
      config.n1_list = parse_int_list(value, key);
    } else if (key == "spaces") {
      config.spaces.clear();
      for (const auto& item : split_list(value)) config.spaces.push_back(parse_space(item));
      if (config.spaces.empty())
        throw std::invalid_argument("config key 'spaces': empty list");
    } else if (key == "beta") {
      config.beta = parse_real(value, key);
    } else if (key == "gamma") {
      config.gamma = parse_real(value, key);
    } else if (key == "nu_list") {
      config.nu_list = parse_real_list(value, key);
    } else if (key == "p_pair") {
      const auto parts = split_list(value);
      if (parts.size() != 2)
        throw std::invalid_argument("config key 'p_pair': expected two integers");
      config.p_pair = {parse_int(parts[0], key), parse_int(parts[1], key)};
    } else if (key == "checks") {
      config.checks = split_list(value);
      if (config.checks.empty())
        throw std::invalid_argument("config key 'checks': empty list");
    } else if (key == "out_dir") {
      if (value.empty()) throw std::invalid_argument("config key 'out_dir': empty value");
      config.out_dir = value;
    } else if (key == "seed") {
      config.seed = parse_u64(value, key);
    } else if (key == "jobs") {
      config.jobs = parse_int(value, key);
    } else if (key.rfind("tol.", 0) == 0) {
      const std::string check = key.substr(4);
      if (!known_check(check))
        throw std::invalid_argument("config key '" + key + "': unknown check '" + check +
                                    "'");
      config.tol_overrides[check] = parse_real(value, key);
    } else {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
    }
  }

  validate_config(config);
  return config;
}

void validate_config(const ExperimentConfig& config) {
  if (config.p_list.empty()) throw std::invalid_argument("config: p_list is empty");
  for (int p : config.p_list)
    if (p < 1 || p > 8)
      throw std::invalid_argument("config: degree " + std::to_string(p) +
                                  " out of range [1, 8]");
  if (config.n_list.empty()) throw std::invalid_argument("config: n_list is empty");
  for (int n : config.n_list)
    if (n < 2)
      throw std::invalid_argument("config: mesh size " + std::to_string(n) +
                                  " must be >= 2");
  require_ascending(config.n_list, "n_list");
  if (config.spaces.empty()) throw std::invalid_argument("config: spaces is empty");
  if (!std::isfinite(config.beta)) throw std::invalid_argument("config: beta is not finite");
  if (!std::isfinite(config.gamma) || config.gamma < 0)
    throw std::invalid_argument("config: gamma must be finite and >= 0");
  if (config.jobs < 1) throw std::invalid_argument("config: jobs must be >= 1");
  if (config.out_dir.empty()) throw std::invalid_argument("config: out_dir is empty");

  for (const auto& name : config.checks)
    if (!known_check(name))
      throw std::invalid_argument("config: unknown check '" + name + "'");
  for (const auto& [name, tol] : config.tol_overrides) {
    if (!known_check(name))
      throw std::invalid_argument("config: tolerance override for unknown check '" + name +
                                  "'");
    if (!(tol > 0))
      throw std::invalid_argument("config: tolerance for '" + name + "' must be positive");
  }

  // Admissibility of every space on every mesh the run will touch, including
  // the doubled meshes used by the symbol-extraction cross-check.
  for (const auto& space : config.spaces)
    for (int n : config.n_list) {
      space.validate(n);
      space.validate(2 * n);
    }

  const bool any_2d = selected(config, "2d-assembly") ||
                      selected(config, "2d-decomposition") ||
                      selected(config, "2d-distribution");
  if (any_2d) {
    if (config.n1_list.empty()) throw std::invalid_argument("config: n1_list is empty");
    for (int n1 : config.n1_list)
      if (n1 < 2)
        throw std::invalid_argument("config: n1 value " + std::to_string(n1) +
                                    " must be >= 2");
    require_ascending(config.n1_list, "n1_list");
    if (config.nu_list.empty()) throw std::invalid_argument("config: nu_list is empty");
    for (double nu : config.nu_list) {
      if (!(nu > 0)) throw std::invalid_argument("config: nu values must be positive");
      for (int n1 : config.n1_list) {
        const double exact = nu * n1;
        const int n2 = second_mesh(nu, n1);
        if (std::abs(exact - n2) > 1e-9 || n2 < 2) {
          char buf[96];
          std::snprintf(buf, sizeof(buf),
                        "config: nu * n1 must be an integer >= 2 (nu=%g, n1=%d)", nu, n1);
          throw std::invalid_argument(buf);
        }
      }
    }
    for (const auto& space : config.spaces)
      for (double nu : config.nu_list)
        for (int n1 : config.n1_list) {
          const int n2 = second_mesh(nu, n1);
          space.validate(n1);
          space.validate(n2);
          space.validate(2 * n1);
          space.validate(2 * n2);
        }
    if (config.p_pair) {
      for (int p : {config.p_pair->first, config.p_pair->second})
        if (p < 1 || p > 8)
          throw std::invalid_argument("config: p_pair degree " + std::to_string(p) +
                                      " out of range [1, 8]");
    }
    if (selected(config, "2d-decomposition") || selected(config, "2d-distribution")) {
      for (const auto& [p1, p2] : degree_pairs(config))
        for (double nu : config.nu_list)
          if (admissible_n1(config, p1, p2, nu).size() < 2) {
            char buf[256];
            std::snprintf(buf, sizeof(buf),
                          "config: fewer than two n1 values admit symbol extraction "
                          "(need n1 >= %d and nu*n1 >= %d for p1=%d, p2=%d, nu=%g)",
                          3 * p1 + 1, 3 * p2 + 1, p1, p2, nu);
            throw std::invalid_argument(buf);
          }
    }
  }

  if (selected(config, "mineig"))
    for (int p : config.p_list)
      if (p < 2)
        throw std::invalid_argument(
            "config: the mineig check needs degree >= 2; drop p=1 or deselect it");
  if (selected(config, "specdist"))
    for (int p : config.p_list) {
      int admissible = 0;
      for (int n : config.n_list)
        if (n >= 3 * p + 1) ++admissible;
      if (admissible < 2)
        throw std::invalid_argument(
            "config: the specdist check needs at least two n values with n >= 3p+1 "
            "(p=" +
            std::to_string(p) + " requires n >= " + std::to_string(3 * p + 1) + ")");
    }
  if (selected(config, "toeplitz"))
    for (int p : config.p_list) {
      bool any = false;
      for (int n : config.n_list) any = any || n >= 3 * p + 1;
      if (!any)
        throw std::invalid_argument(
            "config: the toeplitz check needs some n >= 3p+1 (p=" + std::to_string(p) +
            " requires n >= " + std::to_string(3 * p + 1) + ")");
    }
  if (selected(config, "parter")) {
    int smallest = std::numeric_limits<int>::max();
    for (int p : config.p_list)
      for (int n : config.n_list) smallest = std::min(smallest, n + p - 2);
    if (smallest < 3)
      throw std::invalid_argument(
          "config: the parter check tracks the three smallest eigenvalues and needs "
          "n + p - 2 >= 3 everywhere");
  }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  fs::create_directories(config.out_dir);
  const std::string sym_dir = config.out_dir + "/symbols";
  const std::string eig_dir = config.out_dir + "/eigs";
  fs::create_directories(sym_dir);
  fs::create_directories(eig_dir);

  const std::vector<int> n_list = config.n_list;
  const double beta = config.beta;
  const double gamma = config.gamma;

  std::vector<std::function<std::vector<ReportRow>()>> cases;

  for (const auto& check : all_check_names()) {
    if (!selected(config, check)) continue;

    if (check == "mineig") {
      for (int p : config.p_list)
        for (const auto& space : config.spaces)
          for (int n : n_list)
            cases.push_back([=] {
              const CpEstimate est = estimate_Cp(p, space, n_list);
              std::vector<ReportRow> rows;
              for (const auto& c : check_theorem_mineig(p, space, n, est.c_low))
                rows.push_back(
                    make_row("mineig." + c.name, p, space, n, 0, 0, c.measured, c.bound,
                             c.pass));
              const GalerkinSet1D set = assemble_1d(n, p, space);
              const std::string tag = "_p" + std::to_string(p) + "_" + space_slug(space) +
                                      "_n" + std::to_string(n) + ".csv";
              write_values_csv(eig_dir + "/mass" + tag, "lambda", sym_eigs(set.M));
              write_values_csv(eig_dir + "/stiffness" + tag, "lambda", sym_eigs(set.K));
              return rows;
            });
    } else if (check == "eq10") {
      for (int p : config.p_list)
        for (const auto& space : config.spaces)
          for (int n : n_list)
            cases.push_back([=] {
              const CpEstimate est = estimate_Cp(p, space, n_list);
              std::vector<ReportRow> rows;
              for (const auto& c : check_eq10(p, space, n, beta, gamma, est.c_low))
                rows.push_back(make_row("eq10." + c.name, p, space, n, beta, gamma,
                                        c.measured, c.bound, c.pass));
              return rows;
            });
    } else if (check == "conditioning") {
      const double growth_bound = tol_or(config, "conditioning", 2.0);
      for (int p : config.p_list)
        for (const auto& space : config.spaces)
          cases.push_back([=] {
            std::vector<double> kappa;
            for (int n : n_list)
              kappa.push_back(condition_2(assemble_A_1d(assemble_1d(n, p, space), beta,
                                                        gamma)));
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (std::size_t t = 0; t < kappa.size(); ++t) {
              const double scaled = kappa[t] / (static_cast<double>(n_list[t]) * n_list[t]);
              lo = std::min(lo, scaled);
              hi = std::max(hi, scaled);
            }
            double worst_drop = 0.0;
            for (std::size_t t = 0; t + 1 < kappa.size(); ++t)
              worst_drop = std::max(worst_drop, kappa[t] / kappa[t + 1]);
            std::vector<ReportRow> rows;
            rows.push_back(make_row("conditioning.growth", p, space, n_list.back(), beta,
                                    gamma, hi / lo, growth_bound, hi / lo < growth_bound));
            rows.push_back(make_row("conditioning.increasing", p, space, n_list.back(),
                                    beta, gamma, worst_drop, 1.0,
                                    worst_drop <= 1.0 + 1e-9));
            return rows;
          });
    } else if (check == "parter") {
      for (int p : config.p_list)
        for (const auto& space : config.spaces)
          cases.push_back([=] {
            const ParterTable table = check_parter(p, space, {1, 2, 3}, n_list);
            std::vector<ReportRow> rows;
            for (const auto& c : table.flags)
              rows.push_back(make_row("parter." + c.name, p, space, n_list.back(), 0, 0,
                                      c.measured, c.bound, c.pass));
            return rows;
          });
    } else if (check == "toeplitz") {
      const double dist_bound = tol_or(config, "toeplitz", 0.1);
      for (int p : config.p_list)
        for (const auto& space : config.spaces) {
          int dist_n = 0;  // the eigenvalue/sample agreement is asymptotic:
          for (int n : n_list)
            if (n >= 3 * p + 1) dist_n = n;  // judge it at the finest mesh only
          for (int n : n_list) {
            if (n < 3 * p + 1) continue;
            cases.push_back([=] {
              const GalerkinSet1D set = assemble_1d(n, p, space);
              const ToeplitzParts parts = toeplitz_parts(set);
              const std::string tag = "_p" + std::to_string(p) + "_" + space_slug(space) +
                                      "_n" + std::to_string(n) + ".csv";
              write_symbol_csv(sym_dir + "/f" + tag, parts.f);
              write_symbol_csv(sym_dir + "/h" + tag, parts.h);

              const int m = set.size();
              const double rank_bound = 4.0 * p - 2.0;
              const int rank_R = numerical_rank(singular_values(parts.R), 1e-10,
                                                1e-12 * set.K.lpNorm<Eigen::Infinity>());
              const int rank_S = numerical_rank(singular_values(parts.S), 1e-10,
                                                1e-12 * set.M.lpNorm<Eigen::Infinity>());

              std::vector<ReportRow> rows;
              rows.push_back(make_row("toeplitz.rank_stiffness", p, space, n, 0, 0, rank_R,
                                      rank_bound, rank_R <= rank_bound));
              rows.push_back(make_row("toeplitz.rank_mass", p, space, n, 0, 0, rank_S,
                                      rank_bound, rank_S <= rank_bound));
              if (n == dist_n) {
                const auto span = [](const Eigen::VectorXd& v) {
                  return v(v.size() - 1) - v(0);
                };
                const Eigen::VectorXd fs = sample_symbol(parts.f, 4096);
                const Eigen::VectorXd hs = sample_symbol(parts.h, 4096);
                const DistributionStats df = distribution_distance(
                    sym_eigs(parts.B), sample_symbol(parts.f, m), 0.05 * span(fs));
                const DistributionStats dh = distribution_distance(
                    sym_eigs(parts.C), sample_symbol(parts.h, m), 0.05 * span(hs));
                rows.push_back(make_row("toeplitz.dist_stiffness", p, space, n, 0, 0,
                                        static_cast<double>(df.outliers) / m, dist_bound,
                                        df.outliers <= dist_bound * m));
                rows.push_back(make_row("toeplitz.dist_mass", p, space, n, 0, 0,
                                        static_cast<double>(dh.outliers) / m, dist_bound,
                                        dh.outliers <= dist_bound * m));
              }
              return rows;
            });
          }
        }
    } else if (check == "specdist") {
      for (int p : config.p_list)
        for (const auto& space : config.spaces)
          cases.push_back([=] {
            int n_max = 0;
            for (int n : n_list)
              if (n >= 3 * p + 1) n_max = n;
            std::vector<ReportRow> rows;
            for (const auto& c : check_specdist_lemma(p, space, n_list))
              rows.push_back(make_row("specdist." + c.name, p, space, n_max, 0, 0,
                                      c.measured, c.bound, c.pass));
            return rows;
          });
    } else if (check == "2d-assembly") {
      const double two_route_bound = tol_or(config, "2d-assembly", 1e-12);
      const int n1 = *std::min_element(config.n1_list.begin(), config.n1_list.end());
      for (const auto& [p1, p2] : degree_pairs(config))
        for (const auto& space : config.spaces)
          for (double nu : config.nu_list)
            cases.push_back([=] {
              const int n2 = second_mesh(nu, n1);
              const GBSplineBasis b1(make_knots(n1, p1), space);
              const GBSplineBasis b2(make_knots(n2, p2), space);
              const GalerkinSet2D set =
                  assemble_2d_tensor(assemble_1d(b1), assemble_1d(b2), beta, beta, gamma);
              const Eigen::MatrixXd direct =
                  assemble_2d_direct(b1, b2, beta, beta, gamma);
              const double rel = (set.A - direct).norm() / direct.norm();
              return std::vector<ReportRow>{
                  make_row("2d-assembly.two_route" + pair_suffix(p2, nu), p1, space, n1,
                           beta, gamma, rel, two_route_bound, rel <= two_route_bound)};
            });
    } else if (check == "2d-decomposition") {
      const double ratio_bound = tol_or(config, "2d-decomposition", 1.1);
      for (const auto& [p1, p2] : degree_pairs(config))
        for (const auto& space : config.spaces)
          for (double nu : config.nu_list) {
            const std::vector<int> grid = admissible_n1(config, p1, p2, nu);
            cases.push_back([=] {
              const std::string suffix = pair_suffix(p2, nu);
              std::vector<ReportRow> rows;
              std::vector<double> norms;
              for (int n1 : grid) {
                const int n2 = second_mesh(nu, n1);
                const GalerkinSet2D set = assemble_2d_tensor(
                    assemble_1d(n1, p1, space), assemble_1d(n2, p2, space), beta, beta,
                    gamma);
                const SymbolPair sym1{extract_symbol(p1, space, n1, SymbolKind::F),
                                      extract_symbol(p1, space, n1, SymbolKind::H)};
                const SymbolPair sym2{extract_symbol(p2, space, n2, SymbolKind::F),
                                      extract_symbol(p2, space, n2, SymbolKind::H)};
                const Decomposition2D dec = decompose_2d(set, sym1, sym2);
                rows.push_back(make_row("2d-decomposition.rank" + suffix, p1, space, n1,
                                        beta, gamma, dec.rank, dec.rank_bound,
                                        dec.rank <= dec.rank_bound));
                norms.push_back(dec.numerically_zero ? 0.0 : dec.norm2);
              }
              for (std::size_t t = 0; t + 1 < norms.size(); ++t) {
                double ratio = 0.0;
                if (norms[t] > 0)
                  ratio = norms[t + 1] / norms[t];
                else if (norms[t + 1] > 0)
                  ratio = std::numeric_limits<double>::infinity();
                rows.push_back(make_row("2d-decomposition.norm_ratio" + suffix, p1, space,
                                        grid[t + 1], beta, gamma, ratio, ratio_bound,
                                        ratio < ratio_bound));
              }
              return rows;
            });
          }
    } else if (check == "2d-distribution") {
      const double outlier_bound = tol_or(config, "2d-distribution", 0.1);
      for (const auto& [p1, p2] : degree_pairs(config))
        for (const auto& space : config.spaces)
          for (double nu : config.nu_list) {
            const std::vector<int> grid = admissible_n1(config, p1, p2, nu);
            cases.push_back([=] {
              const std::string suffix = pair_suffix(p2, nu);
              std::vector<ReportRow> rows;
              std::vector<double> means;
              for (int n1 : grid) {
                const int n2 = second_mesh(nu, n1);
                const GalerkinSet2D set = assemble_2d_tensor(
                    assemble_1d(n1, p1, space), assemble_1d(n2, p2, space), beta, beta,
                    gamma);
                const TwoLevelSymbol g{extract_symbol(p1, space, n1, SymbolKind::F),
                                       extract_symbol(p1, space, n1, SymbolKind::H),
                                       extract_symbol(p2, space, n2, SymbolKind::F),
                                       extract_symbol(p2, space, n2, SymbolKind::H),
                                       set.nu()};
                const Eigen::VectorXd eigs = sym_eigs(symmetric_part(set.A));
                const Eigen::VectorXd samples = sample_symbol(g, set.m2(), set.m1());
                const double g_max = sample_symbol(g, 64, 64).cwiseAbs().maxCoeff();
                const DistributionStats stats =
                    distribution_distance(eigs, samples, 0.2 * g_max);
                const int dim = set.m1() * set.m2();
                rows.push_back(make_row("2d-distribution.outliers" + suffix, p1, space,
                                        n1, beta, gamma,
                                        static_cast<double>(stats.outliers) / dim,
                                        outlier_bound,
                                        stats.outliers <= outlier_bound * dim));
                means.push_back(stats.mean_abs);
              }
              for (std::size_t t = 0; t + 1 < means.size(); ++t)
                rows.push_back(make_row("2d-distribution.mean_decreasing" + suffix, p1,
                                        space, grid[t + 1], beta, gamma,
                                        means[t + 1] - means[t], 1e-3,
                                        means[t + 1] - means[t] <= 1e-3));
              return rows;
            });
          }
    } else if (check == "ratio-bounds") {
      const double nested_slack = tol_or(config, "ratio-bounds", 1e-6);
      for (int p : config.p_list)
        for (const auto& space : config.spaces) {
          if (space.is_polynomial()) continue;
          cases.push_back([=] {
            std::vector<ReportRow> rows;
            std::vector<double> spreads;
            for (int n : n_list) {
              const RatioBounds rb = ratio_bounds(p, space, n);
              rows.push_back(make_row("ratio-bounds.low_positive", p, space, n, 0, 0,
                                      rb.low, 0.0, rb.low > 0.0));
              rows.push_back(make_row("ratio-bounds.low_below_one", p, space, n, 0, 0,
                                      rb.low, 1.0, rb.low <= 1.0 + 1e-9));
              rows.push_back(make_row("ratio-bounds.high_above_one", p, space, n, 0, 0,
                                      rb.high, 1.0, rb.high >= 1.0 - 1e-9));
              spreads.push_back(std::max(rb.high - 1.0, 1.0 - rb.low));
            }
            if (space.mode == RefinementMode::Nested) {
              double worst_rise = -std::numeric_limits<double>::infinity();
              for (std::size_t t = 0; t + 1 < spreads.size(); ++t)
                worst_rise = std::max(worst_rise, spreads[t + 1] - spreads[t]);
              rows.push_back(make_row("ratio-bounds.nested_to_one", p, space,
                                      n_list.back(), 0, 0, worst_rise, nested_slack,
                                      worst_rise <= nested_slack));
            }
            return rows;
          });
        }
    }
  }

  const std::size_t count = cases.size();
  std::vector<std::vector<ReportRow>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::vector<double> case_ms(count, 0.0);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        results[i] = cases[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
      case_ms[i] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      for (auto& row : results[i]) row.ms = case_ms[i];
    }
  };

  const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(count)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs) - 1);
    for (int t = 0; t + 1 < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  ExperimentResult result;
  for (const auto& rows : results)
    result.rows.insert(result.rows.end(), rows.begin(), rows.end());
  sort_rows(result.rows);
  for (const auto& row : result.rows)
    if (!row.pass) ++result.failed;
  for (double ms : case_ms) result.total_ms += ms;

  write_report_csv(config.out_dir + "/report.csv", result.rows);
  write_summary_json(config.out_dir + "/summary.json", result.rows);
  return result;
}

}  // namespace gbspectra
