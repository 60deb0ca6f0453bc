#include "gbspectra/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

namespace gbspectra {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string top_level(const std::string& check) {
  const auto dot = check.find('.');
  return dot == std::string::npos ? check : check.substr(0, dot);
}

}  // namespace

void sort_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.check, a.p, a.space, a.alpha, a.mode, a.n, a.beta, a.gamma) <
           std::tie(b.check, b.p, b.space, b.alpha, b.mode, b.n, b.beta, b.gamma);
  });
}

void write_report_csv(const std::string& path, const std::vector<ReportRow>& rows) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << "check,p,space,alpha,mode,n,beta,gamma,measured,bound,pass,ms\n";
  for (const ReportRow& r : rows) {
    os << r.check << ',' << r.p << ',' << r.space << ',' << fmt(r.alpha) << ',' << r.mode
       << ',' << r.n << ',' << fmt(r.beta) << ',' << fmt(r.gamma) << ',' << fmt(r.measured)
       << ',' << fmt(r.bound) << ',' << (r.pass ? 1 : 0) << ',' << fmt(r.ms) << "\n";
  }
}

std::vector<ReportRow> read_report_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(is, line) || line.rfind("check,", 0) != 0)
    throw std::runtime_error("report '" + path + "' lacks its CSV header");

  std::vector<ReportRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 12)
      throw std::runtime_error("report row has " + std::to_string(cells.size()) +
                               " fields, expected 12: " + line);
    ReportRow r;
    r.check = cells[0];
    r.p = std::stoi(cells[1]);
    r.space = cells[2];
    r.alpha = std::stod(cells[3]);
    r.mode = cells[4];
    r.n = std::stoi(cells[5]);
    r.beta = std::stod(cells[6]);
    r.gamma = std::stod(cells[7]);
    r.measured = std::stod(cells[8]);
    r.bound = std::stod(cells[9]);
    r.pass = cells[10] == "1";
    r.ms = std::stod(cells[11]);
    rows.push_back(r);
  }
  return rows;
}

void write_summary_json(const std::string& path, const std::vector<ReportRow>& rows) {
  nlohmann::json checks = nlohmann::json::object();
  int passed = 0;
  for (const ReportRow& r : rows) {
    nlohmann::json& bucket = checks[top_level(r.check)];
    if (bucket.is_null()) bucket = {{"cases", 0}, {"passed", 0}, {"failed", 0}};
    bucket["cases"] = bucket["cases"].get<int>() + 1;
    if (r.pass) {
      bucket["passed"] = bucket["passed"].get<int>() + 1;
      ++passed;
    } else {
      bucket["failed"] = bucket["failed"].get<int>() + 1;
    }
  }
  nlohmann::json summary = {
      {"checks", checks},
      {"total",
       {{"cases", static_cast<int>(rows.size())},
        {"passed", passed},
        {"failed", static_cast<int>(rows.size()) - passed}}}};

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << summary.dump(2) << "\n";
}

}  // namespace gbspectra
