#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Shared helpers for the test suites: golden-fixture loading and a couple of
// generic numeric utilities.

namespace testsupport {

#ifndef FRACDIFF_GOLDEN_DIR
#error "FRACDIFF_GOLDEN_DIR must be defined by the build"
#endif

inline std::string golden_path(const std::string& name) {
  return std::string(FRACDIFF_GOLDEN_DIR) + "/" + name;
}

// whitespace-separated numeric columns, one record per line
inline std::vector<std::vector<double>> load_table(const std::string& name) {
  std::ifstream in(golden_path(name));
  if (!in) throw std::runtime_error("missing golden fixture: " + name);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::vector<double> row;
    double v;
    while (ss >> v) row.push_back(v);
    if (!row.empty()) rows.push_back(row);
  }
  return rows;
}

inline std::map<std::string, double> load_constants() {
  std::ifstream in(golden_path("constants.txt"));
  if (!in) throw std::runtime_error("missing golden fixture: constants.txt");
  std::map<std::string, double> m;
  std::string key;
  double v;
  while (in >> key >> v) m[key] = v;
  return m;
}

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

}  // namespace testsupport
