#include "rskshape/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rsk::io {

nlohmann::json mat_to_json(const linalg::Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

linalg::Mat mat_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix json: expected rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  linalg::Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw std::invalid_argument("matrix json: ragged rows");
    for (int c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

}  // namespace

void write_samples_csv(const std::string& path, const std::vector<double>& samples) {
  std::ofstream os = open_out(path);
  for (double v : samples) os << format_double(v) << '\n';
}

void write_matrix_csv(const std::string& path, const linalg::Mat& m) {
  std::ofstream os = open_out(path);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

std::vector<double> read_samples_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<double> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    out.push_back(std::stod(line));
  }
  return out;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream os = open_out(path);
  os << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  nlohmann::json j;
  is >> j;
  return j;
}

nlohmann::json summary_json(const stats::EmpiricalDistribution& e) {
  const stats::Moments m = stats::moments(e);
  nlohmann::json q;
  for (double p : {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) {
    std::ostringstream key;
    key << "p" << static_cast<int>(p * 100 + 0.5);
    q[key.str()] = stats::quantile(e, p);
  }
  return {{"count", e.count()}, {"mean", m.mean}, {"var", m.var},
          {"skew", m.skew},     {"min", e.min()}, {"max", e.max()},
          {"quantiles", q}};
}

}  // namespace rsk::io
