#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rskshape/linalg.hpp"
#include "rskshape/stats.hpp"

namespace rsk::io {

nlohmann::json mat_to_json(const linalg::Mat& m);  // array of row arrays
linalg::Mat mat_from_json(const nlohmann::json& j);

// One sample per line, shortest round-trip formatting (%.17g).
void write_samples_csv(const std::string& path, const std::vector<double>& samples);
// Row-major values, one row per line.
void write_matrix_csv(const std::string& path, const linalg::Mat& m);
std::vector<double> read_samples_csv(const std::string& path);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// {count, mean, var, quantiles{p01,...,p99}}
nlohmann::json summary_json(const stats::EmpiricalDistribution& e);

}  // namespace rsk::io
