// Copyright 2026 The smc-samplers Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "smc/harness/output.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>


namespace smc::harness {

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

std::ofstream open(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

}  // namespace

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{
      "config_hash", "grid_index", "replicate", "seed",      "experiment",   "arm",
      "algorithm",   "estimator",  "dim",       "C",         "M",            "P",
      "P_final",     "J",          "T",         "value",     "reference",    "error",
      "rel_error",   "markov_steps", "nominal_cost", "wall_time_s", "status"};
  return cols;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  const auto& cols = result_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.config_hash << ',' << r.grid_index << ',' << r.replicate << ',' << r.seed << ','
        << quote(r.experiment) << ',' << quote(r.arm) << ',' << r.algorithm << ',' << r.estimator
        << ',' << r.dim << ',' << opt(r.C) << ',' << r.M << ',' << r.P << ',' << opt(r.P_final)
        << ',' << r.J << ',' << r.T << ',' << format_double(r.value) << ','
        << format_double(r.reference) << ',' << format_double(r.error) << ','
        << format_double(r.rel_error) << ',' << r.markov_steps << ',' << r.nominal_cost << ','
        << format_double(r.wall_time_s) << ',' << quote(r.status) << '\n';
  }
}

void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows) {
  auto out = open(path);
  write_results_csv(out, rows);
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  auto out = open(path);
  for (const auto& l : lines) out << l << '\n';
}

void write_json(const std::string& path, const Json& doc) {
  auto out = open(path);
  out << doc.dump(2) << '\n';
}

Json version_info() {
  return {{"smc", "0.1.0"},
          {"compiler", __VERSION__},
          {"cxx_standard", __cplusplus},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                        "." + std::to_string(EIGEN_MINOR_VERSION)},
          {"boost", BOOST_LIB_VERSION},
#ifdef _OPENMP
          {"openmp", _OPENMP},
#endif
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

}  // namespace smc::harness
