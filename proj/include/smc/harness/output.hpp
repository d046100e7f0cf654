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


#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "smc/harness/config.hpp"

namespace smc::harness {

/// One line of results.csv.
struct ResultRow {
  std::string config_hash;
  std::size_t grid_index = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  std::string experiment;
  std::string arm;
  std::string algorithm;
  std::string estimator;
  int dim = 0;
  std::optional<int> C;
  int M = 0;
  int P = 0;
  std::optional<int> P_final;
  int J = 1;
  int T = 0;
  double value = 0.0;
  /// NaN when no ground truth is known.
  double reference = 0.0;
  double error = 0.0;
  double rel_error = 0.0;
  std::uint64_t markov_steps = 0;
  std::int64_t nominal_cost = 0;
  double wall_time_s = 0.0;
  /// ok, aborted: <reason> or error: <message>.
  std::string status = "ok";
};

/// Column order of results.csv.
const std::vector<std::string>& result_columns();

/// Full-precision (17 significant digits) formatting; NaN prints as "nan".
std::string format_double(double v);

void write_results_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_results_csv(const std::string& path, const std::vector<ResultRow>& rows);
void write_lines(const std::string& path, const std::vector<std::string>& lines);
void write_json(const std::string& path, const Json& doc);

/// Build and library versions recorded in the manifest.
Json version_info();

}  // namespace smc::harness
