// Copyright 2026 The posmap Authors
//
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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "posmap/io.hpp"

namespace posmap {

inline constexpr const char* kVersion = "0.1.0";

/// Everything known about one map: membership, idempotent, h + y split,
/// Q_i index, candidate group and extremality verdict. Stages after a
/// failed one are left empty and the failure is listed in errors.
struct ClassificationRecord {
  double norm = 0.0;
  PositivityReport positivity;
  std::optional<IdempotentRecord> idempotent;
  std::optional<Decomposition> decomposition;
  std::optional<QIndex> q;
  std::optional<CandidateGroup> candidate;
  std::optional<ExtremalityReport> extremality;
  std::vector<std::string> errors;
};

struct PipelineSettings {
  double tol = 1e-8;
  long budget = 200000;
  std::uint64_t seed = 0;
};

ClassificationRecord classify_record(const MapMatrix& x, const PipelineSettings& settings = {});
Json to_json(const ClassificationRecord& r);

struct Request {
  std::string command;
  std::string input;
  std::string output;
  std::optional<double> tol;
  std::optional<long> budget;
  std::uint64_t seed = 0;
  std::string format = "json";
};

enum ExitCode : int { kAffirmative = 0, kNegative = 1, kInputError = 2, kSearchFailure = 3 };

/// Generator names take precedence over file paths.
ParsedInput resolve_input(const std::string& input);

/// Runs one request. The report goes to request.output, or to out when no
/// output path is set; diagnostics go to err.
int run(const Request& request, std::ostream& out, std::ostream& err);

/// Argument parsing front end.
int cli_main(int argc, char** argv);

}  // namespace posmap
