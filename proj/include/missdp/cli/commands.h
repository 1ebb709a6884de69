// Copyright 2026 The missdp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MISSDP_CLI_COMMANDS_H_
#define MISSDP_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "missdp/amplify/partition_search.h"

namespace missdp {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// InvalidArgument and OutOfRange are caller errors (2); the rest are
// runtime failures (1).
int ExitCodeFor(const absl::Status& status);

// Runs the missdp command line on args (args[0] is the program name) and
// returns the process exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// "1,2,3" -> {1, 2, 3}.
absl::StatusOr<std::vector<int>> ParseIntList(const std::string& text);
absl::StatusOr<std::vector<double>> ParseDoubleList(const std::string& text);
// "inf" or a number.
absl::StatusOr<double> ParseEpsilon(const std::string& text);

struct PhiInput {
  std::vector<std::string> names;  // may be empty
  std::vector<double> phi;
};

// JSON {"phi": [...], "attributes": [...]} or {"phi": {"name": p, ...}},
// or a 0/1 mask CSV whose column means become phi.
absl::StatusOr<PhiInput> LoadPhi(const std::string& path);

// {"attributes": [...], "queries": [{"attrs": [...], "epsilon": e,
// "delta": d}]}. Attributes are indices or names resolved against the
// file's own "attributes" list, falling back to `names`.
absl::StatusOr<std::vector<MarginalQuery>> QueriesFromJson(
    const nlohmann::json& j, const std::vector<std::string>& names);

}  // namespace missdp

#endif  // MISSDP_CLI_COMMANDS_H_
