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

#ifndef MISSDP_CLI_MANIFEST_H_
#define MISSDP_CLI_MANIFEST_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"

namespace missdp {

// Library version string, e.g. "0.3.0".
std::string LibraryVersion();

// Hex SHA-256 of a byte string.
std::string Sha256Hex(const std::string& bytes);
absl::StatusOr<std::string> FileSha256(const std::string& path);

// Writes <dir>/manifest.json with the command, resolved configuration,
// library version and the digests of every input and output file. Contains
// no timestamps so reruns are byte-identical.
absl::Status WriteManifest(const std::string& dir, const std::string& command,
                           const nlohmann::json& config,
                           const std::vector<std::string>& inputs,
                           const std::vector<std::string>& outputs);

}  // namespace missdp

#endif  // MISSDP_CLI_MANIFEST_H_
